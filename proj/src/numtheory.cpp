#include "lyness/numtheory.hpp"
#include "lyness/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

namespace lyness {

namespace {

using i128 = __int128;
constexpr std::int64_t grid = 1'000'000'000'000;  // 1e12

bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

// Lower bound of the width as an exact fraction num/den.
std::pair<BigInt, BigInt> width_lower(const OpenInterval& iv)
{
    const BigInt num = BigInt(iv.hi.lo_num) * iv.lo.den - BigInt(iv.lo.hi_num) * iv.hi.den;
    const BigInt den = BigInt(iv.hi.den) * iv.lo.den;
    return {num, den};
}

BigInt ipow(std::int64_t p, int e)
{
    BigInt r = 1;
    for (int i = 0; i < e; ++i)
        r *= p;
    return r;
}

}  // namespace

Endpoint Endpoint::rational(std::int64_t num, std::int64_t den, std::string label)
{
    if (den <= 0)
        throw DomainError("rational endpoint needs a positive denominator");
    const std::int64_t g = std::gcd(num, den);
    Endpoint e;
    e.value = static_cast<double>(num) / static_cast<double>(den);
    e.lo_num = e.hi_num = num / g;
    e.den = den / g;
    e.label = std::move(label);
    return e;
}

Endpoint Endpoint::irrational(double value, std::string label)
{
    if (!std::isfinite(value) || std::abs(value) > 1e6)
        throw DomainError("irrational endpoint out of range");
    Endpoint e;
    e.value = value;
    const double scaled = value * static_cast<double>(grid);
    e.lo_num = static_cast<std::int64_t>(std::floor(scaled)) - 1;
    e.hi_num = static_cast<std::int64_t>(std::ceil(scaled)) + 1;
    e.den = grid;
    e.label = std::move(label);
    return e;
}

OpenInterval::OpenInterval(Endpoint l, Endpoint h) : lo(std::move(l)), hi(std::move(h))
{
    if (!(lo.value < hi.value))
        throw DomainError("empty or reversed interval");
    if (width_lower(*this).first <= 0)
        throw DomainError("interval narrower than its endpoint brackets");
}

OpenInterval i_rot()
{
    const double lo = (std::numbers::pi - 2 * std::asin(1.0 / 8)) / (4 * std::numbers::pi);
    return {Endpoint::irrational(lo, "(pi - 2 asin(1/8)) / (4 pi)"), Endpoint::rational(1, 3, "1/3")};
}

OpenInterval j_rot()
{
    const double lo = std::asin(0.75) / (2 * std::numbers::pi);
    return {Endpoint::irrational(lo, "asin(3/4) / (2 pi)"), Endpoint::rational(1, 6, "1/6")};
}

Membership classify(std::int64_t q, std::int64_t r, const OpenInterval& iv)
{
    if (r <= 0)
        throw DomainError("classify: denominator must be positive");
    Membership m = Membership::inside;
    const i128 ql = static_cast<i128>(q) * iv.lo.den;
    if (ql > static_cast<i128>(iv.lo.hi_num) * r) {
        // above the lower endpoint
    } else if (ql <= static_cast<i128>(iv.lo.lo_num) * r) {
        return Membership::outside;
    } else {
        m = Membership::ambiguous;
    }
    const i128 qh = static_cast<i128>(q) * iv.hi.den;
    if (qh < static_cast<i128>(iv.hi.lo_num) * r) {
        // below the upper endpoint
    } else if (qh >= static_cast<i128>(iv.hi.hi_num) * r) {
        return Membership::outside;
    } else {
        m = Membership::ambiguous;
    }
    return m;
}

const char* to_string(ThresholdMode m)
{
    return m == ThresholdMode::strict4 ? "strict-4" : "paper-3";
}

BigInt GapCover::candidate_count() const
{
    BigInt n = 1;
    for (int s : exponents)
        n *= s;
    return n;
}

bool GapCover::is_candidate(std::int64_t r) const
{
    if (r < 1)
        return false;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        int e = 0;
        while (r % primes[i] == 0) {
            r /= primes[i];
            ++e;
        }
        if (e > exponents[i] - 1)
            return false;
    }
    return r == 1;
}

std::vector<std::int64_t> GapCover::candidate_set(std::size_t limit) const
{
    if (candidate_count() > limit)
        throw Error("candidate set too large to materialize");
    std::vector<std::int64_t> out{1};
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::size_t base = out.size();
        std::int64_t pw = 1;
        for (int t = 1; t < exponents[i]; ++t) {
            pw *= primes[i];
            for (std::size_t j = 0; j < base; ++j)
                out.push_back(out[j] * pw);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

GapCover gap_cover(const OpenInterval& iv, ThresholdMode mode)
{
    const auto [wn, wd] = width_lower(iv);
    if (!(wn > 0) || !(wn < wd))
        throw DomainError("gap_cover: interval width must lie in (0, 1)");

    GapCover g;
    g.mode = mode;
    // Smallest prime p > max(3 / w, 2).
    std::int64_t p = 3;
    while (!(BigInt(p) * wn > 3 * wd) || !is_prime(p))
        ++p;
    g.p_next = p;

    const int c = mode == ThresholdMode::strict4 ? 4 : 3;
    g.bound = 1;
    for (std::int64_t q = 2; q < g.p_next; ++q) {
        if (!is_prime(q))
            continue;
        int s = 1;
        BigInt pw = q;
        while (!(pw * wn > c * wd)) {
            pw *= q;
            ++s;
        }
        g.primes.push_back(q);
        g.exponents.push_back(s);
        g.bound *= ipow(q, s - 1);
    }
    return g;
}

std::optional<std::int64_t> has_irreducible_fraction(std::int64_t r, const OpenInterval& iv)
{
    if (r < 1)
        throw DomainError("has_irreducible_fraction: r must be positive");
    // floor(lo_lower * r) is at or below every admissible numerator.
    const i128 start = static_cast<i128>(iv.lo.lo_num) * r / iv.lo.den - 1;
    for (i128 q = std::max<i128>(start, 0);; ++q) {
        if (q * iv.hi.den >= static_cast<i128>(iv.hi.hi_num) * r)
            return std::nullopt;
        const auto qq = static_cast<std::int64_t>(q);
        const Membership m = classify(qq, r, iv);
        if (m == Membership::ambiguous)
            throw Error("membership of " + std::to_string(qq) + "/" + std::to_string(r) +
                        " cannot be decided at the endpoint bracket precision");
        if (m == Membership::inside && std::gcd(qq, r) == 1)
            return qq;
    }
}

ExclusionReport excluded_denominators_report(const OpenInterval& iv, ThresholdMode mode,
                                             std::int64_t verify_limit)
{
    const GapCover g = gap_cover(iv, mode);
    const auto [wn, wd] = width_lower(iv);
    ExclusionReport rep;

    // A count of integers in an interval of length L divisible by d is L/d + e, |e| <= 1.
    // Inclusion-exclusion then gives more than w*phi(r) - 2^omega(r) numerators coprime
    // to r, so w*phi(r) > 2^omega(r) certifies r. Once the power of 2 is fixed, every
    // extension by a prime p >= 3 multiplies phi by at least 2 and 2^omega by at most 2,
    // so the certificate covers the whole subtree.
    std::function<void(std::size_t, std::int64_t, std::int64_t, int)> visit =
        [&](std::size_t idx, std::int64_t r, std::int64_t phi, int omega) {
            const bool cert = BigInt(phi) * wn > (BigInt(1) << omega) * wd;
            if (cert && idx >= 1) {
                ++rep.nodes_certified;
                return;
            }
            if (!cert) {
                ++rep.nodes_tested;
                if (!has_irreducible_fraction(r, iv))
                    rep.excluded.push_back(r);
            }
            for (std::size_t j = idx; j < g.primes.size(); ++j) {
                const std::int64_t p = g.primes[j];
                std::int64_t rr = r;
                std::int64_t ph = phi * (p - 1);
                for (int t = 1; t < g.exponents[j]; ++t) {
                    if (__builtin_mul_overflow(rr, p, &rr))
                        throw Error("candidate overflow without a certificate");
                    if (t > 1)
                        ph *= p;
                    visit(j + 1, rr, ph, omega + 1);
                }
            }
        };
    visit(0, 1, 1, 0);
    std::sort(rep.excluded.begin(), rep.excluded.end());

    for (std::int64_t r = 1; r <= verify_limit; ++r) {
        const bool listed = std::binary_search(rep.excluded.begin(), rep.excluded.end(), r);
        if (listed == has_irreducible_fraction(r, iv).has_value())
            throw Error("cross-scan disagrees with the candidate search at r=" +
                        std::to_string(r));
    }
    rep.verified_up_to = verify_limit;
    return rep;
}

std::vector<std::int64_t> excluded_denominators(const OpenInterval& iv)
{
    return excluded_denominators_report(iv).excluded;
}

std::vector<std::int64_t> excluded_even_periods()
{
    std::vector<std::int64_t> out;
    for (std::int64_t r : excluded_denominators(i_rot()))
        if (2 * r != 2)
            out.push_back(2 * r);
    return out;
}

OpenInterval q0_interval(const Params& params)
{
    if (params.a() == 1.0)
        throw DomainError("q0_for_a: the interval is empty at a = 1");
    const Endpoint quarter = Endpoint::rational(1, 4, "1/4");
    const Endpoint rho = Endpoint::irrational(rho_a(params), "rho_a");
    if (params.a() > 1.0)
        return {quarter, rho};
    return {rho, quarter};
}

BigInt q0_for_a(const Params& params)
{
    return gap_cover(q0_interval(params), ThresholdMode::strict4).bound;
}

}  // namespace lyness
