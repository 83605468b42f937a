#pragma once

#include "lyness/core.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lyness {

using BigInt = boost::multiprecision::cpp_int;

// Endpoint value plus rational bounds lo_num/den <= value <= hi_num/den.
// Exact rational endpoints have lo_num == hi_num.
struct Endpoint {
    double value = 0.0;
    std::int64_t lo_num = 0;
    std::int64_t hi_num = 0;
    std::int64_t den = 1;
    std::string label;

    bool exact() const { return lo_num == hi_num; }
    static Endpoint rational(std::int64_t num, std::int64_t den, std::string label = {});
    // Outward bracket on the 1e-12 grid.
    static Endpoint irrational(double value, std::string label = {});
};

struct OpenInterval {
    Endpoint lo;
    Endpoint hi;

    OpenInterval(Endpoint lo, Endpoint hi);
    double width() const { return hi.value - lo.value; }
};

OpenInterval i_rot();
OpenInterval j_rot();

enum class Membership { inside, outside, ambiguous };

// Verdict for q/r against the interval, decided on the rational bounds only.
Membership classify(std::int64_t q, std::int64_t r, const OpenInterval& iv);

enum class ThresholdMode { strict4, paper3 };

const char* to_string(ThresholdMode m);

struct GapCover {
    std::int64_t p_next = 0;
    std::vector<std::int64_t> primes;
    std::vector<int> exponents;
    BigInt bound;
    ThresholdMode mode = ThresholdMode::strict4;

    BigInt candidate_count() const;
    bool is_candidate(std::int64_t r) const;
    // Sorted members; throws if there are more than `limit`.
    std::vector<std::int64_t> candidate_set(std::size_t limit = 10'000'000) const;
};

GapCover gap_cover(const OpenInterval& iv, ThresholdMode mode);

std::optional<std::int64_t> has_irreducible_fraction(std::int64_t r, const OpenInterval& iv);

struct ExclusionReport {
    std::vector<std::int64_t> excluded;
    std::uint64_t nodes_tested = 0;     // candidates checked by direct scan
    std::uint64_t nodes_certified = 0;  // subtrees closed by the counting bound
    std::int64_t verified_up_to = 0;
};

// Failing denominators among the candidates of gap_cover(iv, mode), with the
// direct cross-scan of every r <= verify_limit.
ExclusionReport excluded_denominators_report(const OpenInterval& iv,
                                             ThresholdMode mode = ThresholdMode::strict4,
                                             std::int64_t verify_limit = 10'000);
std::vector<std::int64_t> excluded_denominators(const OpenInterval& iv);

std::vector<std::int64_t> excluded_even_periods();

OpenInterval q0_interval(const Params& params);
BigInt q0_for_a(const Params& params);

}  // namespace lyness
