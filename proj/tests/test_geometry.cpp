#include "lyness/errors.hpp"
#include "lyness/geometry.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace lyness;
using testing::random_points;
using testing::rel;

namespace {

// Independent branch oracle: V1 = k is A z^2 + B z + C = 0 with
// A = (x+1)(y+1), B = A (a+x+y+1) - k x y, C = A (a+x+y).
std::pair<double, double> quadratic_branches_v1(double x, double y, double a, double k)
{
    const double A = (x + 1) * (y + 1);
    const double B = A * (a + x + y + 1) - k * x * y;
    const double C = A * (a + x + y);
    const double s = std::sqrt(B * B - 4 * A * C);
    return {(-B - s) / (2 * A), (-B + s) / (2 * A)};
}

// Same for V2 = h, expanded by hand from (1+y+z)(1+x+y)(a+x+y+z+xz) = h x y z.
std::pair<double, double> quadratic_branches_v2(double x, double y, double a, double h)
{
    const double m = 1 + x + y;
    const double A = m * (1 + x);
    const double B = m * ((a + x + y) + (1 + y) * (1 + x)) - h * x * y;
    const double C = m * (1 + y) * (a + x + y);
    const double s = std::sqrt(B * B - 4 * A * C);
    return {(-B - s) / (2 * A), (-B + s) / (2 * A)};
}

}  // namespace

TEST_CASE("V1 branch identity alpha^2 - Delta")
{
    for (double a : {0.5, 1.0, 3.0, 8.3}) {
        const Params pa(a);
        for (const Point3& p : random_points(500, 41)) {
            const double k = v1(p, pa) * (1 + 0.3 * std::sin(p.z));
            const BranchResult br = z_branches_level1(p.x, p.y, pa, k);
            const double want =
                4 * (p.y + 1) * (p.y + 1) * (p.x + 1) * (p.x + 1) * (p.x + p.y + a);
            CHECK(std::abs(br.alpha * br.alpha - br.delta - want) <
                  1e-10 * (br.alpha * br.alpha + std::abs(br.delta)));
            CHECK(br.beta == doctest::Approx(2 * (1 + p.x) * (1 + p.y)));
        }
        CHECK(z_branches_level1(0, 0, pa, 50).delta == doctest::Approx((1 - a) * (1 - a)));
    }
}

TEST_CASE("V1 branches agree with the direct quadratic and round-trip")
{
    for (double a : {0.5, 3.0, 7.0 / 9}) {
        const Params pa(a);
        for (const Point3& p : random_points(500, 43)) {
            const double k = v1(p, pa);
            const BranchResult br = z_branches_level1(p.x, p.y, pa, k);
            REQUIRE(br.z_minus);
            REQUIRE(br.z_plus);
            CHECK(*br.z_minus <= *br.z_plus);
            const auto [zm, zp] = quadratic_branches_v1(p.x, p.y, a, k);
            CHECK(std::abs(*br.z_minus - zm) < 1e-8 * (1 + zp));
            CHECK(std::abs(*br.z_plus - zp) < 1e-8 * (1 + zp));
            // p itself lies on one of the two branches.
            CHECK(std::min(std::abs(*br.z_minus - p.z), std::abs(*br.z_plus - p.z)) <
                  1e-7 * (1 + p.z));
            for (double z : {*br.z_minus, *br.z_plus})
                if (z > 0)
                    CHECK(rel(v1({p.x, p.y, z}, pa), k) < 1e-10);
        }
    }
    // The level through the fixed point pinches to it.
    const Params p3(3);
    const BranchResult c = z_branches_level1(3, 3, p3, 768.0 / 27);
    CHECK(std::abs(c.delta) < 1e-9 * c.alpha * c.alpha);
    const BranchResult cc = z_branches_level1(3, 3, p3, 768.0 / 27 * (1 + 1e-14));
    REQUIRE(cc.z_plus);
    CHECK(*cc.z_plus == doctest::Approx(3).epsilon(1e-5));
    CHECK(*cc.z_minus == doctest::Approx(3).epsilon(1e-5));
    CHECK(!z_branches_level1(3, 3, p3, 20).z_plus);
}

TEST_CASE("V2 branches: identity, positivity, round trip")
{
    for (double a : {0.5, 1.0, 3.0, 8.3}) {
        const Params pa(a);
        for (const Point3& p : random_points(500, 47)) {
            const double h = v2(p, pa) * (1 + 0.3 * std::cos(p.z));
            const BranchResult br = z_branches_level2(p.x, p.y, pa, h);
            const double m = 1 + p.x + p.y;
            const double want = 4 * (p.x + 1) * (p.y + 1) * (a + p.x + p.y) * m * m;
            CHECK(br.alpha * br.alpha - br.delta > 0);
            CHECK(std::abs(br.alpha * br.alpha - br.delta - want) <
                  1e-10 * (br.alpha * br.alpha + std::abs(br.delta)));

            const double h0 = v2(p, pa);
            const BranchResult b0 = z_branches_level2(p.x, p.y, pa, h0);
            REQUIRE(b0.z_plus);
            const auto [zm, zp] = quadratic_branches_v2(p.x, p.y, a, h0);
            CHECK(std::abs(*b0.z_minus - zm) < 1e-8 * (1 + zp));
            CHECK(std::abs(*b0.z_plus - zp) < 1e-8 * (1 + zp));
            CHECK(rel(v2({p.x, p.y, *b0.z_plus}, pa), h0) < 1e-10);
            if (*b0.z_minus > 0)
                CHECK(rel(v2({p.x, p.y, *b0.z_minus}, pa), h0) < 1e-10);
        }
    }
    const Params p3(3);
    const BranchResult c = z_branches_level2(3, 3, p3, 1029.0 / 27);
    CHECK(std::abs(c.delta) < 1e-9 * c.alpha * c.alpha);
    CHECK(c.alpha / c.beta == doctest::Approx(3).epsilon(1e-12));
}

TEST_CASE("height of G")
{
    CHECK(g_surface_height(3, 3, Params(3)) == doctest::Approx(3).epsilon(1e-14));
    CHECK(g_surface_height(4, 7.0 / 3, Params(3)) == doctest::Approx(1.62395).epsilon(5e-6));
    CHECK(g_surface_height(10.0 / 3, 37.0 / 21, Params(7.0 / 9)) ==
          doctest::Approx(1.11361).epsilon(5e-6));
    CHECK_THROWS_AS(g_surface_height(0, 1, Params(3)), DomainError);

    for (double a : {0.5, 3.0, 8.3}) {
        const Params pa(a);
        for (const Point3& p : random_points(500, 53)) {
            const double z = g_surface_height(p.x, p.y, pa);
            REQUIRE(z > 0);
            const double scale = p.y * p.y * p.y + (p.x + z + a + 1) * p.y * p.y +
                                 (p.x + z + a) * p.y + p.x * z * (p.x + 1) * (z + 1);
            CHECK(std::abs(g_value({p.x, p.y, z}, pa)) < 1e-10 * scale);
            // Single positive crossing: negative below, positive above.
            CHECK(g_value({p.x, p.y, 0.5 * z}, pa) < 0);
            CHECK(g_value({p.x, p.y, 2 * z}, pa) > 0);
        }
    }
}

TEST_CASE("branch levels of V1")
{
    for (double a : {0.5, 3.0, 8.3}) {
        const Params pa(a);
        const double xc = fixed_coordinate(pa);
        CHECK(branch_levels_v1(xc, xc, pa).m_plus == doctest::Approx(critical_values(pa).k_c).epsilon(1e-13));
        if (a > 1) {
            const double s = std::sqrt(a - 1);
            CHECK(branch_levels_v1(s, s, pa).m_minus == doctest::Approx((1 + s) * (1 + s)).epsilon(1e-13));
        }
        for (const Point3& p : random_points(300, 59)) {
            const BranchLevels m = branch_levels_v1(p.x, p.y, pa);
            CHECK(m.m_minus <= m.m_plus);
            for (double k : {m.m_minus, m.m_plus}) {
                const BranchResult br = z_branches_level1(p.x, p.y, pa, k);
                CHECK(std::abs(br.delta) < 1e-8 * br.alpha * br.alpha);
            }
        }
    }
    CHECK_THROWS_AS(branch_levels_v1(-1, 1, Params(3)), DomainError);
}

TEST_CASE("branch levels of V2")
{
    for (double a : {0.5, 3.0, 7.0 / 9}) {
        const Params pa(a);
        const double xc = fixed_coordinate(pa);
        CHECK(branch_levels_v2(xc, xc, pa).m_plus == doctest::Approx(critical_values(pa).h_c).epsilon(1e-13));
        for (const Point3& p : random_points(300, 61)) {
            const BranchLevels m = branch_levels_v2(p.x, p.y, pa);
            CHECK(m.m_minus <= m.m_plus);
            for (double h : {m.m_minus, m.m_plus}) {
                const BranchResult br = z_branches_level2(p.x, p.y, pa, h);
                CHECK(std::abs(br.delta) < 1e-8 * br.alpha * br.alpha);
            }
        }
    }
    // For a < 1, m_minus equals 1 - a along x y^2 + (1+x)(a-1+x) y + (1+x)(a-1) = 0.
    for (double a : {0.2, 0.5, 0.9}) {
        const Params pa(a);
        for (double x : {0.05, 0.1, 0.2}) {
            const double A = x, B = (1 + x) * (a - 1 + x), C = (1 + x) * (a - 1);
            const double y = (-B + std::sqrt(B * B - 4 * A * C)) / (2 * A);
            REQUIRE(y > 0);
            CHECK(branch_levels_v2(x, y, pa).m_minus == doctest::Approx(1 - a).epsilon(1e-9));
        }
    }
}

TEST_CASE("k range on a level of V2")
{
    const Params p3(3);
    const double z0 = g_surface_height(12, 15.0 / 11, p3);
    const double h0 = v2({12, 15.0 / 11, z0}, p3);
    const KRange kr = k_range(h0, p3);
    CHECK(kr.k2 == doctest::Approx(146.70452388).epsilon(1e-9));
    CHECK(kr.k2_source == ExtremumSource::on_G);
    CHECK(kr.k1_source == ExtremumSource::on_L);
    CHECK(rel(kr.k1, v1_on_L(kr.l_point.x, p3)) < 1e-12);
    CHECK(rel(v2(kr.l_point, p3), h0) < 1e-10);
    CHECK(rel(v2(kr.g_point, p3), h0) < 1e-10);

    CHECK_THROWS_AS(k_range(1029.0 / 27, p3), DomainError);

    for (double a : {0.5, 3.0, 7.0 / 9}) {
        const Params pa(a);
        const CriticalData cd = critical_values(pa);
        const KRange tiny = k_range(cd.h_c * (1 + 1e-8), pa);
        CHECK(rel(tiny.k1, cd.k_c) < 1e-6);
        CHECK(rel(tiny.k2, cd.k_c) < 1e-6);
        for (double f : {1.01, 1.3, 2.0, 5.0, 20.0}) {
            const KRange r = k_range(cd.h_c * f, pa);
            CHECK(cd.k_c < r.k1);
            CHECK(r.k1 < r.k2);
            CHECK(r.k1_source != r.k2_source);
        }
    }
}

TEST_CASE("sampled level surfaces stay inside the k range")
{
    for (auto [a, f] : {std::pair{3.0, 1.5}, std::pair{0.5, 3.0}, std::pair{7.0 / 9, 1.2}}) {
        const Params pa(a);
        const double h = critical_values(pa).h_c * f;
        const KRange kr = k_range(h, pa);
        const double eps = 1e-6 * kr.k2;
        int sampled = 0;
        double lo = INFINITY, hi = -INFINITY;
        for (int i = 0; i < 100; ++i) {
            for (int j = 0; j < 100; ++j) {
                const double x = std::exp(-5.0 + 10.0 * i / 99);
                const double y = std::exp(-5.0 + 10.0 * j / 99);
                const BranchResult br = z_branches_level2(x, y, pa, h);
                if (!br.z_plus)
                    continue;
                for (double z : {*br.z_minus, *br.z_plus}) {
                    if (z <= 0)
                        continue;
                    const double k = v1({x, y, z}, pa);
                    lo = std::min(lo, k);
                    hi = std::max(hi, k);
                    CHECK(k >= kr.k1 - eps);
                    CHECK(k <= kr.k2 + eps);
                    ++sampled;
                }
            }
        }
        CHECK(sampled > 100);
        // The bounds are nearly attained by the samples.
        CHECK(lo < kr.k1 + 0.1 * (kr.k2 - kr.k1));
        CHECK(hi > kr.k2 - 0.1 * (kr.k2 - kr.k1));
    }
}
