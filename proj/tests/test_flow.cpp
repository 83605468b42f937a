#include "lyness/errors.hpp"
#include "lyness/flow.hpp"
#include "lyness/geometry.hpp"
#include "support.hpp"

#include <doctest.h>

#include <numbers>

using namespace lyness;
using testing::rel;

namespace {

Point3 on_g(double x, double y, const Params& pa) { return {x, y, g_surface_height(x, y, pa)}; }

}  // namespace

TEST_CASE("vector field is tangent to both level sets")
{
    const Params pa(3);
    for (const Point3& p : testing::random_points(200, 71)) {
        const Eigen::Vector3d X = vector_field(p, pa);
        const double h = 1e-6;
        Eigen::Vector3d g1, g2;
        for (int i = 0; i < 3; ++i) {
            Eigen::Vector3d e = Eigen::Vector3d::Zero();
            e[i] = h * (1 + std::abs(p.vec()[i]));
            const Point3 pp = Point3::from(p.vec() + e), pm = Point3::from(p.vec() - e);
            g1[i] = (v1(pp, pa) - v1(pm, pa)) / (2 * e[i]);
            g2[i] = (v2(pp, pa) - v2(pm, pa)) / (2 * e[i]);
        }
        CHECK(std::abs(X.dot(g1)) < 1e-6 * X.norm() * g1.norm());
        CHECK(std::abs(X.dot(g2)) < 1e-6 * X.norm() * g2.norm());
    }
}

TEST_CASE("period and rotation on G")
{
    const Params p3(3);
    const RotationRecord r1 = rotation_number(on_g(4, 7.0 / 3, p3), p3, 1);
    CHECK(std::abs(r1.T - 0.41781) < 5e-5);
    CHECK(std::abs(r1.tau - 0.05586) < 5e-5);
    CHECK(std::abs(r1.rho - 0.13369) < 5e-5);
    CHECK(r1.power == 1);

    const Params p79(7.0 / 9);
    const RotationRecord r3 = rotation_number(on_g(10.0 / 3, 37.0 / 21, p79), p79, 1);
    CHECK(std::abs(r3.T - 0.48969) < 5e-5);
    CHECK(std::abs(r3.tau - 0.06043) < 5e-5);
    CHECK(std::abs(r3.rho - 0.12340) < 5e-5);

    // On G the flight time to F^2 is twice the flight time to F.
    for (auto [pa, p] : {std::pair{p3, on_g(4, 7.0 / 3, p3)}, std::pair{p3, on_g(9, 1.5, p3)},
                         std::pair{p79, on_g(10.0 / 3, 37.0 / 21, p79)}}) {
        const DualRotation d = rotation_both(p, pa, true);
        REQUIRE(d.tau_F);
        const double rf = *d.tau_F / d.T, rf2 = d.tau_F2 / d.T;
        CHECK(std::abs(rf2 - 2 * rf) < 2e-5);
        CHECK(0 < *d.tau_F);
        CHECK(*d.tau_F < d.T);
    }
}

TEST_CASE("rotation off G uses the second iterate")
{
    const Params p3(3);
    const Point3 p{12, 1.36364, 0.27051};
    const RotationRecord r = rotation_number(p, p3, 2);
    CHECK(std::abs(r.T - 0.12860) < 5e-5);
    CHECK(std::abs(r.tau - 0.03386) < 5e-5);
    CHECK(std::abs(r.rho - 0.26328) < 5e-5);
    CHECK(0 < r.tau);
    CHECK(r.tau < r.T);

    // A rounded point is not exactly on G, so F(p) is not on its orbit.
    CHECK_THROWS_AS(rotation_number(p, p3, 1), TargetNotOnOrbitError);
    CHECK_THROWS_AS(rotation_number(p, p3, 3), DomainError);
}

TEST_CASE("integration conserves the invariants and closes after one period")
{
    for (double a : {3.0, 7.0 / 9, 0.5}) {
        const Params pa(a);
        const double xc = fixed_coordinate(pa);
        for (const Point3& p : {on_g(xc + 1, (a + xc + 1) / (xc + 2), pa),
                                Point3{xc + 2, xc * 0.7, xc * 1.3}}) {
            const double T = period(p, pa);
            const Trajectory tr = integrate(p, pa, T);
            double worst = 0;
            for (std::size_t i = 0; i < tr.size(); ++i) {
                worst = std::max(worst, rel(v1(tr.state(i), pa), v1(p, pa)));
                worst = std::max(worst, rel(v2(tr.state(i), pa), v2(p, pa)));
            }
            CHECK(worst <= 1e3 * default_tol);
            CHECK(norm2(tr.at(T) - p) < 1e-7 * norm2(p));
            CHECK(norm2(tr.at(0.5 * T) - p) > 1e-3 * norm2(p));
        }
    }
}

TEST_CASE("degenerate starting points")
{
    const Params p3(3);
    CHECK_THROWS_AS(period(fixed_point(p3), p3), StationaryPointError);
    CHECK_THROWS_AS(period(l_point(5, p3), p3), StationaryPointError);
    const Point3 near{3 * (1 + 1e-6), 3, 3};
    CHECK_THROWS_AS(rotation_number(near, p3, 1), DegenerateCircleError);
    CHECK_THROWS_AS(period({-1, 2, 3}, p3), DomainError);
    CHECK_THROWS_AS(integrate({4, 2, 1}, p3, 1, 1e-3), DomainError);
    CHECK_THROWS_AS(integrate({4, 2, 1}, p3, 1, 1e-16), DomainError);
}

TEST_CASE("distance to the 2-periodic curve")
{
    const Params p3(3);
    CHECK(distance_to_L(l_point(4, p3), p3) < 1e-9);
    CHECK(distance_to_L(fixed_point(p3), p3) < 1e-7);
    const Point3 off = l_point(4, p3) + Point3{0, 0, 0.01};
    const double d = distance_to_L(off, p3);
    CHECK(d > 0);
    CHECK(d <= 0.01 + 1e-12);
}

TEST_CASE("winding oracle agrees with the flight-time rotation number")
{
    const Params p3(3);
    const Point3 p = on_g(4, 7.0 / 3, p3);
    const double rho = rotation_number(p, p3, 1).rho;
    CHECK(std::abs(rotation_number_oracle(p, p3, 1, 1000) - rho) < 1e-3);
    CHECK_THROWS_AS(rotation_number_oracle(p, p3, 1, 10), DomainError);

    // For a = 1 every orbit has period 8; on G that is rho = 1/8 for F.
    const Params p1(1);
    const Point3 q = on_g(3, 2, p1);
    CHECK(std::abs(rotation_number(q, p1, 1).rho - 0.125) < 1e-6);
    CHECK(std::abs(rotation_number_oracle(q, p1, 1, 1000) - 0.125) < 1e-6);

    // Off G the second iterate gives 2/8 for a = 1.
    const Point3 w{2, 3, 4};
    CHECK(std::abs(rotation_number(w, p1, 2).rho - 0.25) < 1e-6);
}

TEST_CASE("path scans")
{
    const Params p3(3);
    PathSpec g{PathKind::on_G, {0, 1, 2}};
    const auto rows = scan_path(g, p3);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].flag != "ok");
    CHECK(!rows[0].T);
    CHECK(std::abs(*rows[0].rho_F - rho_limit_fixed(p3)) < 1e-12);
    CHECK(rows[1].flag == "ok");
    CHECK(std::abs(*rows[1].rho_F - 0.13369) < 5e-5);
    CHECK(std::abs(*rows[2].rho_F2 - 0.26674) < 5e-5);
    CHECK(rows[1].p.y == doctest::Approx(7.0 / 3));

    const LevelPath lp = level_path(p3);
    CHECK(lp.x0 == doctest::Approx(12));
    CHECK(std::abs(lp.x1 - 1.11929) < 5e-6);
    CHECK(std::abs(lp.k - v1(on_g(12, 15.0 / 11, p3), p3)) < 1e-9 * lp.k);
    const Point3 end = path_point(PathKind::on_level, 0.5, p3);
    CHECK(rel(v1(end, p3), lp.k) < 1e-10);
    CHECK(end.y == doctest::Approx((3 + end.x) / (end.x - 1)));

    PathSpec lv{PathKind::on_level, {0, 0.5, 1}};
    const auto lrows = scan_path(lv, p3, 3);
    CHECK(!lrows[0].rho_F);
    CHECK(std::abs(*lrows[0].rho_F2 - 0.26328) < 5e-5);
    CHECK(std::abs(*lrows[1].rho_F2 - 0.26295) < 5e-5);
    CHECK(std::abs(*lrows[2].rho_F2 - rho_limit_two_periodic(lp.x1, p3)) < 1e-12);
    CHECK(scan_path({PathKind::on_G, {}}, p3).empty());
}

TEST_CASE("rotation number increases along the 7/9 level path towards the 2-periodic limit")
{
    const Params pa(7.0 / 9);
    PathSpec lv{PathKind::on_level, {0, 0.5, 0.9, 0.99}};
    const auto rows = scan_path(lv, pa, 2);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(*rows[i].rho_F2 > *rows[i - 1].rho_F2);
    CHECK(std::abs(*rows[3].rho_F2 - 0.24932) < 5e-5);
}
