#include "lyness/core.hpp"
#include "lyness/errors.hpp"

#include <numbers>
#include <string>

namespace lyness {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_above_one(double x, const char* who)
{
    if (!(x > 1.0) || !std::isfinite(x))
        throw DomainError(std::string(who) + ": x must exceed 1");
}

}  // namespace

Params::Params(double a) : a_(a)
{
    if (!(a > 0.0) || !std::isfinite(a))
        throw DomainError("parameter a must be positive and finite");
}

bool in_octant(Point3 p)
{
    return p.x > 0.0 && p.y > 0.0 && p.z > 0.0 && std::isfinite(p.x) && std::isfinite(p.y) &&
           std::isfinite(p.z);
}

void require_octant(Point3 p, const char* who)
{
    if (!in_octant(p))
        throw DomainError(std::string(who) + ": point outside the positive octant");
}

Point3 map_f(Point3 p, const Params& params)
{
    require_octant(p, "map_f");
    return {p.y, p.z, (params.a() + p.y + p.z) / p.x};
}

Point3 map_f_iter(Point3 p, const Params& params, int n)
{
    if (n < 1)
        throw DomainError("map_f_iter: n must be positive");
    require_octant(p, "map_f_iter");
    const double a = params.a();
    for (int i = 0; i < n; ++i) {
        p = {p.y, p.z, (a + p.y + p.z) / p.x};
        if (!in_octant(p))
            throw DomainError("map_f_iter: iterate left the representable octant");
    }
    return p;
}

Eigen::Matrix3d jacobian_f(Point3 p, const Params& params)
{
    require_octant(p, "jacobian_f");
    Eigen::Matrix3d j;
    const double ix = 1.0 / p.x;
    j << 0.0, 1.0, 0.0,
         0.0, 0.0, 1.0,
         -(params.a() + p.y + p.z) * ix * ix, ix, ix;
    return j;
}

double v1(Point3 p, const Params& params)
{
    require_octant(p, "v1");
    const auto [x, y, z] = p;
    return (x + 1) * (y + 1) * (z + 1) * (params.a() + x + y + z) / (x * y * z);
}

double v2(Point3 p, const Params& params)
{
    require_octant(p, "v2");
    const auto [x, y, z] = p;
    return (1 + y + z) * (1 + x + y) * (params.a() + x + y + z + x * z) / (x * y * z);
}

LevelPair invariants(Point3 p, const Params& params)
{
    return {v1(p, params), v2(p, params)};
}

double g_value(Point3 p, const Params& params)
{
    require_octant(p, "g_value");
    const auto [x, y, z] = p;
    const double a = params.a();
    return ((-y - (x + z + a + 1)) * y - (x + z + a)) * y + x * z * (x + 1) * (z + 1);
}

Region classify_region(Point3 p, const Params& params)
{
    const double g = g_value(p, params);
    const double s = norm2(p);
    if (std::abs(g) < 1e-9 * (1.0 + s * s * s))
        return Region::on_surface;
    return g > 0 ? Region::positive : Region::negative;
}

double fixed_coordinate(const Params& params)
{
    return 1.0 + std::sqrt(1.0 + params.a());
}

Point3 fixed_point(const Params& params)
{
    const double c = fixed_coordinate(params);
    return {c, c, c};
}

CriticalData critical_values(const Params& params)
{
    const double a = params.a();
    const double s = std::sqrt(1.0 + a);
    const double s1 = (1 + s) * (1 + s) * (1 + s);
    CriticalData d;
    d.x_c = 1 + s;
    d.k_c = (2 + s) * (2 + s) * (2 + s) * (a + 3 + 3 * s) / s1;
    d.h_c = (3 + 2 * s) * (3 + 2 * s) * (2 * a + 5 + 5 * s) / s1;
    d.rho_fixed_limit = rho_limit_fixed(params);
    d.rho_a = rho_a(params);
    return d;
}

Point3 l_point(double x, const Params& params)
{
    require_above_one(x, "l_point");
    return {x, (x + params.a()) / (x - 1), x};
}

double v1_on_L(double x, const Params& params)
{
    require_above_one(x, "v1_on_L");
    const double a = params.a();
    const double u = (2 * x + a - 1) * (x + 1);
    return u * u / (x * (x + a) * (x - 1));
}

TwoPeriodicPair two_periodic_points_at_level(double k, const Params& params)
{
    const double xc = fixed_coordinate(params);
    const double kc = v1_on_L(xc, params);
    if (!(k > kc))
        throw DomainError("two_periodic_points_at_level: level must exceed k_c");

    // v1_on_L - k changes sign once on each bracket.
    auto bisect = [&](double lo, double hi) {
        const bool lo_above = v1_on_L(lo, params) > k;
        for (int i = 0; i < 400 && hi - lo > 1e-13 * hi; ++i) {
            const double mid = 0.5 * (lo + hi);
            if ((v1_on_L(mid, params) > k) == lo_above)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };

    const double lo = 1.0 + 1e-9;
    if (v1_on_L(lo, params) <= k)
        throw DomainError("two_periodic_points_at_level: level beyond the lower bracket");
    double big = 2.0 * xc;
    while (v1_on_L(big, params) <= k) {
        big *= 2.0;
        if (!std::isfinite(big))
            throw DomainError("two_periodic_points_at_level: no upper bracket");
    }
    return {bisect(lo, xc), bisect(xc, big)};
}

double rho_limit_fixed(const Params& params)
{
    const double a = params.a();
    return std::acos((a - 1 + std::sqrt(1 + a)) / (2 * a)) / two_pi;
}

double rho_limit_two_periodic(double x_h, const Params& params)
{
    require_above_one(x_h, "rho_limit_two_periodic");
    const double a = params.a();
    return std::acos((a - 1) * (1 - x_h) / (2 * x_h * (a + x_h))) / two_pi;
}

double rho_a(const Params& params)
{
    const double a = params.a();
    const double s = std::sqrt(1 + a);
    return std::acos((1 - a) * s / (2 * (1 + s) * (1 + a + s))) / two_pi;
}

}  // namespace lyness
