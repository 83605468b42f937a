#include "lyness/geometry.hpp"
#include "lyness/errors.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <string>

namespace lyness {

namespace {

void require_quadrant(double x, double y, const char* who)
{
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
        throw DomainError(std::string(who) + ": (x, y) outside the positive quadrant");
}

// c[0] + c[1] y + ... + c[N-1] y^(N-1)
template <std::size_t N>
double horner(const double (&c)[N], double y)
{
    double r = c[N - 1];
    for (std::size_t i = N - 1; i-- > 0;)
        r = r * y + c[i];
    return r;
}

BranchResult finish(double alpha, double beta, double delta)
{
    BranchResult r{alpha, beta, delta, std::nullopt, std::nullopt};
    if (delta >= 0.0) {
        const double s = std::sqrt(delta);
        r.z_minus = (alpha - s) / beta;
        r.z_plus = (alpha + s) / beta;
    }
    return r;
}

}  // namespace

BranchResult z_branches_level1(double x, double y, const Params& params, double k)
{
    const double a = params.a();
    const double x2 = x * x, x3 = x2 * x, x4 = x3 * x;

    const double ca[] = {
        -a - 1 - (a + 2) * x - x2,
        -(a + 2) - (a - k + 3) * x - x2,
        -1 - x,
    };
    const double cd[] = {
        (a - 1) * (a - 1) + 2 * a * (a - 1) * x + (2 * a - 2 + a * a) * x2 + 2 * a * x3 + x4,
        2 * a * (a - 1) + (-2 * k - 2 * k * a + 4 * a * a - 2) * x +
            (-4 * k - 2 * k * a - 2 + 6 * a + 2 * a * a) * x2 + (4 * a - 2 * k + 2) * x3 + 2 * x4,
        (2 * a - 2 + a * a) + (-4 * k - 2 * k * a - 2 + 6 * a + 2 * a * a) * x +
            (-2 * k * a - 6 * k + a * a + 3 + 6 * a + k * k) * x2 + (-2 * k + 4 + 2 * a) * x3 + x4,
        2 * a + (4 * a - 2 * k + 2) * x + (-2 * k + 4 + 2 * a) * x2 + 2 * x3,
        1 + 2 * x + x2,
    };
    const double beta = 2 * (1 + x + y + x * y);
    return finish(horner(ca, y), beta, horner(cd, y));
}

// The printed alpha and Delta for V2 carry k where h belongs; see README.
BranchResult z_branches_level2(double x, double y, const Params& params, double h)
{
    const double a = params.a();
    const double x2 = x * x, x3 = x2 * x, x4 = x3 * x;
    const double am1 = (a - 1) * (a - 1);

    const double ca[] = {
        -1 - a - (3 + a) * x - 2 * x2,
        -a - 3 + (h - 5) * x - x2,
        -2 - x,
    };
    const double cd[] = {
        am1 * (1 + x) * (1 + x),
        2 * am1 + (2 * a * a - 2 * a * h - 6 * a - 2 * h + 4) * x +
            (-2 * a * h - 4 * a - 6 * h + 4) * x2 + (-2 * a - 4 * h + 2) * x3,
        am1 + (-2 * a * h - 4 * a - 6 * h + 4) * x + (-4 * a + h * h - 10 * h + 5) * x2 +
            (2 - 2 * h) * x3 + x4,
        (-2 * a - 4 * h + 2) * x + (2 - 2 * h) * x2 + 2 * x3,
        x2,
    };
    const double beta = 2 * (x + 1) * (x + y + 1);
    return finish(horner(ca, y), beta, horner(cd, y));
}

double g_surface_height(double x, double y, const Params& params)
{
    require_quadrant(x, y, "g_surface_height");
    const double a = params.a();
    const double b = y * (y + 1) - x * (x + 1);
    const double c = y * y * y + (1 + a + x) * y * y + (a + x) * y;
    const double d = b * b + 4 * x * (x + 1) * c;
    const double s = std::sqrt(d);
    // Avoid cancellation when b < 0: z+ = 2c / (s - b).
    if (b < 0)
        return 2 * c / (s - b);
    return (b + s) / (2 * x * (x + 1));
}

BranchLevels branch_levels_v1(double x, double y, const Params& params)
{
    require_quadrant(x, y, "branch_levels_v1");
    const double a = params.a();
    const double r = 2 * std::sqrt(x + y + a);
    const double f = (x + 1) * (y + 1) / (x * y);
    return {(x + y + a + 1 - r) * f, (x + y + a + 1 + r) * f};
}

BranchLevels branch_levels_v2(double x, double y, const Params& params)
{
    require_quadrant(x, y, "branch_levels_v2");
    const double a = params.a();
    const double d = x * x * y + x * y * y + x * x + y * y + (a + 2) * x * y + (a + 1) * x +
                     (a + 1) * y + a;
    const double r = 2 * std::sqrt(d);
    const double base = x * y + 2 * x + 2 * y + a + 1;
    const double f = (1 + x + y) / (x * y);
    return {(base - r) * f, (base + r) * f};
}

const char* to_string(ExtremumSource s)
{
    return s == ExtremumSource::on_L ? "on-L" : "on-G";
}

namespace {

// y > 0 with G(x, y, x) = 0; G is strictly decreasing in y there.
double g_diagonal_y(double x, const Params& params)
{
    const double a = params.a();
    auto g = [&](double y) {
        return ((-y - (2 * x + a + 1)) * y - (2 * x + a)) * y + x * x * (x + 1) * (x + 1);
    };
    double lo = 0.0, hi = 1.0;
    while (g(hi) > 0) {
        lo = hi;
        hi *= 2.0;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Point3 g_candidate_bisect(double h, const Params& params)
{
    const double xc = fixed_coordinate(params);
    auto f = [&](double x) {
        const double y = g_diagonal_y(x, params);
        return v2({x, y, x}, params) - h;
    };
    double lo = xc, hi = 2 * xc;
    int guard = 0;
    while (f(hi) <= 0) {
        lo = hi;
        hi *= 2;
        if (++guard > 200)
            throw ConvergenceError("k_range: no bracket for the G candidate");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0 ? hi : lo) = mid;
    }
    const double x = 0.5 * (lo + hi);
    return {x, g_diagonal_y(x, params), x};
}

// Damped Newton on (V2(x,y,x) - h, G(x,y,x)); empty optional when it stalls.
std::optional<Point3> g_candidate_newton(double h, const Params& params, const CriticalData& cd)
{
    const double xc = cd.x_c;
    double x = xc * (1 + std::sqrt((h - cd.h_c) / cd.h_c));
    double y = g_diagonal_y(x, params);
    auto residual = [&](double u, double v) -> Eigen::Vector2d {
        const Point3 p{u, v, u};
        return {v2(p, params) / h - 1.0, g_value(p, params) / (1 + u * u * u)};
    };
    Eigen::Vector2d r = residual(x, y);
    for (int it = 0; it < 200; ++it) {
        if (r.norm() < 1e-15)
            return Point3{x, y, x};
        Eigen::Matrix2d j;
        const double ex = 1e-7 * x, ey = 1e-7 * y;
        j.col(0) = (residual(x + ex, y) - residual(x - ex, y)) / (2 * ex);
        j.col(1) = (residual(x, y + ey) - residual(x, y - ey)) / (2 * ey);
        const Eigen::Vector2d step = j.fullPivLu().solve(-r);
        if (!step.allFinite())
            return std::nullopt;
        double lambda = 1.0;
        bool accepted = false;
        for (int d = 0; d < 40; ++d, lambda *= 0.5) {
            const double nx = x + lambda * step[0], ny = y + lambda * step[1];
            if (nx <= 0 || ny <= 0)
                continue;
            const Eigen::Vector2d nr = residual(nx, ny);
            if (nr.norm() < r.norm()) {
                x = nx;
                y = ny;
                r = nr;
                accepted = true;
                break;
            }
        }
        if (!accepted)
            return r.norm() < 1e-12 ? std::optional<Point3>(Point3{x, y, x}) : std::nullopt;
    }
    return std::nullopt;
}

}  // namespace

KRange k_range(double h, const Params& params)
{
    const CriticalData cd = critical_values(params);
    if (!(h > cd.h_c))
        throw DomainError("k_range: h must exceed h_c");

    // L candidate: V2 on L decreases from +inf at x=1 to h_c at x_c.
    auto fl = [&](double x) { return v2(l_point(x, params), params) - h; };
    double lo = 1.0 + 1e-12, hi = cd.x_c;
    if (fl(lo) <= 0)
        throw ConvergenceError("k_range: level beyond the L bracket");
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (fl(mid) > 0 ? lo : hi) = mid;
    }
    const Point3 lp = l_point(0.5 * (lo + hi), params);

    const auto newton = g_candidate_newton(h, params, cd);
    const Point3 gp = newton ? *newton : g_candidate_bisect(h, params);

    const double kl = v1(lp, params);
    const double kg = v1(gp, params);
    KRange r;
    r.l_point = lp;
    r.g_point = gp;
    if (kl <= kg) {
        r.k1 = kl;
        r.k2 = kg;
        r.k1_source = ExtremumSource::on_L;
        r.k2_source = ExtremumSource::on_G;
    } else {
        r.k1 = kg;
        r.k2 = kl;
        r.k1_source = ExtremumSource::on_G;
        r.k2_source = ExtremumSource::on_L;
    }
    return r;
}

}  // namespace lyness
