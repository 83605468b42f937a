#include "lyness/flow.hpp"
#include "lyness/errors.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numbers>

namespace lyness {

namespace {

constexpr double t_guard = 1e3;

Eigen::Vector3d field(const Eigen::Vector3d& s, double a)
{
    const double x = s[0], y = s[1], z = s[2];
    return {(x + 1) * (1 + y + z) * (y * z - x - y - a) / (y * z),
            (y + 1) * (z - x) * (a + x + y + z + x * z) / (x * z),
            (z + 1) * (1 + x + y) * (a + y + z - x * y) / (x * y)};
}

std::shared_ptr<DormandPrince> make_engine(const Params& params, double tol)
{
    if (!(tol >= 1e-14 && tol <= 1e-6))
        throw DomainError("integration tolerance must lie in [1e-14, 1e-6]");
    const double a = params.a();
    return std::make_shared<DormandPrince>([a](const Eigen::Vector3d& s) { return field(s, a); },
                                           tol);
}

bool keep_octant(const Eigen::Vector3d& s)
{
    return s[0] > 0 && s[1] > 0 && s[2] > 0;
}

void require_moving(Point3 p, const Params& params)
{
    require_octant(p, "flow");
    const double scale = 1.0 + norm2(p);
    if (field(p.vec(), params.a()).norm() <= 1e-12 * scale * scale)
        throw StationaryPointError();
}

void require_regular(Point3 p, const Params& params)
{
    require_moving(p, params);
    const double xc = fixed_coordinate(params);
    const double eps = 1e-4 * xc;
    if (norm2(p - fixed_point(params)) < eps)
        throw DegenerateCircleError("circle too close to the fixed point; use rho_limit_fixed");
    if (distance_to_L(p, params) < eps)
        throw DegenerateCircleError(
            "circle too close to the 2-periodic curve; use rho_limit_two_periodic");
}

double refine_root(const std::function<double(double)>& f, double lo, double hi)
{
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0)
        return lo;
    if (fhi == 0.0)
        return hi;
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(
        f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(45), iters);
    return 0.5 * (r.first + r.second);
}

// One full revolution of the orbit through p, with the first return time refined.
struct Revolution {
    std::shared_ptr<DormandPrince> engine;
    Point3 p;
    double T = 0.0;
    double delta = 0.0;  // acceptance radius
    int sigma_crossings = 0;
};

Revolution revolve(Point3 p, const Params& params, double tol)
{
    require_regular(p, params);
    Revolution rev;
    rev.p = p;
    rev.engine = make_engine(params, tol);

    const Eigen::Vector3d p0 = p.vec();
    const Eigen::Vector3d n = field(p0, params.a());
    Eigen::Vector3d lo = p0, hi = p0;
    bool armed = false;
    double prev = 0.0;
    bool found = false;

    auto stop = [&](double, const Eigen::Vector3d& y) {
        lo = lo.cwiseMin(y);
        hi = hi.cwiseMax(y);
        const double s = (y - p0).dot(n);
        bool done = false;
        if (armed && prev < 0 && s >= 0) {
            const double delta = 0.05 * (hi - lo).norm();
            if ((y - p0).norm() < delta) {
                rev.delta = delta;
                done = true;
            }
        }
        if (s < 0)
            armed = true;
        prev = s;
        found = done;
        return done;
    };
    rev.engine->run(0.0, p0, t_guard, stop, keep_octant);
    if (!found)
        throw NoReturnError("no return to the section within the time guard");

    const auto& smp = rev.engine->samples();
    const std::size_t last = smp.size() - 1;
    const auto s_of = [&](double t) { return (rev.engine->at(t) - p0).dot(n); };
    rev.T = refine_root(s_of, smp[last - 1].t, smp[last].t);

    for (std::size_t i = 1; i < smp.size(); ++i) {
        const double d0 = smp[i - 1].y[2] - smp[i - 1].y[0];
        const double d1 = smp[i].y[2] - smp[i].y[0];
        if ((d0 < 0) != (d1 < 0))
            ++rev.sigma_crossings;
    }

    const double closure = (rev.engine->at(rev.T) - p0).norm();
    if (closure > 1e-8 * p0.norm())
        throw ConvergenceError("orbit does not close at the detected period");
    return rev;
}

double flight_time(const Revolution& rev, Point3 target, const Params& params)
{
    const Eigen::Vector3d q = target.vec();
    const Eigen::Vector3d n = field(q, params.a());
    const auto& smp = rev.engine->samples();
    const auto f = [&](double t) { return (rev.engine->at(t) - q).dot(n); };

    for (std::size_t i = 1; i < smp.size() && smp[i - 1].t < rev.T; ++i) {
        const double f0 = (smp[i - 1].y - q).dot(n);
        const double f1 = (smp[i].y - q).dot(n);
        if (!(f0 < 0 && f1 >= 0))
            continue;
        const double dist = std::min((smp[i - 1].y - q).norm(), (smp[i].y - q).norm());
        if (dist >= rev.delta)
            continue;
        const double tau = refine_root(f, smp[i - 1].t, std::min(smp[i].t, rev.T));
        const double miss = (rev.engine->at(tau) - q).norm();
        if (miss > 1e-8 * q.norm())
            throw TargetNotOnOrbitError("image point is not on the orbit through p (miss " +
                                        std::to_string(miss) + ")");
        if (tau > 0 && tau < rev.T)
            return tau;
    }
    throw TargetNotOnOrbitError("image point is not on the orbit through p");
}

void require_power(int power)
{
    if (power != 1 && power != 2)
        throw DomainError("power must be 1 or 2");
}

}  // namespace

Eigen::Vector3d vector_field(Point3 p, const Params& params)
{
    require_octant(p, "vector_field");
    return field(p.vec(), params.a());
}

Trajectory::Trajectory(std::shared_ptr<const DormandPrince> engine, double tol)
    : engine_(std::move(engine)), tol_(tol)
{
}

Point3 Trajectory::at(double t) const
{
    if (t < 0 || t > t_end())
        throw DomainError("Trajectory::at: t outside the integrated span");
    return Point3::from(engine_->at(t));
}

Trajectory integrate(Point3 p, const Params& params, double t_end, double tol)
{
    require_moving(p, params);
    if (!(t_end > 0))
        throw DomainError("integrate: t_end must be positive");
    auto engine = make_engine(params, tol);
    engine->run(0.0, p.vec(), t_end, nullptr, keep_octant);
    return Trajectory(engine, tol);
}

double period(Point3 p, const Params& params, double tol)
{
    return revolve(p, params, tol).T;
}

double time_to_image(Point3 p, const Params& params, int power, double tol)
{
    require_power(power);
    const Revolution rev = revolve(p, params, tol);
    return flight_time(rev, map_f_iter(p, params, power), params);
}

RotationRecord rotation_number(Point3 p, const Params& params, int power, double tol)
{
    require_power(power);
    const Revolution rev = revolve(p, params, tol);
    RotationRecord r;
    r.T = rev.T;
    r.tau = flight_time(rev, map_f_iter(p, params, power), params);
    r.rho = r.tau / r.T;
    r.power = power;
    r.sigma_crossings = rev.sigma_crossings;
    return r;
}

DualRotation rotation_both(Point3 p, const Params& params, bool with_f, double tol)
{
    const Revolution rev = revolve(p, params, tol);
    DualRotation d;
    d.T = rev.T;
    const Point3 fp = map_f(p, params);
    if (with_f)
        d.tau_F = flight_time(rev, fp, params);
    d.tau_F2 = flight_time(rev, map_f(fp, params), params);
    return d;
}

double rotation_number_oracle(Point3 p, const Params& params, int power, int iters, double tol)
{
    require_power(power);
    if (iters < 1000)
        throw DomainError("rotation_number_oracle: iters must be at least 1000");
    const Revolution rev = revolve(p, params, tol);

    constexpr int n = 720;
    Eigen::Matrix<double, 3, Eigen::Dynamic> pts(3, n);
    for (int i = 0; i < n; ++i)
        pts.col(i) = rev.engine->at(rev.T * i / n);
    const Eigen::Vector3d c = pts.rowwise().mean();
    const Eigen::Matrix<double, 3, Eigen::Dynamic> centered = pts.colwise() - c;
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(centered * centered.transpose() / n);
    // Eigenvalues ascending: column 0 is the plane normal.
    if (!(eig.eigenvalues()[1] > 1e-10 * eig.eigenvalues()[2]))
        throw DegenerateCircleError("degenerate plane");
    const Eigen::Vector3d e1 = eig.eigenvectors().col(2);
    Eigen::Vector3d e2 = eig.eigenvectors().col(1);

    const auto wrap = [](double d) { return std::remainder(d, 2 * std::numbers::pi); };
    auto angle = [&](const Eigen::Vector3d& q) {
        const Eigen::Vector3d v = q - c;
        return std::atan2(v.dot(e2), v.dot(e1));
    };

    // Orient the plane so the flow runs counterclockwise.
    double turn = 0.0;
    for (int i = 0; i < n; ++i)
        turn += wrap(angle(pts.col((i + 1) % n)) - angle(pts.col(i)));
    if (turn < 0)
        e2 = -e2;

    double total = 0.0;
    Point3 q = p;
    double prev = angle(q.vec());
    for (int i = 0; i < iters; ++i) {
        q = map_f_iter(q, params, power);
        const double th = angle(q.vec());
        total += wrap(th - prev);
        prev = th;
    }
    double r = total / (2 * std::numbers::pi * iters);
    r -= std::floor(r);
    return r;
}

double distance_to_L(Point3 p, const Params& params)
{
    require_octant(p, "distance_to_L");
    const double a = params.a();
    // Parametrize by u = log(x - 1) so both ends of L are reachable.
    const auto d2 = [&](double u) {
        const double x = 1.0 + std::exp(u);
        const double y = (x + a) / std::exp(u);
        return (x - p.x) * (x - p.x) + (y - p.y) * (y - p.y) + (x - p.z) * (x - p.z);
    };
    const double u_lo = -30.0;
    const double u_hi = std::log(1e3 * (1.0 + norm2(p) + a));
    constexpr int grid = 400;
    int best = 0;
    double best_v = d2(u_lo);
    for (int i = 1; i <= grid; ++i) {
        const double v = d2(u_lo + (u_hi - u_lo) * i / grid);
        if (v < best_v) {
            best_v = v;
            best = i;
        }
    }
    const double step = (u_hi - u_lo) / grid;
    const double lo = u_lo + step * std::max(best - 1, 0);
    const double hi = u_lo + step * std::min(best + 1, grid);
    const auto r = boost::math::tools::brent_find_minima(d2, lo, hi, 40);
    return std::sqrt(std::min(r.second, best_v));
}

}  // namespace lyness
