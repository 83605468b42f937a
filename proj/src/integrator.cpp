#include "lyness/integrator.hpp"
#include "lyness/errors.hpp"

#include <algorithm>
#include <cmath>

namespace lyness {

namespace {

constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - b* for the embedded 4th order solution
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                 e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

}  // namespace

DormandPrince::DormandPrince(Rhs rhs, double tol) : rhs_(std::move(rhs)), tol_(tol) {}

double DormandPrince::step(const Eigen::Vector3d& y, double h, Eigen::Vector3d& out) const
{
    using V = Eigen::Vector3d;
    const V k1 = rhs_(y);
    const V k2 = rhs_(y + h * (a21 * k1));
    const V k3 = rhs_(y + h * (a31 * k1 + a32 * k2));
    const V k4 = rhs_(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const V k5 = rhs_(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const V k6 = rhs_(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    out = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const V k7 = rhs_(out);
    const V err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double norm = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double scale = tol_ * (1.0 + std::max(std::abs(y[i]), std::abs(out[i])));
        norm = std::max(norm, std::abs(err[i]) / scale);
    }
    if (!out.allFinite())
        return INFINITY;
    return norm;
}

void DormandPrince::run(double t0, const Eigen::Vector3d& y0, double t_end,
                        const std::function<bool(double, const Eigen::Vector3d&)>& stop,
                        const std::function<bool(const Eigen::Vector3d&)>& keep)
{
    samples_.clear();
    double t = t0;
    Eigen::Vector3d y = y0;

    // Initial step from the local time scale |y| / |f(y)|.
    const double fn = rhs_(y).norm();
    double h = fn > 0 ? 1e-3 * (1.0 + y.norm()) / fn : 1e-3;
    h = std::min(h, t_end - t0);
    samples_.push_back({t, y, h});

    Eigen::Vector3d next;
    bool escaped = false;
    while (t < t_end) {
        h = std::min(h, t_end - t);
        const double err = step(y, h, next);
        escaped = err <= 1.0 && !keep(next);
        if (err <= 1.0 && !escaped) {
            t += h;
            y = next;
            const double fac = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
            h *= std::clamp(fac, 0.2, 5.0);
            samples_.push_back({t, y, h});
            if (stop && stop(t, y))
                return;
        } else {
            const double fac = std::isfinite(err) && err > 1.0 ? 0.9 * std::pow(err, -0.25) : 0.2;
            h *= std::clamp(fac, 0.1, 0.5);
            if (h < 1e-14 * std::max(1.0, std::abs(t)))
                throw IntegrationError(escaped ? "trajectory left the positive octant"
                                               : "step size underflow",
                                       t);
        }
    }
}

Eigen::Vector3d DormandPrince::at(double t) const
{
    if (samples_.empty())
        throw IntegrationError("no trajectory", t);
    auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                               [](double v, const StepSample& s) { return v < s.t; });
    if (it != samples_.begin())
        --it;
    const double dt = t - it->t;
    if (dt == 0.0)
        return it->y;
    Eigen::Vector3d out;
    step(it->y, dt, out);
    return out;
}

}  // namespace lyness
