#pragma once

#include <Eigen/Core>

#include <functional>
#include <vector>

namespace lyness {

using Rhs = std::function<Eigen::Vector3d(const Eigen::Vector3d&)>;

struct StepSample {
    double t = 0.0;
    Eigen::Vector3d y;
    double h_next = 0.0;  // step size proposed after this sample
};

// Dormand-Prince 5(4) with a mixed absolute/relative max-norm error test.
// Samples are kept so the solution can be re-evaluated anywhere on the span.
class DormandPrince {
public:
    DormandPrince(Rhs rhs, double tol);

    // Single step of size h from y; writes the 5th order result and returns the error norm.
    double step(const Eigen::Vector3d& y, double h, Eigen::Vector3d& out) const;

    // Advance from (t0, y0) until t_end, or until stop(t, y) returns true after an accepted step.
    // Throws IntegrationError on step underflow or when keep(y) fails.
    void run(double t0, const Eigen::Vector3d& y0, double t_end,
             const std::function<bool(double, const Eigen::Vector3d&)>& stop,
             const std::function<bool(const Eigen::Vector3d&)>& keep);

    const std::vector<StepSample>& samples() const { return samples_; }
    double tol() const { return tol_; }

    // Solution at t inside the covered span: one step from the nearest sample at or before t.
    Eigen::Vector3d at(double t) const;

private:
    Rhs rhs_;
    double tol_;
    std::vector<StepSample> samples_;
};

}  // namespace lyness
