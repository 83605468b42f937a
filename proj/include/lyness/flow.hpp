#pragma once

#include "lyness/core.hpp"
#include "lyness/integrator.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lyness {

constexpr double default_tol = 1e-12;

Eigen::Vector3d vector_field(Point3 p, const Params& params);

class Trajectory {
public:
    Trajectory(std::shared_ptr<const DormandPrince> engine, double tol);

    std::size_t size() const { return engine_->samples().size(); }
    double t(std::size_t i) const { return engine_->samples()[i].t; }
    Point3 state(std::size_t i) const { return Point3::from(engine_->samples()[i].y); }
    double t_end() const { return engine_->samples().back().t; }
    double tol() const { return tol_; }
    static constexpr const char* method = "Dormand-Prince 5(4)";

    // Solution at any t in [0, t_end()].
    Point3 at(double t) const;

private:
    std::shared_ptr<const DormandPrince> engine_;
    double tol_;
};

Trajectory integrate(Point3 p, const Params& params, double t_end, double tol = default_tol);

struct RotationRecord {
    double T = 0.0;
    double tau = 0.0;
    double rho = 0.0;
    int power = 2;
    int sigma_crossings = 0;  // crossings of {z = x} during one period, diagnostic only
};

double period(Point3 p, const Params& params, double tol = default_tol);
double time_to_image(Point3 p, const Params& params, int power, double tol = default_tol);
RotationRecord rotation_number(Point3 p, const Params& params, int power,
                               double tol = default_tol);

// T together with the flight times to F(p) and F^2(p); tau_F is empty off G.
struct DualRotation {
    double T = 0.0;
    std::optional<double> tau_F;
    double tau_F2 = 0.0;
};
DualRotation rotation_both(Point3 p, const Params& params, bool with_f, double tol = default_tol);

// Winding estimate of the rotation number by projecting iterates onto the circle's best-fit plane.
double rotation_number_oracle(Point3 p, const Params& params, int power, int iters,
                              double tol = default_tol);

// Distance from p to the curve of 2-periodic points.
double distance_to_L(Point3 p, const Params& params);

enum class PathKind { on_G, on_level };

struct PathSpec {
    PathKind kind = PathKind::on_G;
    std::vector<double> ts;
};

struct TableRow {
    double t = 0.0;
    Point3 p;
    std::optional<double> T;
    std::optional<double> tau;  // tau_F on G paths, tau_F2 on level paths
    std::optional<double> rho_F;
    std::optional<double> rho_F2;
    std::string flag = "ok";
};

struct LevelPath {
    double k = 0.0;       // V1 level shared by all points
    double x0 = 0.0;      // start abscissa x_c + 9
    double x1 = 0.0;      // 2-periodic endpoint abscissa
    bool minus_branch = true;
};

LevelPath level_path(const Params& params);
Point3 path_point(PathKind kind, double t, const Params& params);

std::vector<TableRow> scan_path(const PathSpec& path, const Params& params, int threads = 1,
                                double tol = default_tol);

}  // namespace lyness
