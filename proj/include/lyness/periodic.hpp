#pragma once

#include "lyness/core.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace lyness {

struct PeriodicOrbit {
    Point3 point;
    int n = 0;
    double residual_l1 = 0.0;
    bool converged = false;
    int iterations = 0;
    std::optional<double> rho_check;
    int rho_power = 1;  // power of F used for rho_check
};

struct SenarWitness {
    double c = 0.0;
    double a_star = 0.0;
    Point3 q;
};

// |F^n(p) - p|_1
double residual_norm(Point3 p, int n, const Params& params);

// F^n and its Jacobian, chained through jacobian_f.
std::pair<Point3, Eigen::Matrix3d> map_f_iter_jacobian(Point3 p, const Params& params, int n);

PeriodicOrbit newton_refine(Point3 p0, int n, const Params& params, double tol = 1e-12);

// Adds rho_check from the flow: power 1 on G for odd n, power 2 otherwise.
void attach_rho_check(PeriodicOrbit& orbit, const Params& params);

std::vector<std::pair<long long, double>> sensitivity_probe(Point3 p, int base_n, int max_exponent,
                                                            const Params& params);

SenarWitness senar_witness();

}  // namespace lyness
