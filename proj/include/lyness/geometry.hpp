#pragma once

#include "lyness/core.hpp"

#include <optional>

namespace lyness {

// Level sets of V1 and V2 written as two graphs z = (alpha +- sqrt(delta)) / beta.
struct BranchResult {
    double alpha = 0.0;
    double beta = 0.0;
    double delta = 0.0;
    std::optional<double> z_minus;
    std::optional<double> z_plus;
};

BranchResult z_branches_level1(double x, double y, const Params& params, double k);
BranchResult z_branches_level2(double x, double y, const Params& params, double h);

// Positive root z of G(x, y, z) = 0.
double g_surface_height(double x, double y, const Params& params);

struct BranchLevels {
    double m_minus = 0.0;
    double m_plus = 0.0;
};

BranchLevels branch_levels_v1(double x, double y, const Params& params);
BranchLevels branch_levels_v2(double x, double y, const Params& params);

enum class ExtremumSource { on_L, on_G };

const char* to_string(ExtremumSource s);

struct KRange {
    double k1 = 0.0;
    double k2 = 0.0;
    ExtremumSource k1_source = ExtremumSource::on_L;
    ExtremumSource k2_source = ExtremumSource::on_G;
    Point3 l_point;  // M_h meets L here
    Point3 g_point;  // M_h meets G and {z = x} here
};

KRange k_range(double h, const Params& params);

}  // namespace lyness
