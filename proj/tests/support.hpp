#pragma once

#include "lyness/core.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace testing {

// Log-uniform points of the positive octant, reproducible per seed.
inline std::vector<lyness::Point3> random_points(int n, unsigned seed, double lo = 0.05,
                                                 double hi = 20.0)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    std::vector<lyness::Point3> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i)
        out.push_back({std::exp(u(rng)), std::exp(u(rng)), std::exp(u(rng))});
    return out;
}

inline double rel(double got, double want)
{
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace testing
