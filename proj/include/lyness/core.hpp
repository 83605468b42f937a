#pragma once

#include <Eigen/Core>

#include <cmath>

namespace lyness {

class Params {
public:
    explicit Params(double a);
    double a() const noexcept { return a_; }

private:
    double a_;
};

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Eigen::Vector3d vec() const { return {x, y, z}; }
    static Point3 from(const Eigen::Vector3d& v) { return {v[0], v[1], v[2]}; }

    friend Point3 operator+(Point3 p, Point3 q) { return {p.x + q.x, p.y + q.y, p.z + q.z}; }
    friend Point3 operator-(Point3 p, Point3 q) { return {p.x - q.x, p.y - q.y, p.z - q.z}; }
    friend Point3 operator*(double s, Point3 p) { return {s * p.x, s * p.y, s * p.z}; }
    friend bool operator==(const Point3&, const Point3&) = default;
};

inline double norm1(Point3 p) { return std::abs(p.x) + std::abs(p.y) + std::abs(p.z); }
inline double norm2(Point3 p) { return std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z); }
inline double dot(Point3 p, Point3 q) { return p.x * q.x + p.y * q.y + p.z * q.z; }

bool in_octant(Point3 p);
// Throws DomainError unless p lies in O+.
void require_octant(Point3 p, const char* who);

struct LevelPair {
    double k = 0.0;
    double h = 0.0;
};

struct CriticalData {
    double x_c = 0.0;
    double k_c = 0.0;
    double h_c = 0.0;
    double rho_fixed_limit = 0.0;
    double rho_a = 0.0;
};

enum class Region { positive, negative, on_surface };

Point3 map_f(Point3 p, const Params& params);
Point3 map_f_iter(Point3 p, const Params& params, int n);
Eigen::Matrix3d jacobian_f(Point3 p, const Params& params);

double v1(Point3 p, const Params& params);
double v2(Point3 p, const Params& params);
LevelPair invariants(Point3 p, const Params& params);

double g_value(Point3 p, const Params& params);
Region classify_region(Point3 p, const Params& params);

double fixed_coordinate(const Params& params);
Point3 fixed_point(const Params& params);
CriticalData critical_values(const Params& params);

Point3 l_point(double x, const Params& params);
double v1_on_L(double x, const Params& params);

struct TwoPeriodicPair {
    double x_low = 0.0;
    double x_high = 0.0;
};
TwoPeriodicPair two_periodic_points_at_level(double k, const Params& params);

double rho_limit_fixed(const Params& params);
double rho_limit_two_periodic(double x_h, const Params& params);
double rho_a(const Params& params);

}  // namespace lyness
