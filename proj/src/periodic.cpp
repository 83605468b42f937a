#include "lyness/periodic.hpp"
#include "lyness/errors.hpp"
#include "lyness/flow.hpp"
#include "lyness/geometry.hpp"

#include <Eigen/SVD>

#include <numbers>

namespace lyness {

double residual_norm(Point3 p, int n, const Params& params)
{
    return norm1(map_f_iter(p, params, n) - p);
}

std::pair<Point3, Eigen::Matrix3d> map_f_iter_jacobian(Point3 p, const Params& params, int n)
{
    if (n < 1)
        throw DomainError("map_f_iter_jacobian: n must be positive");
    Eigen::Matrix3d j = Eigen::Matrix3d::Identity();
    for (int i = 0; i < n; ++i) {
        j = jacobian_f(p, params) * j;
        p = map_f(p, params);
    }
    return {p, j};
}

PeriodicOrbit newton_refine(Point3 p0, int n, const Params& params, double tol)
{
    if (n < 2)
        throw DomainError("newton_refine: n must be at least 2");
    require_octant(p0, "newton_refine");

    // Odd periods live on G, so odd-n seeds are projected onto it first.
    Point3 p = p0;
    if (n % 2 == 1)
        p.z = g_surface_height(p.x, p.y, params);

    auto [q, j] = map_f_iter_jacobian(p, params, n);
    Eigen::Vector3d r = (q - p).vec();
    double res = r.lpNorm<1>();

    PeriodicOrbit out;
    out.n = n;
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(j - Eigen::Matrix3d::Identity(),
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
    double lambda = 1e-3 * svd.singularValues()[0] * svd.singularValues()[0];

    int it = 0;
    bool stalled = false;
    for (; it < 100 && res >= tol && !stalled; ++it) {
        svd.compute(j - Eigen::Matrix3d::Identity(), Eigen::ComputeFullU | Eigen::ComputeFullV);
        const Eigen::Vector3d s = svd.singularValues();
        const Eigen::Vector3d ur = svd.matrixU().transpose() * r;
        for (;;) {
            // Levenberg-Marquardt filter on the truncated SVD.
            Eigen::Vector3d c = Eigen::Vector3d::Zero();
            for (int i = 0; i < 3; ++i)
                if (s[i] > 1e-8 * s[0])
                    c[i] = s[i] / (s[i] * s[i] + lambda) * ur[i];
            const Point3 cand = p - Point3::from(svd.matrixV() * c);
            if (in_octant(cand)) {
                try {
                    auto [qn, jn] = map_f_iter_jacobian(cand, params, n);
                    const Eigen::Vector3d rn = (qn - cand).vec();
                    const double resn = rn.lpNorm<1>();
                    if (resn < res) {
                        p = cand;
                        j = jn;
                        r = rn;
                        res = resn;
                        lambda = std::max(lambda * 0.1, 1e-30);
                        break;
                    }
                } catch (const DomainError&) {
                }
            }
            lambda *= 10;
            if (lambda > 1e10) {
                stalled = true;
                break;
            }
        }
    }
    out.point = p;
    out.residual_l1 = res;
    out.iterations = it;
    out.converged = res < tol;
    return out;
}

void attach_rho_check(PeriodicOrbit& orbit, const Params& params)
{
    const bool odd = orbit.n % 2 == 1;
    orbit.rho_power = odd ? 1 : 2;
    orbit.rho_check = rotation_number(orbit.point, params, orbit.rho_power).rho;
}

std::vector<std::pair<long long, double>> sensitivity_probe(Point3 p, int base_n, int max_exponent,
                                                            const Params& params)
{
    if (base_n < 1 || max_exponent < 1)
        throw DomainError("sensitivity_probe: base_n and max_exponent must be positive");
    std::vector<std::pair<long long, double>> out;
    long long total = base_n;
    for (int j = 1; j <= max_exponent; ++j) {
        total *= 10;
        Point3 q;
        try {
            q = map_f_iter(p, params, static_cast<int>(total));
        } catch (const DomainError&) {
            throw DomainError("sensitivity_probe: iteration escaped at j=" + std::to_string(j));
        }
        out.emplace_back(total, norm1(q - p));
    }
    return out;
}

SenarWitness senar_witness()
{
    SenarWitness w;
    w.c = std::cos(2 * std::numbers::pi / 7);
    const double c = w.c;
    w.a_star = (3 - 4 * c) / ((2 * c - 1) * (2 * c - 1));
    w.q = {1.0, 1.0, std::sqrt(8 * c * c - 12 * c + 5) / (2 * c - 1)};
    const Params params(w.a_star);
    if (std::abs(g_value(w.q, params)) > 1e-10)
        throw ConvergenceError("senar witness: q is not on G");
    if (std::abs(rho_limit_fixed(params) - 1.0 / 7) > 1e-12)
        throw ConvergenceError("senar witness: fixed-point rotation limit is not 1/7");
    return w;
}

}  // namespace lyness
