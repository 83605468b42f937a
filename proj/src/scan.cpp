#include "lyness/errors.hpp"
#include "lyness/flow.hpp"
#include "lyness/geometry.hpp"

#include <atomic>
#include <thread>

namespace lyness {

namespace {

constexpr double path_offset = 9.0;  // both level paths start at x_c + 9 on G

double pick_branch(const BranchResult& br, bool minus)
{
    double delta = br.delta;
    // At the 2-periodic endpoint delta is zero up to rounding.
    if (delta < 0 && delta > -1e-8 * br.alpha * br.alpha)
        delta = 0;
    if (delta < 0)
        throw DomainError("level path left the real part of the level surface");
    const double s = std::sqrt(delta);
    return (br.alpha + (minus ? -s : s)) / br.beta;
}

Point3 on_g_point(double x, const Params& params)
{
    const double y = (params.a() + x) / (x - 1);
    return {x, y, g_surface_height(x, y, params)};
}

TableRow compute_row(PathKind kind, double t, const Params& params, const LevelPath* lp,
                     double tol)
{
    TableRow row;
    row.t = t;
    try {
        if (kind == PathKind::on_G) {
            row.p = on_g_point(fixed_coordinate(params) + t, params);
        } else {
            const double x = lp->x0 * (1 - t) + t * lp->x1;
            const double y = (params.a() + x) / (x - 1);
            row.p = {x, y, pick_branch(z_branches_level1(x, y, params, lp->k), lp->minus_branch)};
        }
        const DualRotation d = rotation_both(row.p, params, kind == PathKind::on_G, tol);
        row.T = d.T;
        row.rho_F2 = d.tau_F2 / d.T;
        if (kind == PathKind::on_G) {
            row.tau = *d.tau_F;
            row.rho_F = *d.tau_F / d.T;
        } else {
            row.tau = d.tau_F2;
        }
    } catch (const StationaryPointError&) {
        row.flag = "limit";
    } catch (const DegenerateCircleError&) {
        row.flag = "limit";
    } catch (const Error& e) {
        row.flag = std::string("error:") + e.what();
    }
    if (row.flag == "limit") {
        row.T.reset();
        row.tau.reset();
        if (kind == PathKind::on_G) {
            row.rho_F = rho_limit_fixed(params);
            row.rho_F2 = 2 * *row.rho_F;
        } else {
            row.rho_F2 = rho_limit_two_periodic(lp->x1, params);
        }
    }
    return row;
}

}  // namespace

LevelPath level_path(const Params& params)
{
    LevelPath lp;
    lp.x0 = fixed_coordinate(params) + path_offset;
    const Point3 p0 = on_g_point(lp.x0, params);
    lp.k = v1(p0, params);
    lp.x1 = two_periodic_points_at_level(lp.k, params).x_low;
    const BranchResult br = z_branches_level1(p0.x, p0.y, params, lp.k);
    lp.minus_branch = !br.z_plus || !br.z_minus ||
                      std::abs(*br.z_minus - p0.z) <= std::abs(*br.z_plus - p0.z);
    return lp;
}

Point3 path_point(PathKind kind, double t, const Params& params)
{
    if (kind == PathKind::on_G)
        return on_g_point(fixed_coordinate(params) + t, params);
    const LevelPath lp = level_path(params);
    const double x = lp.x0 * (1 - t) + t * lp.x1;
    const double y = (params.a() + x) / (x - 1);
    return {x, y, pick_branch(z_branches_level1(x, y, params, lp.k), lp.minus_branch)};
}

std::vector<TableRow> scan_path(const PathSpec& path, const Params& params, int threads,
                                double tol)
{
    std::vector<TableRow> rows(path.ts.size());
    if (rows.empty())
        return rows;
    std::optional<LevelPath> lp;
    if (path.kind == PathKind::on_level)
        lp = level_path(params);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < rows.size(); i = next++)
            rows[i] = compute_row(path.kind, path.ts[i], params, lp ? &*lp : nullptr, tol);
    };
    const int n = std::clamp(threads, 1, static_cast<int>(rows.size()));
    std::vector<std::thread> pool;
    for (int i = 1; i < n; ++i)
        pool.emplace_back(worker);
    worker();
    for (auto& th : pool)
        th.join();
    return rows;
}

}  // namespace lyness
