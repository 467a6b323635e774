#include "plume/rollout.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "plume/errors.hpp"

namespace plume {

void RolloutConfig::validate() const {
    if (!(safety > 0.0) || safety > 1.0) throw ConfigError("safety must be in (0,1]");
    if (max_substeps < 1) throw ConfigError("max_substeps must be at least 1");
    if (eps_visc < 0.0) throw ConfigError("eps_visc must be non-negative");
}

namespace {

inline int mirror(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

}  // namespace

void pde_rhs(std::span<const double> u, const SparseModel& model, double vx, double vy,
             const Grid& grid, double eps_visc, std::span<double> dudt) {
    const int nx = grid.nx, ny = grid.ny;
    const double inv_dx = 1.0 / grid.dx, inv_dy = 1.0 / grid.dy;
    const double inv_dx2 = inv_dx * inv_dx, inv_dy2 = inv_dy * inv_dy;

    const double c0 = model.coefficient(FeatureKind::Const);
    const double c1 = model.coefficient(FeatureKind::U);
    const double c2 = model.coefficient(FeatureKind::U2);
    const double cg = model.coefficient(FeatureKind::GradSq);
    const double cug = model.coefficient(FeatureKind::UGradSq);
    const double beta = model.coefficient(FeatureKind::Lap) + eps_visc;
    const double ax = model.cx * vx;
    const double ay = model.cy * vy;

#pragma omp parallel for schedule(static) if (ny >= 64)
    for (int j = 0; j < ny; ++j) {
        const double* row = u.data() + static_cast<std::size_t>(j) * nx;
        const double* rowN = u.data() + static_cast<std::size_t>(mirror(j - 1, ny)) * nx;
        const double* rowS = u.data() + static_cast<std::size_t>(mirror(j + 1, ny)) * nx;
        double* out = dudt.data() + static_cast<std::size_t>(j) * nx;
        for (int i = 0; i < nx; ++i) {
            const double uc = row[i];
            const double uw = row[mirror(i - 1, nx)];
            const double ue = row[mirror(i + 1, nx)];
            const double un = rowN[i];
            const double us = rowS[i];

            const double ux = 0.5 * (ue - uw) * inv_dx;
            const double uy = 0.5 * (us - un) * inv_dy;
            const double lap = (ue - 2.0 * uc + uw) * inv_dx2 + (us - 2.0 * uc + un) * inv_dy2;
            const double gradsq = ux * ux + uy * uy;

            double rhs = c0 + uc * (c1 + c2 * uc) + (cg + cug * uc) * gradsq + beta * lap;
            if (ax != 0.0) {
                rhs -= ax * (ax > 0.0 ? (uc - uw) * inv_dx : (ue - uc) * inv_dx);
            }
            if (ay != 0.0) {
                rhs -= ay * (ay > 0.0 ? (uc - un) * inv_dy : (us - uc) * inv_dy);
            }
            out[i] = rhs;
        }
    }
}

StepInfo step_interval(std::span<double> u, const SparseModel& model, double vx, double vy,
                       const Grid& grid, const RolloutConfig& cfg, double dt, int frame_index) {
    cfg.validate();
    if (!(dt > 0.0)) throw ConfigError("frame interval must be positive");

    const double h = std::min(grid.dx, grid.dy);
    const double beta_eff = std::max(model.coefficient(FeatureKind::Lap), 0.0) + cfg.eps_visc;
    const double a_eff = std::abs(model.coefficient(FeatureKind::GradSq)) +
                         std::abs(model.coefficient(FeatureKind::UGradSq));

    // frozen-coefficient gradient magnitude from the starting frame
    double grad_max = 0.0;
    {
        const int nx = grid.nx, ny = grid.ny;
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) {
                const double ux = 0.5 *
                                  (u[static_cast<std::size_t>(j) * nx + mirror(i + 1, nx)] -
                                   u[static_cast<std::size_t>(j) * nx + mirror(i - 1, nx)]) /
                                  grid.dx;
                const double uy = 0.5 *
                                  (u[static_cast<std::size_t>(mirror(j + 1, ny)) * nx + i] -
                                   u[static_cast<std::size_t>(mirror(j - 1, ny)) * nx + i]) /
                                  grid.dy;
                grad_max = std::max(grad_max, std::sqrt(ux * ux + uy * uy));
            }
        }
    }
    const double v_mag = std::hypot(model.cx * vx, model.cy * vy);
    constexpr double tiny = 1e-30;
    const double diffusive = h * h / (4.0 * (beta_eff + cfg.eps_visc) + tiny);
    const double advective = h / (v_mag + a_eff * grad_max + tiny);
    const double dt_stable = cfg.safety * std::min(diffusive, advective);

    StepInfo info;
    const double raw = std::ceil(dt / dt_stable);
    info.capped = raw > static_cast<double>(cfg.max_substeps);
    info.substeps = info.capped ? cfg.max_substeps : std::max(1, static_cast<int>(raw));

    const double dt_sub = dt / info.substeps;
    std::vector<double> rhs(u.size());
    for (int s = 0; s < info.substeps; ++s) {
        pde_rhs(u, model, vx, vy, grid, cfg.eps_visc, rhs);
        bool finite = true;
#pragma omp parallel for schedule(static) reduction(&& : finite) if (grid.ny >= 64)
        for (int j = 0; j < grid.ny; ++j) {
            double* row = u.data() + static_cast<std::size_t>(j) * grid.nx;
            const double* r = rhs.data() + static_cast<std::size_t>(j) * grid.nx;
            for (int i = 0; i < grid.nx; ++i) {
                double next = row[i] + dt_sub * r[i];
                if (cfg.clip_enabled) next = std::clamp(next, 0.0, 1.0);
                finite = finite && std::isfinite(next);
                row[i] = next;
            }
        }
        if (!finite) throw RolloutBlowup(frame_index, s);
    }
    return info;
}

namespace {

FieldSeries rollout_impl(const FieldSeries& observed, FrameWindow window,
                         const SparseModel& model, const DriftSeries& drift,
                         const RolloutConfig& cfg, bool one_step) {
    const Grid& g = observed.grid();
    if (window.begin < 0 || window.end > g.nt || window.size() < 2) {
        throw DataError("rollout window must hold at least 2 frames");
    }
    if (drift.size() != g.nt) throw DataError("drift length does not match frame count");
    model.validate();

    Grid out_grid = g;
    out_grid.nt = window.size();
    FieldSeries pred(out_grid);

    const auto first = observed.frame(window.begin);
    std::copy(first.begin(), first.end(), pred.frame(0).begin());

    std::vector<double> state(first.begin(), first.end());
    for (int k = 0; k < window.size() - 1; ++k) {
        const int abs_k = window.begin + k;
        if (one_step) {
            const auto obs = observed.frame(abs_k);
            state.assign(obs.begin(), obs.end());
        }
        step_interval(state, model, drift.vx[abs_k], drift.vy[abs_k], g, cfg, g.dt, abs_k);
        std::copy(state.begin(), state.end(), pred.frame(k + 1).begin());
    }
    return pred;
}

}  // namespace

FieldSeries rollout_full(const FieldSeries& observed, FrameWindow window,
                         const SparseModel& model, const DriftSeries& drift,
                         const RolloutConfig& cfg) {
    return rollout_impl(observed, window, model, drift, cfg, false);
}

FieldSeries rollout_one_step(const FieldSeries& observed, FrameWindow window,
                             const SparseModel& model, const DriftSeries& drift,
                             const RolloutConfig& cfg) {
    return rollout_impl(observed, window, model, drift, cfg, true);
}

}  // namespace plume
