#include "plume/calibration.hpp"

#include <algorithm>
#include <cmath>

#include "plume/errors.hpp"

namespace plume {

std::string_view structure_label(ModelStructure s) {
    return s == ModelStructure::C ? "C" : "C-alt";
}

ModelStructure structure_from_label(std::string_view label) {
    if (label == "C") return ModelStructure::C;
    if (label == "C-alt") return ModelStructure::CAlt;
    throw ConfigError("unknown structure: " + std::string(label) + " (expected C or C-alt)");
}

SparseModel make_structure_model(ModelStructure s, double a, double beta) {
    SparseModel m;
    m.library_id = std::string(structure_label(s));
    m.mode = AdvectionMode::Measured;
    m.set_coefficient(s == ModelStructure::C ? FeatureKind::GradSq : FeatureKind::UGradSq, a);
    m.set_coefficient(FeatureKind::Lap, beta);
    return m;
}

std::string_view init_source_label(InitSource s) {
    return s == InitSource::Weak ? "weak" : "refined";
}

namespace {

struct Subsample {
    std::size_t stride = 1;
    std::size_t offset = 0;
};

Subsample make_subsample(std::size_t total, std::size_t max_points, std::uint64_t seed) {
    Subsample s;
    if (max_points > 0 && total > max_points) {
        s.stride = (total + max_points - 1) / max_points;
        s.offset = seed % s.stride;
    }
    return s;
}

}  // namespace

double rollout_mse_objective(std::array<double, 2> theta, const FieldSeries& field,
                             FrameWindow train, const DriftSeries& drift,
                             const BootstrapIndices& resample, ModelStructure structure,
                             const RolloutConfig& rollout_cfg, std::size_t max_points,
                             std::uint64_t subsample_seed) {
    if (!std::isfinite(theta[0]) || !std::isfinite(theta[1])) {
        return std::numeric_limits<double>::infinity();
    }
    const Grid& g = field.grid();
    const std::size_t cells = g.cells_per_frame();
    const int n = static_cast<int>(resample.indices.size());
    const Subsample sub = make_subsample(static_cast<std::size_t>(n) * cells, max_points,
                                         subsample_seed);

    const SparseModel model = make_structure_model(structure, theta[0], theta[1]);
    std::vector<double> state(cells);

    double sum_sq = 0.0;
    std::size_t count = 0;
    auto accumulate = [&](int pos, const double* pred) {
        const auto obs = field.frame(train.begin + resample.indices[pos]);
        const std::size_t flat0 = static_cast<std::size_t>(pos) * cells;
        // first subsampled cell of this frame
        std::size_t q = (sub.offset + sub.stride - flat0 % sub.stride) % sub.stride;
        for (; q < cells; q += sub.stride) {
            const double d = pred[q] - obs[q];
            sum_sq += d * d;
            ++count;
        }
    };

    try {
        std::size_t next_block = 0;
        for (int pos = 0; pos < n; ++pos) {
            if (next_block < resample.block_starts.size() &&
                resample.block_starts[next_block] == pos) {
                // re-initialize at each block seam
                const auto obs = field.frame(train.begin + resample.indices[pos]);
                std::copy(obs.begin(), obs.end(), state.begin());
                ++next_block;
            } else {
                const int prev_frame = train.begin + resample.indices[pos - 1];
                step_interval(state, model, drift.vx[prev_frame], drift.vy[prev_frame], g,
                              rollout_cfg, g.dt, prev_frame);
            }
            accumulate(pos, state.data());
        }
    } catch (const RolloutBlowup&) {
        return std::numeric_limits<double>::infinity();
    }
    return count == 0 ? 0.0 : sum_sq / static_cast<double>(count);
}

namespace {

double quantile_type7(std::vector<double> sorted, double q) {
    if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double f = pos - static_cast<double>(lo);
    return (1.0 - f) * sorted[lo] + f * sorted[hi];
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    return quantile_type7(values, 0.5);
}

}  // namespace

CalibrationResult bootstrap_calibrate(const FieldSeries& field, const DriftSeries& drift,
                                      const SplitWindows& split, ModelStructure structure,
                                      InitSource init_source, std::array<double, 2> theta0,
                                      const BootstrapConfig& cfg) {
    if (cfg.replicates < 1) throw ConfigError("bootstrap needs at least one replicate");
    const int n_tr = split.train.size();
    const int block_len = cfg.block_length > 0 ? cfg.block_length : default_block_length(n_tr);
    if (block_len < 1 || block_len > n_tr) {
        throw ConfigError("block_length must lie in [1, n_tr]");
    }

    CalibrationResult result;
    result.structure = structure;
    result.init_source = init_source;
    result.init_a = theta0[0];
    result.init_beta = theta0[1];
    result.attempted = cfg.replicates;

    const RolloutConfig fit_cfg = cfg.fit_rollout();
    NelderMeadConfig nm;
    nm.max_iter = cfg.max_nm_iter;

    std::vector<ReplicateSample> all(cfg.replicates);
    std::vector<char> usable(cfg.replicates, 0);

#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < cfg.replicates; ++r) {
        const std::uint64_t seed = cfg.rng_seed + static_cast<std::uint64_t>(r) + 1;
        const BootstrapIndices resample = block_bootstrap_indices(n_tr, block_len, seed);

        auto objective = [&](std::span<const double> th) {
            return rollout_mse_objective({th[0], th[1]}, field, split.train, drift, resample,
                                         structure, fit_cfg, cfg.max_objective_points, seed);
        };
        const NelderMeadResult nm_result =
            nelder_mead_minimize(objective, std::span<const double>(theta0), nm);

        ReplicateSample s;
        s.replicate = r;
        s.a = nm_result.theta[0];
        s.beta = nm_result.theta[1];
        s.objective = nm_result.value;
        s.converged = nm_result.converged && std::isfinite(nm_result.value);
        s.iterations = nm_result.iterations;
        all[r] = s;
        usable[r] = std::isfinite(nm_result.value) ? 1 : 0;
    }

    for (int r = 0; r < cfg.replicates; ++r) {
        if (usable[r]) result.samples.push_back(all[r]);
        if (all[r].converged) ++result.converged_count;
    }
    if (result.samples.empty()) {
        throw NumericalError("every bootstrap replicate ended with a non-finite objective");
    }

    std::vector<double> as, bs, js;
    for (const auto& s : result.samples) {
        as.push_back(s.a);
        bs.push_back(s.beta);
        js.push_back(s.objective);
    }
    result.median_a = median_of(as);
    result.median_beta = median_of(bs);
    result.median_train_mse = median_of(js);
    std::sort(as.begin(), as.end());
    std::sort(bs.begin(), bs.end());
    result.interval_a = {quantile_type7(as, 0.025), quantile_type7(as, 0.975)};
    result.interval_beta = {quantile_type7(bs, 0.025), quantile_type7(bs, 0.975)};

    result.median_model = make_structure_model(structure, result.median_a, result.median_beta);
    const FieldSeries val_pred =
        rollout_full(field, split.validation, result.median_model, drift, RolloutConfig{});
    Grid val_grid = field.grid();
    val_grid.nt = split.validation.size();
    FieldSeries val_obs(val_grid);
    for (int k = 0; k < split.validation.size(); ++k) {
        const auto f = field.frame(split.validation.begin + k);
        std::copy(f.begin(), f.end(), val_obs.frame(k).begin());
    }
    result.validation_rrmse = rrmse_percent(val_pred, val_obs);
    return result;
}

double front_aware_objective(std::array<double, 2> theta, const FieldSeries& field,
                             FrameWindow window, const DriftSeries& drift,
                             ModelStructure structure, const FrontAwareWeights& weights,
                             const FrontLevels& levels, const RolloutConfig& rollout_cfg,
                             std::size_t max_points, std::uint64_t subsample_seed) {
    if (!std::isfinite(theta[0]) || !std::isfinite(theta[1])) {
        return std::numeric_limits<double>::infinity();
    }
    const Grid& g = field.grid();
    const std::size_t cells = g.cells_per_frame();
    const SparseModel model = make_structure_model(structure, theta[0], theta[1]);

    FieldSeries pred;
    try {
        pred = rollout_full(field, window, model, drift, rollout_cfg);
    } catch (const RolloutBlowup&) {
        return std::numeric_limits<double>::infinity();
    }

    // J_pix: strided subsample of the squared pixel error
    const int n = window.size();
    const Subsample sub =
        make_subsample(static_cast<std::size_t>(n) * cells, max_points, subsample_seed);
    double sum_sq = 0.0;
    std::size_t count = 0;
    for (int k = 0; k < n; ++k) {
        const auto p = pred.frame(k);
        const auto o = field.frame(window.begin + k);
        const std::size_t flat0 = static_cast<std::size_t>(k) * cells;
        std::size_t q = (sub.offset + sub.stride - flat0 % sub.stride) % sub.stride;
        for (; q < cells; q += sub.stride) {
            const double d = p[q] - o[q];
            sum_sq += d * d;
            ++count;
        }
    }
    const double j_pix = count == 0 ? 0.0 : sum_sq / static_cast<double>(count);

    Grid obs_grid = g;
    obs_grid.nt = n;
    FieldSeries obs(obs_grid);
    for (int k = 0; k < n; ++k) {
        const auto f = field.frame(window.begin + k);
        std::copy(f.begin(), f.end(), obs.frame(k).begin());
    }
    const auto r_pred = front_radius_series(pred, levels);
    const auto r_obs = front_radius_series(obs, levels);

    double j_radius = 0.0;
    double j_growth = 0.0;
    const std::size_t nlev = levels.gammas.size();
    for (std::size_t lev = 0; lev < nlev; ++lev) {
        for (int k = 0; k < n; ++k) {
            const double d = r_pred[k][lev] - r_obs[k][lev];
            j_radius += d * d;
        }
        for (int k = 0; k + 1 < n; ++k) {
            const double gp = r_pred[k + 1][lev] - r_pred[k][lev];
            const double go = r_obs[k + 1][lev] - r_obs[k][lev];
            j_growth += (gp - go) * (gp - go);
        }
    }
    j_radius /= static_cast<double>(nlev * n);
    if (n > 1) j_growth /= static_cast<double>(nlev * (n - 1));

    return j_pix + weights.w_f * j_radius + weights.w_g * j_growth;
}

FrontAwareResult front_aware_calibrate(const FieldSeries& field, const DriftSeries& drift,
                                       FrameWindow window, ModelStructure structure,
                                       std::array<double, 2> theta0,
                                       const FrontAwareWeights& weights,
                                       const FrontLevels& levels, const BootstrapConfig& cfg) {
    const RolloutConfig fit_cfg = cfg.fit_rollout();
    NelderMeadConfig nm;
    nm.max_iter = cfg.max_nm_iter;

    FrontAwareResult result;
    NelderMeadResult nm_result;
    if (weights.beta_positive) {
        // positive-Laplacian variant: beta = exp(eta)
        const double beta0 = std::max(theta0[1], 1e-3);
        const std::array<double, 2> start{theta0[0], std::log(beta0)};
        auto objective = [&](std::span<const double> th) {
            return front_aware_objective({th[0], std::exp(th[1])}, field, window, drift,
                                         structure, weights, levels, fit_cfg,
                                         cfg.max_objective_points, cfg.rng_seed);
        };
        nm_result = nelder_mead_minimize(objective, std::span<const double>(start), nm);
        result.a = nm_result.theta[0];
        result.beta = std::exp(nm_result.theta[1]);
    } else {
        auto objective = [&](std::span<const double> th) {
            return front_aware_objective({th[0], th[1]}, field, window, drift, structure,
                                         weights, levels, fit_cfg, cfg.max_objective_points,
                                         cfg.rng_seed);
        };
        nm_result = nelder_mead_minimize(objective, std::span<const double>(theta0), nm);
        result.a = nm_result.theta[0];
        result.beta = nm_result.theta[1];
    }
    result.objective = nm_result.value;
    result.converged = nm_result.converged && std::isfinite(nm_result.value);
    result.iterations = nm_result.iterations;
    result.model = make_structure_model(structure, result.a, result.beta);
    return result;
}

RefineResult strongform_refine(const FieldSeries& field, const DriftSeries& drift,
                               FrameWindow train, ModelStructure structure,
                               const SavGolConfig& savgol_cfg) {
    const Grid& g = field.grid();
    const int n = train.size();
    if (n < 2) throw DataError("training window too short for strong-form refinement");
    if (drift.size() != g.nt) throw DataError("drift length does not match frame count");
    const std::size_t cells = g.cells_per_frame();

    // per-pixel time derivative over the training window
    const SavGolFilter filter(n, savgol_cfg);
    std::vector<double> dudt(static_cast<std::size_t>(n) * cells);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < g.ny; ++j) {
        std::vector<double> series(n), smooth(n), deriv(n);
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t cell = static_cast<std::size_t>(j) * g.nx + i;
            for (int k = 0; k < n; ++k) series[k] = field.frame(train.begin + k)[cell];
            filter.apply(series, g.dt, smooth, deriv);
            for (int k = 0; k < n; ++k) dudt[static_cast<std::size_t>(k) * cells + cell] = deriv[k];
        }
    }

    // normal equations accumulated per frame, reduced in frame order
    std::vector<double> s11(n, 0.0), s12(n, 0.0), s22(n, 0.0), r1(n, 0.0), r2(n, 0.0),
        ysq(n, 0.0);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k) {
        const auto u = field.frame(train.begin + k);
        const double vx = drift.vx[train.begin + k];
        const double vy = drift.vy[train.begin + k];
        const double* dt_frame = dudt.data() + static_cast<std::size_t>(k) * cells;
        double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0, yy = 0;
        for (int j = 1; j < g.ny - 1; ++j) {
            for (int i = 1; i < g.nx - 1; ++i) {
                const std::size_t c = static_cast<std::size_t>(j) * g.nx + i;
                const double uc = u[c];
                const double uw = u[c - 1], ue = u[c + 1];
                const double un = u[c - g.nx], us = u[c + g.nx];
                const double ux = 0.5 * (ue - uw) / g.dx;
                const double uy = 0.5 * (us - un) / g.dy;
                const double lap = (ue - 2 * uc + uw) / (g.dx * g.dx) +
                                   (us - 2 * uc + un) / (g.dy * g.dy);
                const double gradsq = ux * ux + uy * uy;
                const double gfeat =
                    structure == ModelStructure::C ? gradsq : uc * gradsq;
                const double adv_x = vx > 0.0 ? (uc - uw) / g.dx : (ue - uc) / g.dx;
                const double adv_y = vy > 0.0 ? (uc - un) / g.dy : (us - uc) / g.dy;
                const double y = dt_frame[c] + vx * adv_x + vy * adv_y;
                a11 += gfeat * gfeat;
                a12 += gfeat * lap;
                a22 += lap * lap;
                b1 += gfeat * y;
                b2 += lap * y;
                yy += y * y;
            }
        }
        s11[k] = a11;
        s12[k] = a12;
        s22[k] = a22;
        r1[k] = b1;
        r2[k] = b2;
        ysq[k] = yy;
    }
    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0, yy = 0;
    for (int k = 0; k < n; ++k) {
        a11 += s11[k];
        a12 += s12[k];
        a22 += s22[k];
        b1 += r1[k];
        b2 += r2[k];
        yy += ysq[k];
    }

    const double det = a11 * a22 - a12 * a12;
    if (!(a11 > 0.0) || !(a22 > 0.0) || std::abs(det) <= 1e-14 * a11 * a22) {
        throw NumericalError("degenerate strong-form fit: feature columns are (near) linearly "
                             "dependent or vanish");
    }
    RefineResult result;
    result.a = (a22 * b1 - a12 * b2) / det;
    result.beta = (a11 * b2 - a12 * b1) / det;
    const double rss = yy - 2 * (result.a * b1 + result.beta * b2) +
                       result.a * result.a * a11 + 2 * result.a * result.beta * a12 +
                       result.beta * result.beta * a22;
    const std::size_t points =
        static_cast<std::size_t>(n) * (g.nx - 2) * (g.ny - 2);
    result.residual_norm = std::sqrt(std::max(rss, 0.0) / static_cast<double>(points));
    return result;
}

std::array<double, 2> weak_initialization(const FieldSeries& field, const DriftSeries& drift,
                                          FrameWindow train, ModelStructure structure,
                                          const TestFunctionSpec& spec, const StlsqConfig& cfg) {
    const FeatureLibrary lib = FeatureLibrary::make(structure_label(structure), true,
                                                    AdvectionMode::Measured);
    const FitResult fit = fit_library(field, &drift, lib, train, spec, cfg);
    const FeatureKind gkind =
        structure == ModelStructure::C ? FeatureKind::GradSq : FeatureKind::UGradSq;
    return {fit.model.coefficient(gkind), fit.model.coefficient(FeatureKind::Lap)};
}

}  // namespace plume
