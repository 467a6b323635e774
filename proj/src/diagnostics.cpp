#include "plume/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "plume/errors.hpp"

namespace plume {

ConditionReport condition_and_correlation(const WeakSystem& system) {
    const Eigen::MatrixXd& theta = system.theta;
    const int k = static_cast<int>(theta.cols());
    ConditionReport rep;
    rep.correlation = Eigen::MatrixXd::Zero(k, k);

    std::vector<double> norms(k);
    std::vector<int> keep;
    for (int c = 0; c < k; ++c) {
        norms[c] = theta.col(c).norm();
        if (norms[c] == 0.0) {
            rep.zero_columns.push_back(c);
        } else {
            keep.push_back(c);
        }
    }
    for (int a = 0; a < k; ++a) {
        rep.correlation(a, a) = 1.0;
        for (int b = a + 1; b < k; ++b) {
            if (norms[a] == 0.0 || norms[b] == 0.0) continue;
            const double r = theta.col(a).dot(theta.col(b)) / (norms[a] * norms[b]);
            rep.correlation(a, b) = r;
            rep.correlation(b, a) = r;
        }
    }

    if (keep.empty()) {
        rep.kappa_infinite = true;
        rep.kappa = std::numeric_limits<double>::infinity();
        return rep;
    }
    Eigen::MatrixXd sub(theta.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) {
        sub.col(static_cast<Eigen::Index>(c)) = theta.col(keep[c]);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    // numerical-rank floor: exact collinearity lands at eps-level singular
    // values, well below any identifiable conditioning of interest
    const double floor =
        smax * std::max(theta.rows(), theta.cols()) * std::numeric_limits<double>::epsilon();
    if (smin < 1e-300 || smin <= floor) {
        rep.kappa_infinite = true;
        rep.kappa = std::numeric_limits<double>::infinity();
    } else {
        rep.kappa = smax / smin;
    }
    return rep;
}

std::vector<double> default_sweep_lambdas() {
    std::vector<double> lambdas(21);
    for (int m = 1; m <= 21; ++m) {
        lambdas[m - 1] = std::pow(10.0, -5.0 + (m - 1) / 4.0);
    }
    return lambdas;
}

std::vector<SweepRow> threshold_sweep(const WeakSystem& system, std::span<const double> lambdas,
                                      double alpha, int max_iter) {
    constexpr double eps_act = 1e-12;
    std::vector<SweepRow> rows(lambdas.size());
    for (std::size_t m = 0; m < lambdas.size(); ++m) {
        StlsqConfig cfg;
        cfg.lambda = lambdas[m];
        cfg.alpha = alpha;
        cfg.max_iter = max_iter;
        const StlsqResult fit = stlsq(system.theta, system.b, cfg);
        rows[m].lambda = lambdas[m];
        rows[m].xi = fit.xi;
        rows[m].active_count =
            static_cast<int>((fit.xi.array().abs() > eps_act).count());
    }
    return rows;
}

std::vector<TermStability> stability_study(const FieldSeries& field, const DriftSeries* drift,
                                           const FeatureLibrary& library, FrameWindow train,
                                           const TestFunctionSpec& spec,
                                           const StabilityConfig& cfg) {
    if (cfg.n_runs < 1) throw ConfigError("stability study needs at least one run");
    constexpr double eps_act = 1e-12;

    std::vector<std::vector<Centre>> centre_sets(cfg.n_runs);
    for (int r = 0; r < cfg.n_runs; ++r) {
        centre_sets[r] = sample_centres(field.grid(), train, spec,
                                        cfg.master_seed + static_cast<std::uint64_t>(r) + 1,
                                        cfg.m_stab);
    }
    const std::vector<WeakSystem> systems =
        assemble_weak_systems(field, drift, library, train, spec, centre_sets);

    const int k = static_cast<int>(library.features.size());
    Eigen::MatrixXd coeffs(cfg.n_runs, k);
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < cfg.n_runs; ++r) {
        const StlsqResult fit = stlsq(systems[r].theta, systems[r].b, cfg.stlsq);
        coeffs.row(r) = fit.xi.transpose();
    }

    std::vector<TermStability> out(k);
    for (int c = 0; c < k; ++c) {
        TermStability& t = out[c];
        t.term = library.features[c];
        double sum = 0.0;
        for (int r = 0; r < cfg.n_runs; ++r) {
            if (std::abs(coeffs(r, c)) > eps_act) {
                ++t.times_selected;
                sum += coeffs(r, c);
            }
        }
        t.frequency = static_cast<double>(t.times_selected) / cfg.n_runs;
        if (t.times_selected > 0) {
            t.mean = sum / t.times_selected;
            double sq = 0.0;
            for (int r = 0; r < cfg.n_runs; ++r) {
                if (std::abs(coeffs(r, c)) > eps_act) {
                    sq += (coeffs(r, c) - t.mean) * (coeffs(r, c) - t.mean);
                }
            }
            t.stddev = std::sqrt(sq / t.times_selected);
        }
    }
    return out;
}

}  // namespace plume
