#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "plume/stlsq.hpp"
#include "plume/weak.hpp"

namespace plume {

struct ConditionReport {
    double kappa = 1.0;
    bool kappa_infinite = false;    // numerically rank deficient
    std::vector<int> zero_columns;  // excluded from kappa
    Eigen::MatrixXd correlation;    // normalized column correlations
};

// kappa = sigma_max / sigma_min over the non-zero columns, flagged infinite
// when the smallest singular value sits at the numerical-rank floor;
// R_ij = theta_i . theta_j / (|theta_i| |theta_j|).
ConditionReport condition_and_correlation(const WeakSystem& system);

// lambda_m = 10^(-5 + (m-1)/4), m = 1..21
std::vector<double> default_sweep_lambdas();

struct SweepRow {
    double lambda = 0.0;
    int active_count = 0;
    Eigen::VectorXd xi;
};

// STLSQ support path over a threshold grid; activity uses |xi| > 1e-12.
std::vector<SweepRow> threshold_sweep(const WeakSystem& system,
                                      std::span<const double> lambdas, double alpha = 1e-6,
                                      int max_iter = 100);

struct StabilityConfig {
    int n_runs = 100;
    int m_stab = 1000;  // test functions per run
    StlsqConfig stlsq;
    std::uint64_t master_seed = 0;  // run r uses master_seed + r
};

struct TermStability {
    FeatureKind term = FeatureKind::Const;
    double frequency = 0.0;  // fraction of runs selecting the term
    double mean = 0.0;       // over runs where selected
    double stddev = 0.0;
    int times_selected = 0;
};

// Re-fits the library on independent centre samples and records selection
// frequencies and coefficient spread per term.
std::vector<TermStability> stability_study(const FieldSeries& field, const DriftSeries* drift,
                                           const FeatureLibrary& library, FrameWindow train,
                                           const TestFunctionSpec& spec,
                                           const StabilityConfig& cfg);

}  // namespace plume
