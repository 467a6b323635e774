#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "plume/bootstrap.hpp"
#include "plume/metrics.hpp"
#include "plume/model.hpp"
#include "plume/nelder_mead.hpp"
#include "plume/rollout.hpp"
#include "plume/savgol.hpp"
#include "plume/split.hpp"

namespace plume {

// Fixed-structure models recalibrated against rollouts: the free coefficients
// are (a, beta) with the prescribed drift held at unit coefficient.
enum class ModelStructure { C, CAlt };

std::string_view structure_label(ModelStructure s);
ModelStructure structure_from_label(std::string_view label);

// Measured-mode model for the structure: a on the gradient term, beta on the
// Laplacian.
SparseModel make_structure_model(ModelStructure s, double a, double beta);

struct BootstrapConfig {
    int replicates = 50;
    int block_length = 0;  // 0: round(sqrt(n_tr))
    int fit_substeps = 100;  // substep cap per frame interval during fitting
    std::size_t max_objective_points = 100000;
    int max_nm_iter = 300;
    std::uint64_t rng_seed = 42;
    double eps_visc = 0.01;
    double safety = 0.25;
    bool clip = true;

    RolloutConfig fit_rollout() const {
        return RolloutConfig{safety, fit_substeps, eps_visc, clip};
    }
};

// Rollout MSE of Eq-style per-block forward solves on resampled training
// frames. Each bootstrap block is rolled out from its own first frame (no
// rollout across block seams); squared errors are accumulated on a
// deterministic strided subsample of at most `max_points` space-time points.
// Returns +inf when the rollout blows up.
double rollout_mse_objective(std::array<double, 2> theta, const FieldSeries& field,
                             FrameWindow train, const DriftSeries& drift,
                             const BootstrapIndices& resample, ModelStructure structure,
                             const RolloutConfig& rollout_cfg, std::size_t max_points,
                             std::uint64_t subsample_seed);

enum class InitSource { Weak, Refined };

std::string_view init_source_label(InitSource s);

struct ReplicateSample {
    int replicate = 0;
    double a = 0.0;
    double beta = 0.0;
    double objective = 0.0;
    bool converged = false;
    int iterations = 0;
};

struct CalibrationResult {
    ModelStructure structure = ModelStructure::C;
    InitSource init_source = InitSource::Weak;
    double init_a = 0.0;
    double init_beta = 0.0;
    std::vector<ReplicateSample> samples;  // replicates with a finite final objective
    int attempted = 0;
    int converged_count = 0;
    double median_a = 0.0;
    double median_beta = 0.0;
    std::array<double, 2> interval_a{};     // [q_{0.025}, q_{0.975}]
    std::array<double, 2> interval_beta{};
    double median_train_mse = 0.0;  // median over replicates of the final objective
    double validation_rrmse = std::numeric_limits<double>::quiet_NaN();
    SparseModel median_model;
};

// Runs B block-bootstrap replicates of Nelder-Mead rollout calibration from
// theta0, aggregates medians and [q_{0.025}, q_{0.975}] intervals, and
// evaluates the median model on the validation window.
CalibrationResult bootstrap_calibrate(const FieldSeries& field, const DriftSeries& drift,
                                      const SplitWindows& split, ModelStructure structure,
                                      InitSource init_source, std::array<double, 2> theta0,
                                      const BootstrapConfig& cfg);

struct FrontAwareWeights {
    double w_f = 5.0;
    double w_g = 0.05;
    bool beta_positive = false;  // optimize beta in log-space
};

// J_pix + w_f * J_radius + w_g * J_growth on a full-window rollout, where
// J_radius is the mean squared front-radius mismatch over the levels and
// J_growth the mean squared mismatch of frame-to-frame radius increments.
double front_aware_objective(std::array<double, 2> theta, const FieldSeries& field,
                             FrameWindow window, const DriftSeries& drift,
                             ModelStructure structure, const FrontAwareWeights& weights,
                             const FrontLevels& levels, const RolloutConfig& rollout_cfg,
                             std::size_t max_points, std::uint64_t subsample_seed);

struct FrontAwareResult {
    double a = 0.0;
    double beta = 0.0;
    double objective = 0.0;
    bool converged = false;
    int iterations = 0;
    SparseModel model;
};

FrontAwareResult front_aware_calibrate(const FieldSeries& field, const DriftSeries& drift,
                                       FrameWindow window, ModelStructure structure,
                                       std::array<double, 2> theta0,
                                       const FrontAwareWeights& weights,
                                       const FrontLevels& levels, const BootstrapConfig& cfg);

struct RefineResult {
    double a = 0.0;
    double beta = 0.0;
    double residual_norm = 0.0;
};

// Pointwise least squares for (a, beta) in the strong form
// u_t + v . grad u = a g[u] + beta lap u, with u_t from a per-pixel
// Savitzky-Golay derivative and the spatial terms from the rollout stencils,
// over spatially interior points of the training window. Serves as the
// second initialization source for the bootstrap stage.
RefineResult strongform_refine(const FieldSeries& field, const DriftSeries& drift,
                               FrameWindow train, ModelStructure structure,
                               const SavGolConfig& savgol_cfg = {});

// Measured-mode weak fit of the matching library, reduced to (a, beta).
std::array<double, 2> weak_initialization(const FieldSeries& field, const DriftSeries& drift,
                                          FrameWindow train, ModelStructure structure,
                                          const TestFunctionSpec& spec, const StlsqConfig& cfg);

}  // namespace plume
