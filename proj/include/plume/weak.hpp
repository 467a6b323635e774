#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "plume/features.hpp"
#include "plume/field.hpp"

namespace plume {

// Separable Gaussian test functions phi(x,y,t) = G_sx(x-xm) G_sy(y-ym)
// G_st(t-tm), G_s(s) = exp(-s^2 / (2 s^2)), truncated at radius
// k_sigma*sigma and not renormalized. Widths are grid-relative; zero means
// "use the default fraction of the grid size".
struct TestFunctionSpec {
    double sigma_x_cells = 0.0;   // default 0.06 * n_x
    double sigma_y_cells = 0.0;   // default 0.06 * n_y
    double sigma_t_frames = 0.0;  // default 0.025 * n_t
    double k_sigma = 4.0;
    int num_centres = 2000;
    std::uint64_t rng_seed = 0;

    double sigma_x(const Grid& g) const { return sigma_x_cells > 0 ? sigma_x_cells : 0.06 * g.nx; }
    double sigma_y(const Grid& g) const { return sigma_y_cells > 0 ? sigma_y_cells : 0.06 * g.ny; }
    double sigma_t(const Grid& g) const {
        return sigma_t_frames > 0 ? sigma_t_frames : 0.025 * g.nt;
    }

    void validate() const;
};

// Grid-node centre of one test function.
struct Centre {
    int i = 0;
    int j = 0;
    int k = 0;
};

// Uniform draw of centres over the admissible interior box of the training
// space-time window (every centre at least k_sigma*sigma from each
// boundary). Deterministic given spec.rng_seed; throws when a margin leaves
// no admissible node, naming the axis.
std::vector<Centre> sample_centres(const Grid& grid, FrameWindow train,
                                   const TestFunctionSpec& spec);

std::vector<Centre> sample_centres(const Grid& grid, FrameWindow train,
                                   const TestFunctionSpec& spec, std::uint64_t seed,
                                   int num_centres);

// Assembled weak regression pair: theta xi ~ b.
struct WeakSystem {
    Eigen::MatrixXd theta;
    Eigen::VectorXd b;
    std::vector<FeatureKind> columns;

    std::vector<std::string> column_labels() const;
};

// Builds the weak system over the training window: b_m = -<d_t phi_m, u>,
// plain columns <phi_m, f>, the Laplacian column by integration by parts,
// and the advection columns <d_x phi_m, v_x u>, <d_y phi_m, v_y u>. Inner
// products are Riemann sums with weight dx*dy*dt, evaluated as separable
// truncated-Gaussian correlations and sampled at the centres.
WeakSystem assemble_weak_system(const FieldSeries& field, const DriftSeries* drift,
                                const FeatureLibrary& library, FrameWindow train,
                                const TestFunctionSpec& spec, std::span<const Centre> centres);

// Shares the per-feature correlation passes across several centre sets (the
// random-centre stability study samples the same volumes many times).
std::vector<WeakSystem> assemble_weak_systems(const FieldSeries& field, const DriftSeries* drift,
                                              const FeatureLibrary& library, FrameWindow train,
                                              const TestFunctionSpec& spec,
                                              std::span<const std::vector<Centre>> centre_sets);

}  // namespace plume
