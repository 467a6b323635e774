#pragma once

#include <span>

#include "plume/drift.hpp"
#include "plume/field.hpp"
#include "plume/model.hpp"

namespace plume {

// Explicit forward integration settings. Boundaries are zero-flux
// (edge-replicated ghost cells), which makes the discrete Laplacian sum to
// zero over the domain.
struct RolloutConfig {
    double safety = 0.25;
    int max_substeps = 2000;
    double eps_visc = 0.01;
    bool clip_enabled = true;  // clip to [0,1] after every substep

    void validate() const;
};

// Evaluates the model right-hand side on one frame: intrinsic terms with
// central differences, advection by first-order upwinding on the drift sign,
// plus the eps_visc * lap(u) background diffusion.
void pde_rhs(std::span<const double> u, const SparseModel& model, double vx, double vy,
             const Grid& grid, double eps_visc, std::span<double> dudt);

struct StepInfo {
    int substeps = 0;
    bool capped = false;  // hit max_substeps
};

// Advances one frame interval of length dt with forward-Euler substeps. The
// substep count follows the combined diffusive/advective stability bound,
// capped at max_substeps; drift is held at the interval's starting value.
// Throws RolloutBlowup when non-finite values appear.
StepInfo step_interval(std::span<double> u, const SparseModel& model, double vx, double vy,
                       const Grid& grid, const RolloutConfig& cfg, double dt, int frame_index);

// Initialised once from the window's first frame and advanced frame by
// frame. Returns predictions aligned with the observed frames.
FieldSeries rollout_full(const FieldSeries& observed, FrameWindow window,
                         const SparseModel& model, const DriftSeries& drift,
                         const RolloutConfig& cfg);

// Re-initialised from each observed frame; prediction k+1 comes from
// observed frame k.
FieldSeries rollout_one_step(const FieldSeries& observed, FrameWindow window,
                             const SparseModel& model, const DriftSeries& drift,
                             const RolloutConfig& cfg);

}  // namespace plume
