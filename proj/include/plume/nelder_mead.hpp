#pragma once

#include <functional>
#include <span>
#include <vector>

namespace plume {

struct NelderMeadConfig {
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    double init_step_rel = 0.05;  // initial simplex: max(rel*|theta_i|, abs)
    double init_step_abs = 1e-3;
    double tol_simplex = 1e-6;  // diameter tolerance; value spread uses tol^2
    int max_iter = 300;

    void validate() const;
};

struct NelderMeadResult {
    std::vector<double> theta;
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
    int evaluations = 0;
};

// Classic derivative-free simplex descent. Objectives may return +inf as a
// sentinel for infeasible points; the returned point is never worse than the
// starting point.
NelderMeadResult nelder_mead_minimize(
    const std::function<double(std::span<const double>)>& objective,
    std::span<const double> theta0, const NelderMeadConfig& cfg);

}  // namespace plume
