#pragma once

#include <vector>

#include "plume/drift.hpp"
#include "plume/field.hpp"

namespace plume {

// Viscous Hamilton-Jacobi model u_t + v(t).grad u = a |grad u|^2 + beta lap u
// with spatially uniform drift. theta = exp(a u / beta) turns it into linear
// advection-diffusion, which is what the structural checks exploit.
struct HjModel {
    double a = 0.0;
    double beta = 0.0;
    const DriftSeries* drift = nullptr;  // null: zero drift

    void validate(bool need_a = true) const;
};

FieldSeries cole_hopf_forward(const FieldSeries& u, double a, double beta);
// Throws NumericalError when theta is not strictly positive.
FieldSeries cole_hopf_inverse(const FieldSeries& theta, double a, double beta);

// Gaussian bump on a unit floor: theta_0 = 1 + A exp(-r^2 / (2 sigma0^2)).
struct GaussianBumpSpec {
    double amplitude = 1.0;
    double x0 = 0.0;
    double y0 = 0.0;
    double sigma0 = 1.0;

    void validate() const;
};

struct ExactSolution {
    FieldSeries field;
    // set when the evolved bump is not negligible near the domain boundary,
    // where the free-space formula stops being exact
    bool boundary_warning = false;
};

// Closed-form field: theta evolves by free-space heat diffusion of the bump
// translated by X(t) = integral of the drift, and u = (beta/a) log(theta).
ExactSolution exact_solution_field(const GaussianBumpSpec& spec, const HjModel& model,
                                   const Grid& grid);

struct LinearizationReport {
    std::vector<double> frame_rms;  // NaN on first/last frame (centered time stencil)
    double rms = 0.0;
    double max_abs = 0.0;
};

// Transforms the field to theta and evaluates the discrete linear
// advection-diffusion residual theta_t + v.grad theta - beta lap theta with
// central stencils on interior points and centered time differences.
LinearizationReport verify_linearization(const FieldSeries& field, const HjModel& model);

// Per-frame structural monitors: range bounds, plain mass, exponential mass,
// the dissipation functional and both sides of its decay identity, and the
// mass growth identity.
struct MonitorReport {
    std::vector<double> min_u, max_u;
    std::vector<double> mass;             // integral of u
    std::vector<double> exp_mass;         // integral of exp(a u / beta)
    std::vector<double> dissipation;      // integral of exp(2 a u / beta)
    std::vector<double> dissipation_rate; // centered d/dt of the above (NaN at ends)
    std::vector<double> dissipation_rhs;  // -(2 a^2/beta) integral exp(2au/beta)|grad u|^2
    std::vector<double> mass_rate;        // centered d/dt of mass (NaN at ends)
    std::vector<double> mass_rhs;         // a * integral |grad u|^2
};

MonitorReport structural_monitors(const FieldSeries& field, const HjModel& model);

}  // namespace plume
