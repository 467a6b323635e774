#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "plume/drift.hpp"
#include "plume/field.hpp"

namespace plume {

// Candidate terms of the evolution law u_t = sum_l xi_l F_l[u; v].
// The advection features carry the transport sign convention: the strong
// forms are -v_x(t) u_x and -v_y(t) u_y, so a fitted coefficient of +1
// reproduces the measured drift exactly.
enum class FeatureKind {
    Const,    // 1
    U,        // u
    U2,       // u^2
    GradSq,   // |grad u|^2
    UGradSq,  // u |grad u|^2
    Lap,      // laplacian of u
    AdvX,     // -v_x(t) u_x
    AdvY,     // -v_y(t) u_y
};

constexpr int kNumIntrinsicKinds = 6;  // Const..Lap

std::string_view feature_label(FeatureKind kind);
FeatureKind feature_from_label(std::string_view label);

enum class AdvectionMode { Learned, Measured };

std::string_view advection_mode_label(AdvectionMode mode);
AdvectionMode advection_mode_from_label(std::string_view label);

// A named candidate library: intrinsic terms plus the two drift terms
// whenever drift velocities are supplied.
struct FeatureLibrary {
    std::string id;
    std::vector<FeatureKind> features;
    AdvectionMode advection_mode = AdvectionMode::Learned;

    // ids: A, B, C, C-alt, C-both, Full
    static FeatureLibrary make(std::string_view id, bool with_drift,
                               AdvectionMode mode = AdvectionMode::Learned);
    static const std::vector<std::string>& known_ids();

    std::vector<FeatureKind> intrinsic() const;
    bool has_advection() const;
};

// Second-order spatial derivatives of u: central differences inside, one-sided
// second-order stencils on the boundary rows/columns.
FieldSeries derivative_x(const FieldSeries& field);
FieldSeries derivative_y(const FieldSeries& field);

// Single-frame versions of the same stencils.
void frame_derivative_x(const double* u, double* out, int nx, int ny, double dx);
void frame_derivative_y(const double* u, double* out, int nx, int ny, double dy);

// Pointwise strong-form feature field. `ux`/`uy` are the derivative fields
// above; drift is required for the advection kinds.
FieldSeries feature_field(FeatureKind kind, const FieldSeries& u, const FieldSeries& ux,
                          const FieldSeries& uy, const DriftSeries* drift);

// Convenience map of all requested feature fields.
std::map<FeatureKind, FieldSeries> feature_fields(const FieldSeries& u,
                                                  const DriftSeries* drift,
                                                  const std::vector<FeatureKind>& kinds);

}  // namespace plume
