#pragma once

#include <array>
#include <string>
#include <vector>

#include "plume/features.hpp"
#include "plume/stlsq.hpp"
#include "plume/weak.hpp"

namespace plume {

// A simulable sparse PDE: u_t = sum of intrinsic terms - advection, where
// the advection carries coefficient 1 in measured mode and the fitted
// (cx, cy) pair in learned mode.
struct SparseModel {
    std::string library_id = "C";
    AdvectionMode mode = AdvectionMode::Measured;
    std::array<double, kNumIntrinsicKinds> coeff{};  // indexed by FeatureKind value
    double cx = 1.0;
    double cy = 1.0;

    double coefficient(FeatureKind kind) const { return coeff[static_cast<int>(kind)]; }
    void set_coefficient(FeatureKind kind, double value) {
        coeff[static_cast<int>(kind)] = value;
    }
    std::vector<FeatureKind> active_terms(double tol = 1e-12) const;
    void validate() const;

    std::string to_json(std::uint64_t config_hash = 0, std::uint64_t seed = 0) const;
    static SparseModel from_json_text(const std::string& text);
};

struct FitResult {
    SparseModel model;
    WeakSystem system;  // the system as regressed (measured mode folds drift into b)
    StlsqResult stlsq;
    std::vector<Centre> centres;
};

// Samples centres, assembles the weak system, and runs STLSQ. In measured
// mode the advection columns are subtracted from b with unit coefficient and
// only intrinsic terms are regressed; in learned mode their coefficients
// become (cx, cy).
FitResult fit_library(const FieldSeries& field, const DriftSeries* drift,
                      const FeatureLibrary& library, FrameWindow train,
                      const TestFunctionSpec& spec, const StlsqConfig& cfg);

}  // namespace plume
