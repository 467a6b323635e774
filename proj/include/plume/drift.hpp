#pragma once

#include <vector>

#include "plume/field.hpp"
#include "plume/savgol.hpp"

namespace plume {

// Per-frame total signal and intensity-weighted centroid. Frames with zero
// total signal have NaN centroids and are listed in `undefined_frames`.
struct CentroidSeries {
    std::vector<double> mass;  // integral of u over the domain (dx*dy weight)
    std::vector<double> xc;
    std::vector<double> yc;
    std::vector<int> undefined_frames;
};

// Prescribed bulk drift, image units per second, one value per frame.
struct DriftSeries {
    std::vector<double> vx;
    std::vector<double> vy;
    double mean_vx = 0.0;
    double mean_vy = 0.0;

    static DriftSeries zero(int nt) {
        DriftSeries d;
        d.vx.assign(nt, 0.0);
        d.vy.assign(nt, 0.0);
        return d;
    }
    static DriftSeries constant(int nt, double vx, double vy);
    int size() const { return static_cast<int>(vx.size()); }
};

CentroidSeries centroid_series(const FieldSeries& field);

struct DriftResult {
    CentroidSeries centroid;
    std::vector<double> xc_smooth;
    std::vector<double> yc_smooth;
    DriftSeries drift;
};

// Centroid trajectory -> Savitzky-Golay smoothing -> time derivative per
// axis. Zero-signal frames get a centroid linearly interpolated from the
// neighbouring defined frames before filtering (the rollout needs a drift
// value at every frame).
DriftResult drift_from_field(const FieldSeries& field, const SavGolConfig& cfg = {});

}  // namespace plume
