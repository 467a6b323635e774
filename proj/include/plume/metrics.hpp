#pragma once

#include <vector>

#include "plume/field.hpp"

namespace plume {

// Relative root-mean-square error over every (k,j,i) of the window, as a
// percentage. Throws NumericalError if the truth is identically zero.
double rrmse_percent(const FieldSeries& pred, const FieldSeries& truth);

// Same ratio restricted to each frame.
std::vector<double> framewise_rrmse_percent(const FieldSeries& pred, const FieldSeries& truth);

struct FrontLevels {
    std::vector<double> gammas = {0.05, 0.10, 0.15, 0.20, 0.25};
    void validate() const;
};

// Equivalent front radius r = sqrt(|{u >= gamma}| / pi) with the superlevel
// area counted as cells * dx * dy. result[k][level].
std::vector<std::vector<double>> front_radius_series(const FieldSeries& field,
                                                     const FrontLevels& levels);

struct CentroidErrorSeries {
    std::vector<double> e_com;  // NaN where either centroid is undefined
    double mae = 0.0;
    double rmse = 0.0;
    int skipped_frames = 0;
};

// Per-frame distance between predicted and observed intensity centroids.
CentroidErrorSeries centroid_error_series(const FieldSeries& pred, const FieldSeries& truth);

}  // namespace plume
