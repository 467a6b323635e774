#pragma once

#include <optional>
#include <span>
#include <vector>

#include "plume/field.hpp"
#include "plume/pgm.hpp"

namespace plume {

struct CropRect {
    int x0 = 0;
    int y0 = 0;
    int w = 0;
    int h = 0;
};

struct PreprocessConfig {
    std::optional<CropRect> crop;  // absent: keep the full frame
    int border_trim = 0;           // pixels removed on all four sides after cropping
    int target_ny = 0;             // 0: keep the trimmed size
    int target_nx = 0;
    double sigma_smooth = 0.0;  // pixels, on the resized grid
    double dx = 1.0;            // output grid spacing, image units per cell
    double dy = 1.0;
    double frame_dt = 1.0;  // seconds per frame

    void validate(int src_width, int src_height) const;
};

// Bulk statistics reported per stage, plus the mean-per-frame series used to
// check that resizing preserves the mean intensity.
struct PreprocessStats {
    double min_before_resize = 0.0, mean_before_resize = 0.0, max_before_resize = 0.0;
    double min_final = 0.0, mean_final = 0.0, max_final = 0.0;
    std::vector<double> frame_mean_before_resize;
    std::vector<double> frame_mean_after_resize;
};

// u = 1 - I/255, mapping ink-dark pixels to values near 1.
Frame normalize_invert(const RawFrame& frame);

Frame crop_frame(const RawFrame& frame, const CropRect& rect, int border_trim,
                 RawFrame* out = nullptr);

// Bilinear interpolation with half-pixel-centered sampling; preserves
// constants and the value range.
Frame bilinear_resize(const Frame& src, int target_ny, int target_nx);

// Separable truncated Gaussian, kernel radius ceil(4*sigma), weights
// normalized to unit sum, reflect (edge-repeating) boundary handling.
// sigma == 0 is the identity.
Frame gaussian_smooth(const Frame& src, double sigma);

// Full per-frame pipeline: crop, trim, invert/normalize, resize, smooth.
FieldSeries preprocess_stack(std::span<const RawFrame> frames, const PreprocessConfig& cfg,
                             PreprocessStats* stats = nullptr);

struct SmoothingSweepRow {
    double sigma;
    double rms_diff;
    double max_diff;
};

// Frame-level differences of the smoothed frame against sigma = 0.
std::vector<SmoothingSweepRow> smoothing_sweep(const Frame& frame, std::span<const double> sigmas);

}  // namespace plume
