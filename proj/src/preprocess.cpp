#include "plume/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "plume/errors.hpp"

namespace plume {

void PreprocessConfig::validate(int src_width, int src_height) const {
    CropRect r = crop.value_or(CropRect{0, 0, src_width, src_height});
    if (r.w <= 0 || r.h <= 0) throw DataError("crop rectangle has non-positive size");
    if (r.x0 < 0 || r.y0 < 0 || r.x0 + r.w > src_width || r.y0 + r.h > src_height) {
        throw DataError("crop rectangle (" + std::to_string(r.x0) + "," + std::to_string(r.y0) +
                        "," + std::to_string(r.w) + "," + std::to_string(r.h) +
                        ") exceeds source frame " + std::to_string(src_width) + "x" +
                        std::to_string(src_height));
    }
    if (border_trim < 0) throw DataError("border_trim must be non-negative");
    if (r.w - 2 * border_trim < 4 || r.h - 2 * border_trim < 4) {
        throw DataError("border trim of " + std::to_string(border_trim) +
                        " leaves fewer than 4 pixels per axis");
    }
    const int ny = target_ny > 0 ? target_ny : r.h - 2 * border_trim;
    const int nx = target_nx > 0 ? target_nx : r.w - 2 * border_trim;
    if (ny < 4 || nx < 4) throw DataError("target size must be at least 4x4");
    if (sigma_smooth < 0) throw DataError("sigma_smooth must be non-negative");
    if (!(dx > 0) || !(dy > 0) || !(frame_dt > 0)) {
        throw DataError("grid spacings must be positive");
    }
}

Frame normalize_invert(const RawFrame& frame) {
    Frame out(frame.height, frame.width);
    for (std::size_t q = 0; q < frame.pixels.size(); ++q) {
        out.v[q] = 1.0 - frame.pixels[q] / 255.0;
    }
    return out;
}

Frame crop_frame(const RawFrame& frame, const CropRect& rect, int border_trim, RawFrame* out) {
    const int x0 = rect.x0 + border_trim;
    const int y0 = rect.y0 + border_trim;
    const int w = rect.w - 2 * border_trim;
    const int h = rect.h - 2 * border_trim;
    RawFrame cropped;
    cropped.width = w;
    cropped.height = h;
    cropped.pixels.resize(static_cast<std::size_t>(w) * h);
    for (int j = 0; j < h; ++j) {
        const std::uint8_t* src = frame.pixels.data() +
                                  static_cast<std::size_t>(y0 + j) * frame.width + x0;
        std::copy(src, src + w, cropped.pixels.data() + static_cast<std::size_t>(j) * w);
    }
    Frame result = normalize_invert(cropped);
    if (out) *out = std::move(cropped);
    return result;
}

Frame bilinear_resize(const Frame& src, int target_ny, int target_nx) {
    if (target_ny == src.ny && target_nx == src.nx) return src;
    Frame out(target_ny, target_nx);
    const double sx_scale = static_cast<double>(src.nx) / target_nx;
    const double sy_scale = static_cast<double>(src.ny) / target_ny;
    for (int j = 0; j < target_ny; ++j) {
        double sy = (j + 0.5) * sy_scale - 0.5;
        sy = std::clamp(sy, 0.0, static_cast<double>(src.ny - 1));
        const int j0 = std::min(static_cast<int>(sy), src.ny - 2 >= 0 ? src.ny - 2 : 0);
        const double fy = sy - j0;
        for (int i = 0; i < target_nx; ++i) {
            double sx = (i + 0.5) * sx_scale - 0.5;
            sx = std::clamp(sx, 0.0, static_cast<double>(src.nx - 1));
            const int i0 = std::min(static_cast<int>(sx), src.nx - 2 >= 0 ? src.nx - 2 : 0);
            const double fx = sx - i0;
            const double v00 = src.at(j0, i0);
            const double v01 = src.at(j0, i0 + 1);
            const double v10 = src.at(j0 + 1, i0);
            const double v11 = src.at(j0 + 1, i0 + 1);
            out.at(j, i) = (1 - fy) * ((1 - fx) * v00 + fx * v01) +
                           fy * ((1 - fx) * v10 + fx * v11);
        }
    }
    return out;
}

namespace {

// reflect-with-edge-repeat index: ... 1 0 | 0 1 2 ... n-1 | n-1 n-2 ...
int reflect_index(int i, int n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

std::vector<double> gaussian_kernel(double sigma) {
    const int radius = static_cast<int>(std::ceil(4.0 * sigma));
    std::vector<double> w(2 * radius + 1);
    double sum = 0.0;
    for (int d = -radius; d <= radius; ++d) {
        w[d + radius] = std::exp(-0.5 * d * d / (sigma * sigma));
        sum += w[d + radius];
    }
    for (double& x : w) x /= sum;
    return w;
}

}  // namespace

Frame gaussian_smooth(const Frame& src, double sigma) {
    if (sigma < 0) throw DataError("sigma must be non-negative");
    if (sigma == 0.0) return src;
    const auto w = gaussian_kernel(sigma);
    const int radius = static_cast<int>(w.size() / 2);

    Frame tmp(src.ny, src.nx);
    for (int j = 0; j < src.ny; ++j) {
        for (int i = 0; i < src.nx; ++i) {
            double acc = 0.0;
            for (int d = -radius; d <= radius; ++d) {
                acc += w[d + radius] * src.at(j, reflect_index(i + d, src.nx));
            }
            tmp.at(j, i) = acc;
        }
    }
    Frame out(src.ny, src.nx);
    for (int j = 0; j < src.ny; ++j) {
        for (int i = 0; i < src.nx; ++i) {
            double acc = 0.0;
            for (int d = -radius; d <= radius; ++d) {
                acc += w[d + radius] * tmp.at(reflect_index(j + d, src.ny), i);
            }
            out.at(j, i) = acc;
        }
    }
    return out;
}

namespace {

double frame_mean(const Frame& f) {
    double s = 0.0;
    for (double v : f.v) s += v;
    return s / static_cast<double>(f.v.size());
}

}  // namespace

FieldSeries preprocess_stack(std::span<const RawFrame> frames, const PreprocessConfig& cfg,
                             PreprocessStats* stats) {
    if (frames.size() < 2) throw DataError("need at least 2 frames");
    const int src_w = frames[0].width;
    const int src_h = frames[0].height;
    for (const auto& f : frames) {
        if (f.width != src_w || f.height != src_h) {
            throw DataError("frames have inconsistent dimensions");
        }
    }
    cfg.validate(src_w, src_h);

    const CropRect rect = cfg.crop.value_or(CropRect{0, 0, src_w, src_h});
    const int trimmed_w = rect.w - 2 * cfg.border_trim;
    const int trimmed_h = rect.h - 2 * cfg.border_trim;
    const int out_ny = cfg.target_ny > 0 ? cfg.target_ny : trimmed_h;
    const int out_nx = cfg.target_nx > 0 ? cfg.target_nx : trimmed_w;

    Grid grid{out_nx, out_ny, static_cast<int>(frames.size()), cfg.dx, cfg.dy, cfg.frame_dt};
    FieldSeries series(grid);

    const int nt = grid.nt;
    std::vector<double> mean_before(nt), mean_after(nt), mean_final(nt);
    std::vector<double> minmax_before(2 * nt), minmax_final(2 * nt);

#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < nt; ++k) {
        Frame f = crop_frame(frames[k], rect, cfg.border_trim);
        mean_before[k] = frame_mean(f);
        auto [mn_b, mx_b] = std::minmax_element(f.v.begin(), f.v.end());
        minmax_before[2 * k] = *mn_b;
        minmax_before[2 * k + 1] = *mx_b;

        f = bilinear_resize(f, out_ny, out_nx);
        mean_after[k] = frame_mean(f);
        f = gaussian_smooth(f, cfg.sigma_smooth);

        mean_final[k] = frame_mean(f);
        auto [mn_f, mx_f] = std::minmax_element(f.v.begin(), f.v.end());
        minmax_final[2 * k] = *mn_f;
        minmax_final[2 * k + 1] = *mx_f;
        std::copy(f.v.begin(), f.v.end(), series.frame(k).begin());
    }

    if (stats) {
        stats->frame_mean_before_resize = mean_before;
        stats->frame_mean_after_resize = mean_after;
        stats->min_before_resize = *std::min_element(minmax_before.begin(), minmax_before.end());
        stats->max_before_resize = *std::max_element(minmax_before.begin(), minmax_before.end());
        stats->min_final = *std::min_element(minmax_final.begin(), minmax_final.end());
        stats->max_final = *std::max_element(minmax_final.begin(), minmax_final.end());
        double sb = 0, sf = 0;
        for (int k = 0; k < nt; ++k) {
            sb += mean_before[k];
            sf += mean_final[k];
        }
        stats->mean_before_resize = sb / nt;
        stats->mean_final = sf / nt;
    }
    series.set_normalized(true);
    return series;
}

std::vector<SmoothingSweepRow> smoothing_sweep(const Frame& frame,
                                               std::span<const double> sigmas) {
    std::vector<SmoothingSweepRow> rows(sigmas.size());
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < static_cast<int>(sigmas.size()); ++s) {
        const Frame smoothed = gaussian_smooth(frame, sigmas[s]);
        double sq = 0.0, mx = 0.0;
        for (std::size_t q = 0; q < frame.v.size(); ++q) {
            const double d = smoothed.v[q] - frame.v[q];
            sq += d * d;
            mx = std::max(mx, std::abs(d));
        }
        rows[s] = {sigmas[s], std::sqrt(sq / static_cast<double>(frame.v.size())), mx};
    }
    return rows;
}

}  // namespace plume
