#include "plume/drift.hpp"

#include <cmath>
#include <limits>

#include "plume/errors.hpp"

namespace plume {

DriftSeries DriftSeries::constant(int nt, double vx, double vy) {
    DriftSeries d;
    d.vx.assign(nt, vx);
    d.vy.assign(nt, vy);
    d.mean_vx = vx;
    d.mean_vy = vy;
    return d;
}

CentroidSeries centroid_series(const FieldSeries& field) {
    const Grid& g = field.grid();
    CentroidSeries out;
    out.mass.resize(g.nt);
    out.xc.resize(g.nt);
    out.yc.resize(g.nt);

    std::vector<char> undefined(g.nt, 0);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < g.nt; ++k) {
        double sum = 0.0, sx = 0.0, sy = 0.0;
        const auto u = field.frame(k);
        for (int j = 0; j < g.ny; ++j) {
            double row_sum = 0.0, row_sx = 0.0;
            const double* p = u.data() + static_cast<std::size_t>(j) * g.nx;
            for (int i = 0; i < g.nx; ++i) {
                row_sum += p[i];
                row_sx += p[i] * i;
            }
            sum += row_sum;
            sx += row_sx;
            sy += row_sum * j;
        }
        out.mass[k] = sum * g.dx * g.dy;
        if (sum > 0.0) {
            // the dx*dy area weight cancels in the moment ratios
            out.xc[k] = g.dx * sx / sum;
            out.yc[k] = g.dy * sy / sum;
        } else {
            out.xc[k] = std::numeric_limits<double>::quiet_NaN();
            out.yc[k] = std::numeric_limits<double>::quiet_NaN();
            undefined[k] = 1;
        }
    }
    for (int k = 0; k < g.nt; ++k) {
        if (undefined[k]) out.undefined_frames.push_back(k);
    }
    return out;
}

namespace {

// Fills NaN gaps by linear interpolation between defined neighbours; leading
// and trailing gaps copy the nearest defined value.
std::vector<double> interpolate_gaps(const std::vector<double>& s) {
    const int n = static_cast<int>(s.size());
    std::vector<double> out = s;
    int first = -1;
    for (int k = 0; k < n; ++k) {
        if (!std::isnan(s[k])) {
            first = k;
            break;
        }
    }
    if (first == -1) throw DataError("centroid undefined on every frame (zero total signal)");
    for (int k = 0; k < first; ++k) out[k] = s[first];
    int last_defined = first;
    for (int k = first + 1; k < n; ++k) {
        if (std::isnan(s[k])) continue;
        for (int m = last_defined + 1; m < k; ++m) {
            const double f = static_cast<double>(m - last_defined) / (k - last_defined);
            out[m] = (1 - f) * s[last_defined] + f * s[k];
        }
        last_defined = k;
    }
    for (int k = last_defined + 1; k < n; ++k) out[k] = s[last_defined];
    return out;
}

}  // namespace

DriftResult drift_from_field(const FieldSeries& field, const SavGolConfig& cfg) {
    const Grid& g = field.grid();
    DriftResult result;
    result.centroid = centroid_series(field);

    const auto xc = interpolate_gaps(result.centroid.xc);
    const auto yc = interpolate_gaps(result.centroid.yc);

    auto sx = savgol_smooth_and_diff(xc, cfg, g.dt);
    auto sy = savgol_smooth_and_diff(yc, cfg, g.dt);
    result.xc_smooth = std::move(sx.smoothed);
    result.yc_smooth = std::move(sy.smoothed);
    result.drift.vx = std::move(sx.derivative);
    result.drift.vy = std::move(sy.derivative);

    double mx = 0.0, my = 0.0;
    for (int k = 0; k < g.nt; ++k) {
        mx += result.drift.vx[k];
        my += result.drift.vy[k];
    }
    result.drift.mean_vx = mx / g.nt;
    result.drift.mean_vy = my / g.nt;
    return result;
}

}  // namespace plume
