#include "plume/metrics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "plume/drift.hpp"
#include "plume/errors.hpp"

namespace plume {

namespace {

void check_same_shape(const FieldSeries& a, const FieldSeries& b) {
    if (a.grid() != b.grid()) throw DataError("fields have different grids");
}

}  // namespace

double rrmse_percent(const FieldSeries& pred, const FieldSeries& truth) {
    check_same_shape(pred, truth);
    double num = 0.0, den = 0.0;
    const auto p = pred.data();
    const auto t = truth.data();
    for (std::size_t q = 0; q < t.size(); ++q) {
        const double d = p[q] - t[q];
        num += d * d;
        den += t[q] * t[q];
    }
    if (den == 0.0) throw NumericalError("rrmse undefined: reference window is identically zero");
    return 100.0 * std::sqrt(num / den);
}

std::vector<double> framewise_rrmse_percent(const FieldSeries& pred, const FieldSeries& truth) {
    check_same_shape(pred, truth);
    const int nt = truth.grid().nt;
    std::vector<double> out(nt);
    for (int k = 0; k < nt; ++k) {
        const auto p = pred.frame(k);
        const auto t = truth.frame(k);
        double num = 0.0, den = 0.0;
        for (std::size_t q = 0; q < t.size(); ++q) {
            const double d = p[q] - t[q];
            num += d * d;
            den += t[q] * t[q];
        }
        out[k] = den == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                            : 100.0 * std::sqrt(num / den);
    }
    return out;
}

void FrontLevels::validate() const {
    if (gammas.empty()) throw ConfigError("front levels must not be empty");
    double prev = 0.0;
    for (double g : gammas) {
        if (!(g > prev) || g >= 1.0) {
            throw ConfigError("front levels must be strictly increasing and inside (0,1)");
        }
        prev = g;
    }
}

std::vector<std::vector<double>> front_radius_series(const FieldSeries& field,
                                                     const FrontLevels& levels) {
    levels.validate();
    const Grid& g = field.grid();
    std::vector<std::vector<double>> radii(g.nt, std::vector<double>(levels.gammas.size()));
#pragma omp parallel for schedule(static)
    for (int k = 0; k < g.nt; ++k) {
        const auto u = field.frame(k);
        for (std::size_t lev = 0; lev < levels.gammas.size(); ++lev) {
            const double gamma = levels.gammas[lev];
            std::size_t count = 0;
            for (double v : u) count += v >= gamma;
            const double area = static_cast<double>(count) * g.dx * g.dy;
            radii[k][lev] = std::sqrt(area / std::numbers::pi);
        }
    }
    return radii;
}

CentroidErrorSeries centroid_error_series(const FieldSeries& pred, const FieldSeries& truth) {
    check_same_shape(pred, truth);
    const CentroidSeries cp = centroid_series(pred);
    const CentroidSeries ct = centroid_series(truth);
    const int nt = truth.grid().nt;

    CentroidErrorSeries out;
    out.e_com.resize(nt);
    double sum = 0.0, sumsq = 0.0;
    int used = 0;
    for (int k = 0; k < nt; ++k) {
        if (std::isnan(cp.xc[k]) || std::isnan(ct.xc[k])) {
            out.e_com[k] = std::numeric_limits<double>::quiet_NaN();
            ++out.skipped_frames;
            continue;
        }
        const double e = std::hypot(cp.xc[k] - ct.xc[k], cp.yc[k] - ct.yc[k]);
        out.e_com[k] = e;
        sum += e;
        sumsq += e * e;
        ++used;
    }
    if (used > 0) {
        out.mae = sum / used;
        out.rmse = std::sqrt(sumsq / used);
    }
    return out;
}

}  // namespace plume
