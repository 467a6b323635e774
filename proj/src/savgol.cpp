#include "plume/savgol.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "plume/errors.hpp"

namespace plume {

int SavGolConfig::default_window(int n, int poly_order) {
    const int half = static_cast<int>(std::llround((0.08 * n - 1.0) / 2.0));
    int w = 2 * half + 1;
    int floor_w = poly_order + 2;
    if (floor_w % 2 == 0) ++floor_w;
    return std::max(w, floor_w);
}

int SavGolConfig::effective_window(int n) const {
    return window_frames > 0 ? window_frames : default_window(n, poly_order);
}

void SavGolConfig::validate(int series_length) const {
    const int w = effective_window(series_length);
    if (poly_order < 0) throw DataError("poly_order must be non-negative");
    if (w % 2 == 0) throw DataError("window_frames must be odd, got " + std::to_string(w));
    if (w < poly_order + 2) {
        throw DataError("window_frames must be at least poly_order + 2");
    }
    if (series_length < w) {
        throw DataError("series of length " + std::to_string(series_length) +
                        " is shorter than the filter window " + std::to_string(w));
    }
}

SavGolFilter::SavGolFilter(int series_length, const SavGolConfig& cfg) : n_(series_length) {
    cfg.validate(series_length);
    window_ = cfg.effective_window(series_length);
    half_ = (window_ - 1) / 2;
    const int w = window_;
    const int p = cfg.poly_order;

    // Local coordinate centered at the window midpoint for conditioning.
    // Offset l indexes the evaluated sample inside the window (interior
    // frames always use l = half).
    Eigen::MatrixXd vander(w, p + 1);
    for (int m = 0; m < w; ++m) {
        double pw = 1.0;
        for (int q = 0; q <= p; ++q) {
            vander(m, q) = pw;
            pw *= (m - half_);
        }
    }
    const Eigen::MatrixXd gram = vander.transpose() * vander;
    const Eigen::MatrixXd projector = gram.ldlt().solve(vander.transpose());

    value_w_.resize(static_cast<std::size_t>(w) * w);
    deriv_w_.resize(static_cast<std::size_t>(w) * w);
    for (int l = 0; l < w; ++l) {
        Eigen::RowVectorXd basis(p + 1), dbasis(p + 1);
        const double x = l - half_;
        double pw = 1.0;
        for (int q = 0; q <= p; ++q) {
            basis(q) = pw;
            dbasis(q) = q == 0 ? 0.0 : q * std::pow(x, q - 1);
            pw *= x;
        }
        const Eigen::RowVectorXd vw = basis * projector;
        const Eigen::RowVectorXd dw = dbasis * projector;
        for (int m = 0; m < w; ++m) {
            value_w_[static_cast<std::size_t>(l) * w + m] = vw(m);
            deriv_w_[static_cast<std::size_t>(l) * w + m] = dw(m);
        }
    }
}

void SavGolFilter::apply(std::span<const double> series, double dt, std::span<double> smoothed,
                         std::span<double> derivative) const {
    const int n = static_cast<int>(series.size());
    if (n != n_) throw DataError("series length does not match the filter");
    const int w = window_;
    for (int k = 0; k < n; ++k) {
        const int start = std::clamp(k - half_, 0, n - w);
        const int l = k - start;
        const double* vw = value_w_.data() + static_cast<std::size_t>(l) * w;
        const double* dw = deriv_w_.data() + static_cast<std::size_t>(l) * w;
        double sv = 0.0, sd = 0.0;
        for (int m = 0; m < w; ++m) {
            sv += vw[m] * series[start + m];
            sd += dw[m] * series[start + m];
        }
        smoothed[k] = sv;
        derivative[k] = sd / dt;
    }
}

SavGolOutput SavGolFilter::operator()(std::span<const double> series, double dt) const {
    SavGolOutput out;
    out.smoothed.resize(series.size());
    out.derivative.resize(series.size());
    apply(series, dt, out.smoothed, out.derivative);
    return out;
}

SavGolOutput savgol_smooth_and_diff(std::span<const double> series, const SavGolConfig& cfg,
                                    double dt) {
    SavGolFilter filter(static_cast<int>(series.size()), cfg);
    return filter(series, dt);
}

}  // namespace plume
