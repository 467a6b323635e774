#pragma once

#include <span>
#include <utility>
#include <vector>

namespace plume {

// Savitzky-Golay local polynomial smoother/differentiator.
struct SavGolConfig {
    int poly_order = 3;
    int window_frames = 0;  // 0: nearest odd to 0.08*n, floored at poly_order+2

    // Nearest odd integer to 0.08*n (ties round up), never below the smallest
    // odd window admitting a degree-p fit.
    static int default_window(int n, int poly_order);

    int effective_window(int n) const;
    void validate(int series_length) const;
};

struct SavGolOutput {
    std::vector<double> smoothed;
    std::vector<double> derivative;  // per unit of `dt`
};

// Precomputed weights for a fixed series length, reusable across many series
// (e.g. one filter applied to every pixel's time series).
class SavGolFilter {
public:
    SavGolFilter(int series_length, const SavGolConfig& cfg);

    void apply(std::span<const double> series, double dt, std::span<double> smoothed,
               std::span<double> derivative) const;
    SavGolOutput operator()(std::span<const double> series, double dt) const;

    int window() const { return window_; }

private:
    int n_;
    int window_;
    int half_;
    // weight rows per evaluation offset inside the window
    std::vector<double> value_w_;
    std::vector<double> deriv_w_;
};

// Fits a degree-p polynomial on a sliding window of w samples and evaluates
// value and first derivative at each sample. Interior samples use centered
// windows; the first/last (w-1)/2 samples reuse the boundary-aligned window
// evaluated at the sample's offset, so both outputs cover every frame.
SavGolOutput savgol_smooth_and_diff(std::span<const double> series, const SavGolConfig& cfg,
                                    double dt);

}  // namespace plume
