#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "plume/drift.hpp"
#include "plume/errors.hpp"
#include "plume/savgol.hpp"
#include "reference/reference.hpp"

using namespace plume;

namespace {

// rigid Gaussian blob translating at (vx, vy)
FieldSeries translating_blob(const Grid& g, double vx, double vy, double sigma = 8.0) {
    FieldSeries field(g);
    const double x0 = 0.35 * g.lx();
    const double y0 = 0.40 * g.ly();
    for (int k = 0; k < g.nt; ++k) {
        const double cx = x0 + vx * g.t(k);
        const double cy = y0 + vy * g.t(k);
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                const double r2 = (g.x(i) - cx) * (g.x(i) - cx) + (g.y(j) - cy) * (g.y(j) - cy);
                field.at(j, i, k) = std::exp(-0.5 * r2 / (sigma * sigma));
            }
        }
    }
    return field;
}

}  // namespace

TEST(savgol, constant_series_reproduced) {
    std::vector<double> s(40, 3.25);
    SavGolConfig cfg;
    cfg.window_frames = 9;
    const auto out = savgol_smooth_and_diff(s, cfg, 0.1);
    for (int k = 0; k < 40; ++k) {
        EXPECT_NEAR(out.smoothed[k], 3.25, 1e-12);
        EXPECT_NEAR(out.derivative[k], 0.0, 1e-12);
    }
}

TEST(savgol, quadratic_derivative_exact) {
    const double dt = 0.2;
    std::vector<double> s(60);
    for (int k = 0; k < 60; ++k) s[k] = (k * dt) * (k * dt);
    SavGolConfig cfg;  // p = 3
    cfg.window_frames = 11;
    const auto out = savgol_smooth_and_diff(s, cfg, dt);
    for (int k = 0; k < 60; ++k) {
        EXPECT_NEAR(out.smoothed[k], s[k], 1e-10);
        EXPECT_NEAR(out.derivative[k], 2.0 * k * dt, 1e-9);
    }
}

TEST(savgol, cubic_reproduction_to_1e10) {
    const double dt = 0.05;
    std::vector<double> s(81);
    auto poly = [](double t) { return 0.3 - 1.7 * t + 0.9 * t * t - 0.21 * t * t * t; };
    auto dpoly = [](double t) { return -1.7 + 1.8 * t - 0.63 * t * t; };
    for (int k = 0; k < 81; ++k) s[k] = poly(k * dt);
    SavGolConfig cfg;
    cfg.window_frames = 13;
    const auto out = savgol_smooth_and_diff(s, cfg, dt);
    const int half = 6;
    for (int k = half; k < 81 - half; ++k) {
        EXPECT_NEAR(out.smoothed[k], poly(k * dt), 1e-10);
        EXPECT_NEAR(out.derivative[k], dpoly(k * dt), 1e-10);
    }
}

TEST(savgol, noisy_line_slope_matches_global_fit) {
    std::mt19937 rng(21);
    std::normal_distribution<double> noise(0.0, 0.05);
    const double dt = 1.0;
    std::vector<double> s(200);
    for (int k = 0; k < 200; ++k) s[k] = 4.0 + 0.37 * k + noise(rng);

    SavGolConfig cfg;
    const auto out = savgol_smooth_and_diff(s, cfg, dt);
    const auto [icept, slope] = ref::line_fit(s);
    (void)icept;
    double mean_deriv = 0.0;
    for (double d : out.derivative) mean_deriv += d;
    mean_deriv /= 200.0;
    EXPECT_NEAR(mean_deriv, slope, 0.01);
}

TEST(savgol, window_shorter_than_series_required) {
    std::vector<double> s(5, 1.0);
    SavGolConfig cfg;
    cfg.window_frames = 7;
    EXPECT_THROW(savgol_smooth_and_diff(s, cfg, 1.0), DataError);
}

TEST(savgol, default_window_rule) {
    EXPECT_EQ(SavGolConfig::default_window(1009, 3), 81);  // 0.08*1009 = 80.72
    EXPECT_EQ(SavGolConfig::default_window(100, 3), 9);    // tie at 8 rounds up
    EXPECT_EQ(SavGolConfig::default_window(20, 3), 5);     // floored at p+2
}

TEST(centroid, impulse_uniform_and_midpoint) {
    Grid g{9, 7, 2, 0.5, 2.0, 1.0};
    FieldSeries impulse(g);
    impulse.at(3, 4, 0) = 1.0;
    impulse.at(3, 4, 1) = 1.0;
    auto c = centroid_series(impulse);
    EXPECT_DOUBLE_EQ(c.xc[0], g.x(4));
    EXPECT_DOUBLE_EQ(c.yc[0], g.y(3));

    FieldSeries uniform(g, 0.7);
    c = centroid_series(uniform);
    EXPECT_NEAR(c.xc[0], g.lx() / 2.0, 1e-12);
    EXPECT_NEAR(c.yc[0], g.ly() / 2.0, 1e-12);

    FieldSeries pair(g);
    pair.at(1, 2, 0) = 0.5;
    pair.at(5, 6, 0) = 0.5;
    pair.at(1, 2, 1) = 0.5;
    pair.at(5, 6, 1) = 0.5;
    c = centroid_series(pair);
    EXPECT_NEAR(c.xc[0], 0.5 * (g.x(2) + g.x(6)), 1e-12);
    EXPECT_NEAR(c.yc[0], 0.5 * (g.y(1) + g.y(5)), 1e-12);
}

TEST(centroid, translation_equivariant_and_scale_invariant) {
    Grid g{16, 12, 2, 1.0, 1.0, 1.0};
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    FieldSeries f(g);
    for (int j = 0; j < 8; ++j) {
        for (int i = 0; i < 10; ++i) {
            f.at(j, i, 0) = unif(rng);
        }
    }
    FieldSeries shifted(g), scaled(g);
    for (int j = 0; j < 8; ++j) {
        for (int i = 0; i < 10; ++i) {
            shifted.at(j + 3, i + 5, 0) = f.at(j, i, 0);
            scaled.at(j, i, 0) = 4.0 * f.at(j, i, 0);
        }
    }
    const auto c0 = centroid_series(f);
    const auto cs = centroid_series(shifted);
    const auto cc = centroid_series(scaled);
    EXPECT_DOUBLE_EQ(cs.xc[0], c0.xc[0] + 5.0 * g.dx);
    EXPECT_DOUBLE_EQ(cs.yc[0], c0.yc[0] + 3.0 * g.dy);
    EXPECT_DOUBLE_EQ(cc.xc[0], c0.xc[0]);
    EXPECT_DOUBLE_EQ(cc.yc[0], c0.yc[0]);
}

TEST(centroid, zero_frame_reported_not_silently_zero) {
    Grid g{8, 8, 3, 1.0, 1.0, 1.0};
    FieldSeries f(g);
    f.at(4, 4, 0) = 1.0;
    f.at(4, 4, 2) = 1.0;  // frame 1 left empty
    const auto c = centroid_series(f);
    ASSERT_EQ(c.undefined_frames.size(), 1u);
    EXPECT_EQ(c.undefined_frames[0], 1);
    EXPECT_TRUE(std::isnan(c.xc[1]));
    EXPECT_EQ(c.mass[1], 0.0);
}

TEST(drift, translating_blob_velocity_recovered) {
    // blob kept > 7 sigma away from every boundary so the truncated tails
    // cannot wobble the centroid above the 1e-6 tolerance
    Grid g{100, 100, 61, 1.0, 1.0, 0.25};
    const double vx = 0.9, vy = -0.6;
    const FieldSeries field = translating_blob(g, vx, vy, 4.5);
    SavGolConfig cfg;
    cfg.window_frames = 9;
    const DriftResult result = drift_from_field(field, cfg);
    // interior frames only: the trajectory is linear so the filter is exact
    for (int k = 4; k < g.nt - 4; ++k) {
        EXPECT_NEAR(result.drift.vx[k], vx, 1e-6);
        EXPECT_NEAR(result.drift.vy[k], vy, 1e-6);
    }
}

TEST(drift, stationary_blob_zero_velocity) {
    Grid g{40, 40, 21, 1.0, 1.0, 0.5};
    const FieldSeries field = translating_blob(g, 0.0, 0.0, 5.0);
    const DriftResult result = drift_from_field(field);
    for (int k = 0; k < g.nt; ++k) {
        EXPECT_NEAR(result.drift.vx[k], 0.0, 1e-9);
        EXPECT_NEAR(result.drift.vy[k], 0.0, 1e-9);
    }
}

TEST(drift, zero_signal_frame_interpolated) {
    Grid g{20, 20, 11, 1.0, 1.0, 1.0};
    FieldSeries field = translating_blob(g, 0.5, 0.0, 3.0);
    std::fill(field.frame(5).begin(), field.frame(5).end(), 0.0);
    SavGolConfig cfg;
    cfg.window_frames = 5;
    const DriftResult result = drift_from_field(field, cfg);
    ASSERT_EQ(result.centroid.undefined_frames.size(), 1u);
    for (double v : result.drift.vx) EXPECT_TRUE(std::isfinite(v));
}
