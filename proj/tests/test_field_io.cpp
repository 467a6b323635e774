#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>

#include "plume/csv.hpp"
#include "plume/errors.hpp"
#include "plume/pgm.hpp"
#include "plume/preprocess.hpp"
#include "plume/split.hpp"
#include "plume/ufld.hpp"
#include "reference/reference.hpp"

using namespace plume;

namespace {

std::vector<std::uint8_t> pgm_bytes(const std::string& header,
                                    const std::vector<std::uint8_t>& payload) {
    std::vector<std::uint8_t> bytes(header.begin(), header.end());
    bytes.insert(bytes.end(), payload.begin(), payload.end());
    return bytes;
}

}  // namespace

TEST(pgm, parses_minimal_frame) {
    const auto frame = parse_pgm(pgm_bytes("P5 2 2 255 ", {0, 255, 128, 64}));
    EXPECT_EQ(frame.width, 2);
    EXPECT_EQ(frame.height, 2);
    EXPECT_EQ(frame.at(0, 0), 0);
    EXPECT_EQ(frame.at(0, 1), 255);
    EXPECT_EQ(frame.at(1, 0), 128);
    EXPECT_EQ(frame.at(1, 1), 64);
}

TEST(pgm, skips_comment_lines) {
    const auto plain = parse_pgm(pgm_bytes("P5 2 2 255 ", {1, 2, 3, 4}));
    const auto commented = parse_pgm(pgm_bytes("P5\n# cam\n2 2\n# exposure 4\n255\n", {1, 2, 3, 4}));
    EXPECT_EQ(plain.pixels, commented.pixels);
}

TEST(pgm, truncated_payload_names_offset) {
    try {
        parse_pgm(pgm_bytes("P5 2 2 255 ", {9, 9, 9}));
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("byte 14"), std::string::npos) << e.what();
        EXPECT_NE(std::string(e.what()).find("truncated"), std::string::npos);
    }
}

TEST(pgm, rejects_bad_magic_and_maxval) {
    EXPECT_THROW(parse_pgm(pgm_bytes("P6 2 2 255 ", {0, 0, 0, 0})), DataError);
    EXPECT_THROW(parse_pgm(pgm_bytes("P5 2 2 65535 ", {0, 0, 0, 0})), DataError);
}

TEST(normalize_invert, endpoints_and_midpoint) {
    RawFrame raw;
    raw.width = 3;
    raw.height = 1;
    raw.pixels = {255, 0, 128};
    const Frame u = normalize_invert(raw);
    EXPECT_DOUBLE_EQ(u.at(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(u.at(0, 1), 1.0);
    EXPECT_DOUBLE_EQ(u.at(0, 2), 1.0 - 128.0 / 255.0);
}

TEST(normalize_invert, integer_round_trip) {
    RawFrame raw;
    raw.width = 256;
    raw.height = 1;
    raw.pixels.resize(256);
    for (int i = 0; i < 256; ++i) raw.pixels[i] = static_cast<std::uint8_t>(i);
    const Frame u = normalize_invert(raw);
    for (int i = 0; i < 256; ++i) {
        EXPECT_EQ(std::lround(255.0 * (1.0 - u.at(0, i))), i);
    }
}

TEST(preprocess, constant_frames_stay_constant) {
    RawFrame raw;
    raw.width = 32;
    raw.height = 24;
    raw.pixels.assign(32 * 24, 128);
    std::vector<RawFrame> frames(3, raw);

    PreprocessConfig cfg;
    cfg.crop = CropRect{2, 2, 28, 20};
    cfg.border_trim = 2;
    cfg.target_ny = 8;
    cfg.target_nx = 10;
    cfg.sigma_smooth = 1.0;
    PreprocessStats stats;
    const FieldSeries field = preprocess_stack(frames, cfg, &stats);

    const double expected = 1.0 - 128.0 / 255.0;
    for (double v : field.data()) EXPECT_NEAR(v, expected, 1e-12);
    EXPECT_NEAR(stats.mean_before_resize, expected, 1e-12);
    EXPECT_NEAR(stats.mean_final, expected, 1e-12);
    EXPECT_TRUE(field.normalized());
}

TEST(preprocess, zero_sigma_leaves_resize_output) {
    std::mt19937 rng(11);
    RawFrame raw;
    raw.width = 16;
    raw.height = 16;
    raw.pixels.resize(256);
    for (auto& p : raw.pixels) p = static_cast<std::uint8_t>(rng() % 256);
    std::vector<RawFrame> frames(2, raw);

    PreprocessConfig cfg;
    cfg.target_ny = 8;
    cfg.target_nx = 8;
    cfg.sigma_smooth = 0.0;
    const FieldSeries smoothed = preprocess_stack(frames, cfg);

    const Frame resized = bilinear_resize(normalize_invert(raw), 8, 8);
    for (int j = 0; j < 8; ++j) {
        for (int i = 0; i < 8; ++i) {
            EXPECT_DOUBLE_EQ(smoothed.at(j, i, 0), resized.at(j, i));
        }
    }
}

TEST(preprocess, checkerboard_resize_matches_bilinear_oracle) {
    RawFrame raw;
    raw.width = 4;
    raw.height = 4;
    raw.pixels.resize(16);
    for (int j = 0; j < 4; ++j) {
        for (int i = 0; i < 4; ++i) {
            raw.pixels[j * 4 + i] = ((i + j) % 2) ? 255 : 0;
        }
    }
    const Frame u = normalize_invert(raw);
    const Frame resized = bilinear_resize(u, 2, 2);
    for (int j = 0; j < 2; ++j) {
        for (int i = 0; i < 2; ++i) {
            // half-pixel-centered sample positions on the 4x4 source
            const double sy = (j + 0.5) * 4.0 / 2.0 - 0.5;
            const double sx = (i + 0.5) * 4.0 / 2.0 - 0.5;
            EXPECT_NEAR(resized.at(j, i), ref::bilinear_at(u, sy, sx), 1e-15);
        }
    }
}

TEST(preprocess, crop_out_of_bounds_rejected) {
    RawFrame raw;
    raw.width = 10;
    raw.height = 10;
    raw.pixels.assign(100, 0);
    std::vector<RawFrame> frames(2, raw);
    PreprocessConfig cfg;
    cfg.crop = CropRect{4, 4, 8, 8};
    EXPECT_THROW(preprocess_stack(frames, cfg), DataError);

    cfg.crop = CropRect{0, 0, 10, 10};
    cfg.border_trim = 4;  // leaves 2x2
    EXPECT_THROW(preprocess_stack(frames, cfg), DataError);
}

TEST(gaussian_smooth, identity_and_constant) {
    Frame f(6, 7);
    for (std::size_t q = 0; q < f.v.size(); ++q) f.v[q] = static_cast<double>(q % 5);
    const Frame same = gaussian_smooth(f, 0.0);
    EXPECT_EQ(same.v, f.v);

    Frame c(6, 7, 0.375);
    const Frame smoothed = gaussian_smooth(c, 2.5);
    for (double v : smoothed.v) EXPECT_NEAR(v, 0.375, 1e-12);
}

TEST(gaussian_smooth, impulse_matches_dense_oracle) {
    Frame f(15, 17, 0.0);
    f.at(7, 8) = 1.0;
    const Frame fast = gaussian_smooth(f, 1.0);
    const Frame oracle = ref::dense_gaussian_smooth(f, 1.0);
    for (std::size_t q = 0; q < f.v.size(); ++q) {
        EXPECT_NEAR(fast.v[q], oracle.v[q], 1e-14);
    }
}

TEST(gaussian_smooth, range_and_positivity_preserved) {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        Frame f(12, 9);
        for (auto& v : f.v) v = unif(rng);
        const double max_in = *std::max_element(f.v.begin(), f.v.end());
        const Frame s = gaussian_smooth(f, 0.5 + 0.6 * trial);
        for (double v : s.v) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, max_in + 1e-12);
        }
    }
}

TEST(preprocess, smooth_field_mean_preserved_by_resize) {
    RawFrame raw;
    raw.width = 64;
    raw.height = 64;
    raw.pixels.resize(64 * 64);
    for (int j = 0; j < 64; ++j) {
        for (int i = 0; i < 64; ++i) {
            const double g = std::exp(-((i - 32.0) * (i - 32.0) + (j - 32.0) * (j - 32.0)) /
                                      (2.0 * 12.0 * 12.0));
            raw.pixels[j * 64 + i] = static_cast<std::uint8_t>(255 - std::lround(200 * g));
        }
    }
    std::vector<RawFrame> frames(2, raw);
    PreprocessConfig cfg;
    cfg.target_ny = 20;
    cfg.target_nx = 20;
    PreprocessStats stats;
    preprocess_stack(frames, cfg, &stats);
    EXPECT_NEAR(stats.frame_mean_after_resize[0], stats.frame_mean_before_resize[0],
                0.01 * stats.frame_mean_before_resize[0]);
}

TEST(smoothing_sweep, zero_sigma_and_constant_rows) {
    Frame c(8, 8, 0.25);
    const double sigmas[] = {0.0, 1.0};
    const auto rows = smoothing_sweep(c, sigmas);
    EXPECT_DOUBLE_EQ(rows[0].rms_diff, 0.0);
    EXPECT_DOUBLE_EQ(rows[0].max_diff, 0.0);
    EXPECT_NEAR(rows[1].rms_diff, 0.0, 1e-12);
    EXPECT_NEAR(rows[1].max_diff, 0.0, 1e-12);
}

TEST(smoothing_sweep, impulse_matches_dense_oracle) {
    Frame f(11, 11, 0.0);
    f.at(5, 5) = 1.0;
    const double sigmas[] = {1.0};
    const auto rows = smoothing_sweep(f, sigmas);

    const Frame oracle = ref::dense_gaussian_smooth(f, 1.0);
    double sq = 0.0, mx = 0.0;
    for (std::size_t q = 0; q < f.v.size(); ++q) {
        const double d = oracle.v[q] - f.v[q];
        sq += d * d;
        mx = std::max(mx, std::abs(d));
    }
    EXPECT_NEAR(rows[0].rms_diff, std::sqrt(sq / f.v.size()), 1e-13);
    EXPECT_NEAR(rows[0].max_diff, mx, 1e-13);
}

TEST(split, documented_boundaries) {
    const SplitWindows w = split_chronological(1009);
    EXPECT_EQ(w.train.begin, 0);
    EXPECT_EQ(w.train.end, 605);
    EXPECT_EQ(w.validation.end, 807);
    EXPECT_EQ(w.test.end, 1009);

    const SplitWindows small = split_chronological(10);
    EXPECT_EQ(small.train.end, 6);
    EXPECT_EQ(small.validation.end, 8);
    EXPECT_EQ(small.test.end, 10);
}

TEST(split, short_window_rejected) {
    EXPECT_THROW(split_chronological(4), DataError);
    EXPECT_THROW(split_chronological(10, {0.5, 0.2, 0.2}), DataError);  // fractions sum != 1
}

TEST(ufld, round_trip_bit_exact) {
    Grid g{5, 4, 3, 0.5, 0.25, 0.125};
    FieldSeries field(g);
    std::mt19937 rng(7);
    std::uniform_real_distribution<float> unif(0.0f, 1.0f);
    for (auto& v : field.data()) v = unif(rng);  // f32-representable by construction

    const auto path = std::filesystem::temp_directory_path() / "plume_roundtrip.ufld";
    write_ufld(path, field);
    const FieldSeries back = read_ufld(path);
    EXPECT_EQ(back.grid(), g);
    for (std::size_t q = 0; q < field.data().size(); ++q) {
        EXPECT_EQ(back.data()[q], field.data()[q]);
    }
    std::filesystem::remove(path);
}

TEST(ufld, bad_magic_and_truncation_rejected) {
    const auto dir = std::filesystem::temp_directory_path();
    const auto bad = dir / "plume_bad.ufld";
    {
        std::string junk = "XXXX";
        junk.resize(64, '\0');
        write_file_atomic(bad, junk);
    }
    EXPECT_THROW(read_ufld(bad), DataError);

    Grid g{5, 4, 3, 1, 1, 1};
    FieldSeries field(g);
    const auto path = dir / "plume_trunc.ufld";
    write_ufld(path, field);
    // chop the payload
    const auto size = std::filesystem::file_size(path);
    std::filesystem::resize_file(path, size - 7);
    EXPECT_THROW(read_ufld(path), DataError);
    std::filesystem::remove(bad);
    std::filesystem::remove(path);
}
