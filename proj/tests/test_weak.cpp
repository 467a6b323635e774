#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "plume/colehopf.hpp"
#include "plume/errors.hpp"
#include "plume/model.hpp"
#include "plume/weak.hpp"
#include "reference/reference.hpp"

using namespace plume;

namespace {

FieldSeries random_field(const Grid& g, unsigned seed) {
    FieldSeries f(g);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (auto& v : f.data()) v = unif(rng);
    return f;
}

DriftSeries wavy_drift(int nt) {
    DriftSeries d;
    d.vx.resize(nt);
    d.vy.resize(nt);
    for (int k = 0; k < nt; ++k) {
        d.vx[k] = 0.08 + 0.02 * std::sin(0.3 * k);
        d.vy[k] = 0.28 - 0.01 * k / nt;
    }
    return d;
}

}  // namespace

TEST(sample_centres, margins_hold_exhaustively) {
    Grid g{64, 48, 80, 1.0, 1.0, 0.5};
    FrameWindow train{0, 48};
    TestFunctionSpec spec;
    spec.num_centres = 1000;
    spec.rng_seed = 99;
    const auto centres = sample_centres(g, train, spec);
    ASSERT_EQ(centres.size(), 1000u);
    const double mx = spec.k_sigma * spec.sigma_x(g);
    const double my = spec.k_sigma * spec.sigma_y(g);
    const double mt = spec.k_sigma * spec.sigma_t(g);
    for (const auto& c : centres) {
        EXPECT_GE(c.i, mx);
        EXPECT_LE(c.i, g.nx - 1 - mx);
        EXPECT_GE(c.j, my);
        EXPECT_LE(c.j, g.ny - 1 - my);
        EXPECT_GE(c.k - train.begin, mt);
        EXPECT_LE(c.k, train.end - 1 - mt);
    }
    // determinism
    const auto again = sample_centres(g, train, spec);
    for (std::size_t m = 0; m < centres.size(); ++m) {
        EXPECT_EQ(centres[m].i, again[m].i);
        EXPECT_EQ(centres[m].j, again[m].j);
        EXPECT_EQ(centres[m].k, again[m].k);
    }
}

TEST(sample_centres, empty_and_too_small) {
    Grid g{64, 48, 80, 1.0, 1.0, 0.5};
    TestFunctionSpec spec;
    spec.num_centres = 0;
    EXPECT_TRUE(sample_centres(g, {0, 48}, spec).empty());

    Grid tiny{10, 48, 80, 1.0, 1.0, 0.5};
    spec.num_centres = 5;
    try {
        sample_centres(tiny, {0, 48}, spec);
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("x axis"), std::string::npos) << e.what();
    }
}

TEST(feature_fields, constant_and_ramp) {
    Grid g{12, 10, 4, 0.5, 0.5, 1.0};
    FieldSeries constant(g, 0.3);
    const auto fields =
        feature_fields(constant, nullptr,
                       {FeatureKind::Const, FeatureKind::U, FeatureKind::GradSq,
                        FeatureKind::UGradSq});
    for (double v : fields.at(FeatureKind::GradSq).data()) EXPECT_DOUBLE_EQ(v, 0.0);
    for (double v : fields.at(FeatureKind::UGradSq).data()) EXPECT_DOUBLE_EQ(v, 0.0);
    for (double v : fields.at(FeatureKind::U).data()) EXPECT_DOUBLE_EQ(v, 0.3);
    for (double v : fields.at(FeatureKind::Const).data()) EXPECT_DOUBLE_EQ(v, 1.0);

    // linear ramp: second-order one-sided stencils are exact on the boundary
    FieldSeries ramp(g);
    for (int k = 0; k < g.nt; ++k) {
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) ramp.at(j, i, k) = 2.0 * g.x(i);
        }
    }
    const FieldSeries ux = derivative_x(ramp);
    for (double v : ux.data()) EXPECT_NEAR(v, 2.0, 1e-12);
}

TEST(feature_fields, sine_derivative_second_order) {
    double errs[2];
    int idx = 0;
    for (int n : {32, 64}) {
        Grid g{n, 8, 2, 1.0 / (n - 1), 1.0, 1.0};
        FieldSeries f(g);
        for (int k = 0; k < g.nt; ++k) {
            for (int j = 0; j < g.ny; ++j) {
                for (int i = 0; i < g.nx; ++i) {
                    f.at(j, i, k) = std::sin(2.0 * std::numbers::pi * g.x(i));
                }
            }
        }
        const FieldSeries ux = derivative_x(f);
        double emax = 0.0;
        for (int i = 0; i < g.nx; ++i) {
            const double exact = 2.0 * std::numbers::pi * std::cos(2.0 * std::numbers::pi * g.x(i));
            emax = std::max(emax, std::abs(ux.at(4, i, 0) - exact));
        }
        errs[idx++] = emax;
    }
    const double order = std::log2(errs[0] / errs[1]);
    EXPECT_GE(order, 1.8);
    EXPECT_LE(order, 2.2);
}

TEST(weak_assembly, constant_column_matches_separable_sums) {
    Grid g{24, 24, 20, 0.7, 1.3, 0.21};
    FrameWindow train{0, 20};
    TestFunctionSpec spec;
    const Centre centre{12, 12, 10};

    const FieldSeries u = random_field(g, 1);
    const FeatureLibrary lib = FeatureLibrary::make("Full", false);
    const WeakSystem sys = assemble_weak_system(u, nullptr, lib, train, spec,
                                                std::vector<Centre>{centre});

    // for f = 1 the triple sum factorizes into per-axis kernel sums
    auto axis_sum = [&](double sigma_cells, double spacing) {
        const int radius = static_cast<int>(std::floor(spec.k_sigma * sigma_cells));
        double s = 0.0;
        for (int d = -radius; d <= radius; ++d) {
            s += std::exp(-0.5 * d * d / (sigma_cells * sigma_cells));
        }
        return s * spacing;  // one grid-spacing weight per axis
    };
    const double expected = axis_sum(spec.sigma_x(g), 1.0) * axis_sum(spec.sigma_y(g), 1.0) *
                            axis_sum(spec.sigma_t(g), 1.0) * g.dx * g.dy * g.dt;
    const double got = sys.theta(0, 0);  // Const is the first Full column
    EXPECT_NEAR(got, expected, 1e-10 * std::abs(expected));

    const double dense = ref::weak_column_dense(FeatureKind::Const, u, nullptr, train, spec, centre);
    EXPECT_NEAR(got, dense, 1e-10 * std::abs(dense));
}

TEST(weak_assembly, time_constant_field_gives_zero_rhs) {
    Grid g{24, 24, 20, 1.0, 1.0, 0.5};
    FrameWindow train{0, 20};
    TestFunctionSpec spec;
    FieldSeries u(g);
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double v = unif(rng);
            for (int k = 0; k < g.nt; ++k) u.at(j, i, k) = v;
        }
    }
    const FeatureLibrary lib = FeatureLibrary::make("A", false);
    const auto centres = sample_centres(g, train, spec, 5, 20);
    const WeakSystem sys = assemble_weak_system(u, nullptr, lib, train, spec, centres);
    for (int m = 0; m < sys.b.size(); ++m) {
        EXPECT_NEAR(sys.b[m], 0.0, 1e-10);
    }
}

TEST(weak_assembly, dense_oracle_agrees_on_all_features) {
    Grid g{24, 24, 20, 0.7, 1.3, 0.21};
    FrameWindow train{0, 20};
    TestFunctionSpec spec;
    const FieldSeries u = random_field(g, 3);
    const DriftSeries drift = wavy_drift(g.nt);
    const FeatureLibrary lib = FeatureLibrary::make("Full", true);

    const auto centres = sample_centres(g, train, spec, 17, 50);
    const WeakSystem sys = assemble_weak_system(u, &drift, lib, train, spec, centres);

    for (std::size_t col = 0; col < lib.features.size(); ++col) {
        // per-column scale so near-zero entries are judged against the
        // column's magnitude, matching a relative comparison
        double scale = 0.0;
        std::vector<double> dense(centres.size());
        for (std::size_t m = 0; m < centres.size(); ++m) {
            dense[m] = ref::weak_column_dense(lib.features[col], u, &drift, train, spec,
                                              centres[m]);
            scale = std::max(scale, std::abs(dense[m]));
        }
        for (std::size_t m = 0; m < centres.size(); ++m) {
            EXPECT_NEAR(sys.theta(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(col)),
                        dense[m], 1e-10 * scale)
                << "feature " << feature_label(lib.features[col]) << " centre " << m;
        }
    }
    double bscale = 0.0;
    std::vector<double> bdense(centres.size());
    for (std::size_t m = 0; m < centres.size(); ++m) {
        bdense[m] = ref::weak_rhs_dense(u, train, spec, centres[m]);
        bscale = std::max(bscale, std::abs(bdense[m]));
    }
    for (std::size_t m = 0; m < centres.size(); ++m) {
        EXPECT_NEAR(sys.b[static_cast<Eigen::Index>(m)], bdense[m], 1e-10 * bscale);
    }
}

TEST(weak_assembly, only_training_frames_enter) {
    Grid g{24, 24, 30, 1.0, 1.0, 0.5};
    FrameWindow train{0, 18};
    TestFunctionSpec spec;
    FieldSeries u = random_field(g, 4);
    const FeatureLibrary lib = FeatureLibrary::make("C", false);
    const auto centres = sample_centres(g, train, spec, 8, 30);

    const WeakSystem before = assemble_weak_system(u, nullptr, lib, train, spec, centres);
    for (int k = train.end; k < g.nt; ++k) {
        for (auto& v : u.frame(k)) v += 123.456;
    }
    const WeakSystem after = assemble_weak_system(u, nullptr, lib, train, spec, centres);
    EXPECT_TRUE(before.theta == after.theta);
    EXPECT_TRUE(before.b == after.b);
}

TEST(weak_assembly, laplacian_column_consistent_with_strong_form) {
    // integration by parts: for interior centres the weak Laplacian column
    // approaches <phi, lap u> computed with central stencils
    Grid g{48, 48, 12, 1.0 / 47, 1.0 / 47, 0.1};
    FrameWindow train{0, 12};
    TestFunctionSpec spec;
    spec.sigma_t_frames = 0.4;
    FieldSeries u(g);
    for (int k = 0; k < g.nt; ++k) {
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                u.at(j, i, k) = std::sin(2 * std::numbers::pi * g.x(i)) *
                                std::cos(2 * std::numbers::pi * g.y(j));
            }
        }
    }
    const FeatureLibrary lib = FeatureLibrary::make("A", false);
    const Centre centre{24, 24, 6};
    const WeakSystem sys =
        assemble_weak_system(u, nullptr, lib, train, spec, std::vector<Centre>{centre});

    // dense <phi, lap u> with lap u from central differences
    FieldSeries lap(g);
    for (int k = 0; k < g.nt; ++k) {
        for (int j = 1; j < g.ny - 1; ++j) {
            for (int i = 1; i < g.nx - 1; ++i) {
                lap.at(j, i, k) =
                    (u.at(j, i + 1, k) - 2 * u.at(j, i, k) + u.at(j, i - 1, k)) / (g.dx * g.dx) +
                    (u.at(j + 1, i, k) - 2 * u.at(j, i, k) + u.at(j - 1, i, k)) / (g.dy * g.dy);
            }
        }
    }
    const double dense = ref::weak_inner_dense(lap, train, g, spec, centre, ref::DerivAxis::None);
    EXPECT_NEAR(sys.theta(0, 0), dense, 5e-3 * std::abs(dense));
}

TEST(weak_assembly, multi_set_matches_single_set) {
    Grid g{24, 24, 20, 1.0, 1.0, 1.0};
    FrameWindow train{0, 20};
    TestFunctionSpec spec;
    const FieldSeries u = random_field(g, 6);
    const FeatureLibrary lib = FeatureLibrary::make("C", false);
    std::vector<std::vector<Centre>> sets = {sample_centres(g, train, spec, 1, 10),
                                             sample_centres(g, train, spec, 2, 7)};
    const auto many = assemble_weak_systems(u, nullptr, lib, train, spec, sets);
    for (int s = 0; s < 2; ++s) {
        const WeakSystem single = assemble_weak_system(u, nullptr, lib, train, spec, sets[s]);
        EXPECT_TRUE(many[s].theta == single.theta);
        EXPECT_TRUE(many[s].b == single.b);
    }
}

TEST(stlsq, threshold_examples) {
    Eigen::MatrixXd theta = Eigen::MatrixXd::Identity(2, 2);
    Eigen::VectorXd b(2);
    b << 1.0, 1e-4;
    StlsqConfig cfg;
    cfg.alpha = 0.0;
    const StlsqResult r = stlsq(theta, b, cfg);
    EXPECT_NEAR(r.xi[0], 1.0, 1e-12);
    EXPECT_EQ(r.xi[1], 0.0);
    ASSERT_EQ(r.active.size(), 1u);
    EXPECT_EQ(r.active[0], 0);

    const StlsqResult zero = stlsq(theta, Eigen::VectorXd::Zero(2), cfg);
    EXPECT_TRUE(zero.empty_model);
    EXPECT_EQ(zero.xi.norm(), 0.0);
}

TEST(stlsq, planted_support_recovered) {
    std::mt19937 rng(12);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd theta(200, 4);
    for (int r = 0; r < 200; ++r) {
        for (int c = 0; c < 4; ++c) theta(r, c) = normal(rng);
    }
    Eigen::VectorXd xi_true(4);
    xi_true << 0.8, 0.0, -0.12, 0.0;
    Eigen::VectorXd b = theta * xi_true;
    for (int r = 0; r < 200; ++r) b[r] += 1e-6 * normal(rng);

    const StlsqResult fit = stlsq(theta, b, StlsqConfig{});
    ASSERT_EQ(fit.active, (std::vector<int>{0, 2}));
    EXPECT_NEAR(fit.xi[0], 0.8, 1e-3);
    EXPECT_NEAR(fit.xi[2], -0.12, 1e-3);
    // invariant: surviving coefficients sit at or above the threshold
    for (int c : fit.active) EXPECT_GE(std::abs(fit.xi[c]), 1e-3);
}

TEST(fit_library, diffusion_field_recovers_beta) {
    // exact linear-diffusion data: theta-evolution of a Gaussian bump equals
    // a heat kernel, and with a tiny bump amplitude u ~ theta - 1 behaves as
    // a pure diffusion field
    Grid g{64, 64, 40, 1.0, 1.0, 0.25};
    const double beta = 0.8;
    FieldSeries u(g);
    for (int k = 0; k < g.nt; ++k) {
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                u.at(j, i, k) =
                    ref::heat_bump(g.x(i), g.y(j), g.t(k), 31.5, 31.5, 7.0, beta, 0.5);
            }
        }
    }
    const FeatureLibrary lib = FeatureLibrary::make("A", false);
    TestFunctionSpec spec;
    spec.num_centres = 400;
    spec.rng_seed = 5;
    const FitResult fit = fit_library(u, nullptr, lib, {0, g.nt}, spec, StlsqConfig{});
    const auto active = fit.model.active_terms();
    ASSERT_EQ(active.size(), 1u);
    EXPECT_EQ(active[0], FeatureKind::Lap);
    EXPECT_NEAR(fit.model.coefficient(FeatureKind::Lap), beta, 0.1 * beta);
}

TEST(fit_library, cole_hopf_field_measured_mode) {
    const double a = 6.0, beta = 0.7;
    Grid g{72, 72, 48, 1.0, 1.0, 0.2};
    GaussianBumpSpec bump{6.0, 35.5, 35.5, 8.0};
    const ExactSolution exact = exact_solution_field(bump, HjModel{a, beta, nullptr}, g);

    FeatureLibrary lib = FeatureLibrary::make("C", true, AdvectionMode::Measured);
    const DriftSeries drift = DriftSeries::zero(g.nt);
    TestFunctionSpec spec;
    spec.num_centres = 600;
    spec.rng_seed = 9;
    const FitResult fit = fit_library(exact.field, &drift, lib, {0, g.nt}, spec, StlsqConfig{});
    EXPECT_NEAR(fit.model.coefficient(FeatureKind::GradSq), a, 0.1 * a);
    EXPECT_NEAR(fit.model.coefficient(FeatureKind::Lap), beta, 0.1 * beta);
    EXPECT_EQ(fit.model.cx, 1.0);
    EXPECT_EQ(fit.model.cy, 1.0);
}

TEST(fit_library, deterministic_given_seed) {
    Grid g{24, 24, 20, 1.0, 1.0, 1.0};
    const FieldSeries u = random_field(g, 8);
    const FeatureLibrary lib = FeatureLibrary::make("C", false);
    TestFunctionSpec spec;
    spec.num_centres = 50;
    spec.rng_seed = 1234;
    const FitResult f1 = fit_library(u, nullptr, lib, {0, 20}, spec, StlsqConfig{});
    const FitResult f2 = fit_library(u, nullptr, lib, {0, 20}, spec, StlsqConfig{});
    EXPECT_TRUE(f1.system.theta == f2.system.theta);
    EXPECT_TRUE(f1.stlsq.xi == f2.stlsq.xi);
}

TEST(sparse_model, json_round_trip) {
    SparseModel m;
    m.library_id = "C";
    m.mode = AdvectionMode::Learned;
    m.set_coefficient(FeatureKind::GradSq, 9.00543);
    m.set_coefficient(FeatureKind::Lap, 0.666307);
    m.cx = 0.93;
    m.cy = 1.07;
    const SparseModel back = SparseModel::from_json_text(m.to_json());
    EXPECT_EQ(back.library_id, "C");
    EXPECT_EQ(back.mode, AdvectionMode::Learned);
    EXPECT_DOUBLE_EQ(back.coefficient(FeatureKind::GradSq), 9.00543);
    EXPECT_DOUBLE_EQ(back.coefficient(FeatureKind::Lap), 0.666307);
    EXPECT_DOUBLE_EQ(back.cx, 0.93);
    EXPECT_DOUBLE_EQ(back.cy, 1.07);
}
