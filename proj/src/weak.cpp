#include "plume/weak.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "plume/errors.hpp"

namespace plume {

void TestFunctionSpec::validate() const {
    if (sigma_x_cells < 0 || sigma_y_cells < 0 || sigma_t_frames < 0) {
        throw ConfigError("test-function widths must be non-negative");
    }
    if (!(k_sigma > 0)) throw ConfigError("k_sigma must be positive");
    if (num_centres < 0) throw ConfigError("num_centres must be non-negative");
}

namespace {

struct AxisRange {
    int lo;
    int hi;  // inclusive
};

AxisRange admissible_range(int begin, int end, double margin_cells, const char* axis) {
    const int m = static_cast<int>(std::ceil(margin_cells));
    const AxisRange r{begin + m, end - 1 - m};
    if (r.lo > r.hi) {
        throw DataError(std::string("domain too small for test-function margins on the ") + axis +
                        " axis: need " + std::to_string(2 * m + 1) + " nodes, have " +
                        std::to_string(end - begin));
    }
    return r;
}

}  // namespace

std::vector<Centre> sample_centres(const Grid& grid, FrameWindow train,
                                   const TestFunctionSpec& spec, std::uint64_t seed,
                                   int num_centres) {
    spec.validate();
    const AxisRange rx = admissible_range(0, grid.nx, spec.k_sigma * spec.sigma_x(grid), "x");
    const AxisRange ry = admissible_range(0, grid.ny, spec.k_sigma * spec.sigma_y(grid), "y");
    const AxisRange rt =
        admissible_range(train.begin, train.end, spec.k_sigma * spec.sigma_t(grid), "t");

    // uniform draws via modulo on a 64-bit generator: bias is negligible for
    // grid-sized spans and the sequence is identical on every platform
    std::mt19937_64 rng(seed);
    auto draw = [&rng](const AxisRange& r) {
        return r.lo + static_cast<int>(rng() % static_cast<std::uint64_t>(r.hi - r.lo + 1));
    };
    std::vector<Centre> centres(num_centres);
    for (auto& c : centres) {
        c.i = draw(rx);
        c.j = draw(ry);
        c.k = draw(rt);
    }
    return centres;
}

std::vector<Centre> sample_centres(const Grid& grid, FrameWindow train,
                                   const TestFunctionSpec& spec) {
    return sample_centres(grid, train, spec, spec.rng_seed, spec.num_centres);
}

std::vector<std::string> WeakSystem::column_labels() const {
    std::vector<std::string> labels;
    labels.reserve(columns.size());
    for (auto c : columns) labels.emplace_back(feature_label(c));
    return labels;
}

namespace {

// Truncated Gaussian (or derivative-of-Gaussian) sampled on grid nodes, in
// physical units. tap[d + radius] corresponds to offset s = d * spacing.
struct KernelTaps {
    int radius = 0;
    std::vector<double> w;
};

KernelTaps kernel_taps(double sigma_cells, double spacing, double k_sigma, bool derivative) {
    KernelTaps taps;
    taps.radius = static_cast<int>(std::floor(k_sigma * sigma_cells));
    taps.w.resize(2 * taps.radius + 1);
    const double sigma = sigma_cells * spacing;
    for (int d = -taps.radius; d <= taps.radius; ++d) {
        const double s = d * spacing;
        double g = std::exp(-0.5 * s * s / (sigma * sigma));
        if (derivative) g *= -s / (sigma * sigma);
        taps.w[d + taps.radius] = g;
    }
    return taps;
}

// Work volumes have the shape of the training window: index
// ((k - train.begin) * ny + j) * nx + i.
class SubVolume {
public:
    void resize(int nx, int ny, int nt) {
        nx_ = nx;
        ny_ = ny;
        nt_ = nt;
        v_.assign(static_cast<std::size_t>(nx) * ny * nt, 0.0);
    }
    double* frame(int k) { return v_.data() + static_cast<std::size_t>(k) * ny_ * nx_; }
    const double* frame(int k) const {
        return v_.data() + static_cast<std::size_t>(k) * ny_ * nx_;
    }
    double at(int j, int i, int k) const {
        return v_[(static_cast<std::size_t>(k) * ny_ + j) * nx_ + i];
    }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int nt() const { return nt_; }

private:
    int nx_ = 0, ny_ = 0, nt_ = 0;
    std::vector<double> v_;
};

void correlate_x(const SubVolume& in, SubVolume& out, const KernelTaps& taps) {
    const int nx = in.nx(), ny = in.ny(), nt = in.nt();
    const int R = taps.radius;
#pragma omp parallel for schedule(static)
    for (int k = 0; k < nt; ++k) {
        const double* src = in.frame(k);
        double* dst = out.frame(k);
        for (int j = 0; j < ny; ++j) {
            const double* row = src + static_cast<std::size_t>(j) * nx;
            double* orow = dst + static_cast<std::size_t>(j) * nx;
            for (int i = 0; i < nx; ++i) {
                const int dlo = std::max(-R, -i);
                const int dhi = std::min(R, nx - 1 - i);
                double acc = 0.0;
                for (int d = dlo; d <= dhi; ++d) acc += taps.w[d + R] * row[i + d];
                orow[i] = acc;
            }
        }
    }
}

void correlate_y(const SubVolume& in, SubVolume& out, const KernelTaps& taps) {
    const int nx = in.nx(), ny = in.ny(), nt = in.nt();
    const int R = taps.radius;
#pragma omp parallel for schedule(static)
    for (int k = 0; k < nt; ++k) {
        const double* src = in.frame(k);
        double* dst = out.frame(k);
        for (int j = 0; j < ny; ++j) {
            const int dlo = std::max(-R, -j);
            const int dhi = std::min(R, ny - 1 - j);
            double* orow = dst + static_cast<std::size_t>(j) * nx;
            std::fill(orow, orow + nx, 0.0);
            for (int d = dlo; d <= dhi; ++d) {
                const double w = taps.w[d + R];
                const double* srow = src + static_cast<std::size_t>(j + d) * nx;
                for (int i = 0; i < nx; ++i) orow[i] += w * srow[i];
            }
        }
    }
}

void correlate_t(const SubVolume& in, SubVolume& out, const KernelTaps& taps) {
    const int nx = in.nx(), ny = in.ny(), nt = in.nt();
    const int R = taps.radius;
    const std::size_t cells = static_cast<std::size_t>(nx) * ny;
#pragma omp parallel for schedule(static)
    for (int k = 0; k < nt; ++k) {
        const int dlo = std::max(-R, -k);
        const int dhi = std::min(R, nt - 1 - k);
        double* dst = out.frame(k);
        std::fill(dst, dst + cells, 0.0);
        for (int d = dlo; d <= dhi; ++d) {
            const double w = taps.w[d + R];
            const double* src = in.frame(k + d);
            for (std::size_t q = 0; q < cells; ++q) dst[q] += w * src[q];
        }
    }
}

enum class XKernel { Plain, Derivative };
enum class YKernel { Plain, Derivative };
enum class TKernel { Plain, Derivative };

struct Kernels {
    KernelTaps gx, dgx, gy, dgy, gt, dgt;
};

// One separable pass: correlate src by the chosen kernel per axis, then read
// the result at every centre of every centre set. Output is laid out per set.
void correlate_and_sample(const SubVolume& src, SubVolume& tmp0, SubVolume& tmp1,
                          const Kernels& ker, XKernel xk, YKernel yk, TKernel tk,
                          std::span<const std::vector<Centre>> centre_sets, FrameWindow train,
                          double scale, std::vector<std::vector<double>>& out) {
    correlate_x(src, tmp0, xk == XKernel::Plain ? ker.gx : ker.dgx);
    correlate_y(tmp0, tmp1, yk == YKernel::Plain ? ker.gy : ker.dgy);
    correlate_t(tmp1, tmp0, tk == TKernel::Plain ? ker.gt : ker.dgt);

    out.resize(centre_sets.size());
    for (std::size_t s = 0; s < centre_sets.size(); ++s) {
        const auto& centres = centre_sets[s];
        out[s].resize(centres.size());
        for (std::size_t m = 0; m < centres.size(); ++m) {
            const Centre& c = centres[m];
            out[s][m] = scale * tmp0.at(c.j, c.i, c.k - train.begin);
        }
    }
}

void check_centres(std::span<const std::vector<Centre>> centre_sets, const Grid& g,
                   FrameWindow train) {
    for (const auto& set : centre_sets) {
        for (const Centre& c : set) {
            if (c.i < 0 || c.i >= g.nx || c.j < 0 || c.j >= g.ny || c.k < train.begin ||
                c.k >= train.end) {
                throw DataError("test-function centre outside the training volume");
            }
        }
    }
}

}  // namespace

std::vector<WeakSystem> assemble_weak_systems(const FieldSeries& field, const DriftSeries* drift,
                                              const FeatureLibrary& library, FrameWindow train,
                                              const TestFunctionSpec& spec,
                                              std::span<const std::vector<Centre>> centre_sets) {
    const Grid& g = field.grid();
    spec.validate();
    if (train.begin < 0 || train.end > g.nt || train.size() < 2) {
        throw DataError("invalid training window");
    }
    if (library.has_advection()) {
        if (!drift) throw DataError("library " + library.id + " needs drift velocities");
        if (drift->size() != g.nt) throw DataError("drift length does not match frame count");
    }
    check_centres(centre_sets, g, train);

    Kernels ker;
    ker.gx = kernel_taps(spec.sigma_x(g), g.dx, spec.k_sigma, false);
    ker.dgx = kernel_taps(spec.sigma_x(g), g.dx, spec.k_sigma, true);
    ker.gy = kernel_taps(spec.sigma_y(g), g.dy, spec.k_sigma, false);
    ker.dgy = kernel_taps(spec.sigma_y(g), g.dy, spec.k_sigma, true);
    ker.gt = kernel_taps(spec.sigma_t(g), g.dt, spec.k_sigma, false);
    ker.dgt = kernel_taps(spec.sigma_t(g), g.dt, spec.k_sigma, true);

    const int nt_w = train.size();
    const double weight = g.dx * g.dy * g.dt;

    SubVolume src, tmp0, tmp1;
    src.resize(g.nx, g.ny, nt_w);
    tmp0.resize(g.nx, g.ny, nt_w);
    tmp1.resize(g.nx, g.ny, nt_w);

    const std::size_t cells = g.cells_per_frame();
    auto load_u = [&](SubVolume& dst) {
#pragma omp parallel for schedule(static)
        for (int k = 0; k < nt_w; ++k) {
            const auto f = field.frame(train.begin + k);
            std::copy(f.begin(), f.end(), dst.frame(k));
        }
    };

    std::vector<std::vector<double>> sampled;  // per centre set

    // right-hand side b_m = -<d_t phi, u>
    load_u(src);
    std::vector<std::vector<double>> b_vals;
    correlate_and_sample(src, tmp0, tmp1, ker, XKernel::Plain, YKernel::Plain,
                         TKernel::Derivative, centre_sets, train, -weight, b_vals);

    const int K = static_cast<int>(library.features.size());
    std::vector<WeakSystem> systems(centre_sets.size());
    for (std::size_t s = 0; s < centre_sets.size(); ++s) {
        systems[s].theta.resize(static_cast<Eigen::Index>(centre_sets[s].size()), K);
        systems[s].b = Eigen::Map<const Eigen::VectorXd>(
            b_vals[s].data(), static_cast<Eigen::Index>(b_vals[s].size()));
        systems[s].columns = library.features;
    }

    for (int col = 0; col < K; ++col) {
        const FeatureKind kind = library.features[col];
        switch (kind) {
            case FeatureKind::Const: {
#pragma omp parallel for schedule(static)
                for (int k = 0; k < nt_w; ++k) {
                    std::fill(src.frame(k), src.frame(k) + cells, 1.0);
                }
                correlate_and_sample(src, tmp0, tmp1, ker, XKernel::Plain, YKernel::Plain,
                                     TKernel::Plain, centre_sets, train, weight, sampled);
                break;
            }
            case FeatureKind::U: {
                load_u(src);
                correlate_and_sample(src, tmp0, tmp1, ker, XKernel::Plain, YKernel::Plain,
                                     TKernel::Plain, centre_sets, train, weight, sampled);
                break;
            }
            case FeatureKind::U2: {
#pragma omp parallel for schedule(static)
                for (int k = 0; k < nt_w; ++k) {
                    const auto f = field.frame(train.begin + k);
                    double* dst = src.frame(k);
                    for (std::size_t q = 0; q < cells; ++q) dst[q] = f[q] * f[q];
                }
                correlate_and_sample(src, tmp0, tmp1, ker, XKernel::Plain, YKernel::Plain,
                                     TKernel::Plain, centre_sets, train, weight, sampled);
                break;
            }
            case FeatureKind::GradSq:
            case FeatureKind::UGradSq: {
#pragma omp parallel for schedule(static)
                for (int k = 0; k < nt_w; ++k) {
                    std::vector<double> gx(cells), gy(cells);
                    const auto f = field.frame(train.begin + k);
                    frame_derivative_x(f.data(), gx.data(), g.nx, g.ny, g.dx);
                    frame_derivative_y(f.data(), gy.data(), g.nx, g.ny, g.dy);
                    double* dst = src.frame(k);
                    if (kind == FeatureKind::GradSq) {
                        for (std::size_t q = 0; q < cells; ++q) {
                            dst[q] = gx[q] * gx[q] + gy[q] * gy[q];
                        }
                    } else {
                        for (std::size_t q = 0; q < cells; ++q) {
                            dst[q] = f[q] * (gx[q] * gx[q] + gy[q] * gy[q]);
                        }
                    }
                }
                correlate_and_sample(src, tmp0, tmp1, ker, XKernel::Plain, YKernel::Plain,
                                     TKernel::Plain, centre_sets, train, weight, sampled);
                break;
            }
            case FeatureKind::Lap: {
                // -<d_x phi, u_x> - <d_y phi, u_y>
#pragma omp parallel for schedule(static)
                for (int k = 0; k < nt_w; ++k) {
                    frame_derivative_x(field.frame(train.begin + k).data(), src.frame(k), g.nx,
                                       g.ny, g.dx);
                }
                std::vector<std::vector<double>> part_x;
                correlate_and_sample(src, tmp0, tmp1, ker, XKernel::Derivative, YKernel::Plain,
                                     TKernel::Plain, centre_sets, train, -weight, part_x);
#pragma omp parallel for schedule(static)
                for (int k = 0; k < nt_w; ++k) {
                    frame_derivative_y(field.frame(train.begin + k).data(), src.frame(k), g.nx,
                                       g.ny, g.dy);
                }
                correlate_and_sample(src, tmp0, tmp1, ker, XKernel::Plain, YKernel::Derivative,
                                     TKernel::Plain, centre_sets, train, -weight, sampled);
                for (std::size_t s = 0; s < sampled.size(); ++s) {
                    for (std::size_t m = 0; m < sampled[s].size(); ++m) {
                        sampled[s][m] += part_x[s][m];
                    }
                }
                break;
            }
            case FeatureKind::AdvX: {
#pragma omp parallel for schedule(static)
                for (int k = 0; k < nt_w; ++k) {
                    const auto f = field.frame(train.begin + k);
                    const double v = drift->vx[train.begin + k];
                    double* dst = src.frame(k);
                    for (std::size_t q = 0; q < cells; ++q) dst[q] = v * f[q];
                }
                correlate_and_sample(src, tmp0, tmp1, ker, XKernel::Derivative, YKernel::Plain,
                                     TKernel::Plain, centre_sets, train, weight, sampled);
                break;
            }
            case FeatureKind::AdvY: {
#pragma omp parallel for schedule(static)
                for (int k = 0; k < nt_w; ++k) {
                    const auto f = field.frame(train.begin + k);
                    const double v = drift->vy[train.begin + k];
                    double* dst = src.frame(k);
                    for (std::size_t q = 0; q < cells; ++q) dst[q] = v * f[q];
                }
                correlate_and_sample(src, tmp0, tmp1, ker, XKernel::Plain, YKernel::Derivative,
                                     TKernel::Plain, centre_sets, train, weight, sampled);
                break;
            }
        }
        for (std::size_t s = 0; s < centre_sets.size(); ++s) {
            for (std::size_t m = 0; m < sampled[s].size(); ++m) {
                systems[s].theta(static_cast<Eigen::Index>(m), col) = sampled[s][m];
            }
        }
    }
    return systems;
}

WeakSystem assemble_weak_system(const FieldSeries& field, const DriftSeries* drift,
                                const FeatureLibrary& library, FrameWindow train,
                                const TestFunctionSpec& spec, std::span<const Centre> centres) {
    std::vector<std::vector<Centre>> sets(1);
    sets[0].assign(centres.begin(), centres.end());
    auto systems = assemble_weak_systems(field, drift, library, train, spec, sets);
    return std::move(systems[0]);
}

}  // namespace plume
