#include "plume/colehopf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "plume/errors.hpp"

namespace plume {

void HjModel::validate(bool need_a) const {
    if (!(beta > 0.0)) throw NumericalError("structural analysis requires beta > 0");
    if (need_a && a == 0.0) {
        throw NumericalError("the exponential change of variables requires a != 0");
    }
}

FieldSeries cole_hopf_forward(const FieldSeries& u, double a, double beta) {
    HjModel{a, beta}.validate();
    FieldSeries theta(u.grid());
    const auto src = u.data();
    auto dst = theta.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t q = 0; q < static_cast<std::int64_t>(src.size()); ++q) {
        dst[q] = std::exp(a * src[q] / beta);
    }
    return theta;
}

FieldSeries cole_hopf_inverse(const FieldSeries& theta, double a, double beta) {
    HjModel{a, beta}.validate();
    FieldSeries u(theta.grid());
    const auto src = theta.data();
    auto dst = u.data();
    for (std::size_t q = 0; q < src.size(); ++q) {
        if (!(src[q] > 0.0)) {
            throw NumericalError("inverse transform requires strictly positive theta");
        }
        dst[q] = beta / a * std::log(src[q]);
    }
    return u;
}

void GaussianBumpSpec::validate() const {
    if (!(amplitude > 0.0)) throw ConfigError("bump amplitude must be positive");
    if (!(sigma0 > 0.0)) throw ConfigError("bump width must be positive");
}

ExactSolution exact_solution_field(const GaussianBumpSpec& spec, const HjModel& model,
                                   const Grid& grid) {
    spec.validate();
    model.validate();
    grid.validate();
    if (model.drift && model.drift->size() != grid.nt) {
        throw DataError("drift length does not match frame count");
    }

    // cumulative drift displacement X(t_k) by the trapezoid rule
    std::vector<double> shift_x(grid.nt, 0.0), shift_y(grid.nt, 0.0);
    if (model.drift) {
        for (int k = 1; k < grid.nt; ++k) {
            shift_x[k] = shift_x[k - 1] +
                         0.5 * grid.dt * (model.drift->vx[k - 1] + model.drift->vx[k]);
            shift_y[k] = shift_y[k - 1] +
                         0.5 * grid.dt * (model.drift->vy[k - 1] + model.drift->vy[k]);
        }
    }

    ExactSolution out{FieldSeries(grid), false};
    std::vector<char> warn(grid.nt, 0);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < grid.nt; ++k) {
        const double t = grid.t(k);
        const double var = spec.sigma0 * spec.sigma0 + 2.0 * model.beta * t;
        const double amp = spec.amplitude * (spec.sigma0 * spec.sigma0) / var;
        const double cx = spec.x0 + shift_x[k];
        const double cy = spec.y0 + shift_y[k];
        auto frame = out.field.frame(k);
        for (int j = 0; j < grid.ny; ++j) {
            const double dy = grid.y(j) - cy;
            for (int i = 0; i < grid.nx; ++i) {
                const double dx = grid.x(i) - cx;
                const double theta = 1.0 + amp * std::exp(-0.5 * (dx * dx + dy * dy) / var);
                frame[static_cast<std::size_t>(j) * grid.nx + i] =
                    model.beta / model.a * std::log(theta);
            }
        }
        // bump no longer negligible near the boundary?
        const double margin = std::min({cx, cy, grid.lx() - cx, grid.ly() - cy});
        if (margin < 4.0 * std::sqrt(var)) warn[k] = 1;
    }
    out.boundary_warning = std::any_of(warn.begin(), warn.end(), [](char c) { return c != 0; });
    return out;
}

LinearizationReport verify_linearization(const FieldSeries& field, const HjModel& model) {
    model.validate();
    const Grid& g = field.grid();
    const FieldSeries theta = cole_hopf_forward(field, model.a, model.beta);

    LinearizationReport report;
    report.frame_rms.assign(g.nt, std::numeric_limits<double>::quiet_NaN());

    std::vector<double> frame_max(g.nt, 0.0), frame_sum(g.nt, 0.0);
    std::vector<std::size_t> frame_count(g.nt, 0);
#pragma omp parallel for schedule(static)
    for (int k = 1; k < g.nt - 1; ++k) {
        const auto prev = theta.frame(k - 1);
        const auto cur = theta.frame(k);
        const auto next = theta.frame(k + 1);
        const double vx = model.drift ? model.drift->vx[k] : 0.0;
        const double vy = model.drift ? model.drift->vy[k] : 0.0;
        double sum = 0.0, mx = 0.0;
        std::size_t count = 0;
        for (int j = 1; j < g.ny - 1; ++j) {
            for (int i = 1; i < g.nx - 1; ++i) {
                const std::size_t c = static_cast<std::size_t>(j) * g.nx + i;
                const double th_t = (next[c] - prev[c]) / (2.0 * g.dt);
                const double th_x = (cur[c + 1] - cur[c - 1]) / (2.0 * g.dx);
                const double th_y = (cur[c + g.nx] - cur[c - g.nx]) / (2.0 * g.dy);
                const double lap = (cur[c + 1] - 2.0 * cur[c] + cur[c - 1]) / (g.dx * g.dx) +
                                   (cur[c + g.nx] - 2.0 * cur[c] + cur[c - g.nx]) /
                                       (g.dy * g.dy);
                const double r = th_t + vx * th_x + vy * th_y - model.beta * lap;
                sum += r * r;
                mx = std::max(mx, std::abs(r));
                ++count;
            }
        }
        frame_sum[k] = sum;
        frame_max[k] = mx;
        frame_count[k] = count;
    }
    double total = 0.0;
    std::size_t total_count = 0;
    for (int k = 1; k < g.nt - 1; ++k) {
        report.frame_rms[k] = std::sqrt(frame_sum[k] / static_cast<double>(frame_count[k]));
        report.max_abs = std::max(report.max_abs, frame_max[k]);
        total += frame_sum[k];
        total_count += frame_count[k];
    }
    if (total_count > 0) report.rms = std::sqrt(total / static_cast<double>(total_count));
    return report;
}

namespace {

inline int mirror(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

}  // namespace

MonitorReport structural_monitors(const FieldSeries& field, const HjModel& model) {
    model.validate();
    const Grid& g = field.grid();
    const double area = g.dx * g.dy;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    MonitorReport rep;
    rep.min_u.resize(g.nt);
    rep.max_u.resize(g.nt);
    rep.mass.resize(g.nt);
    rep.exp_mass.resize(g.nt);
    rep.dissipation.resize(g.nt);
    rep.dissipation_rhs.resize(g.nt);
    rep.mass_rhs.resize(g.nt);
    rep.dissipation_rate.assign(g.nt, nan);
    rep.mass_rate.assign(g.nt, nan);

#pragma omp parallel for schedule(static)
    for (int k = 0; k < g.nt; ++k) {
        const auto u = field.frame(k);
        double mn = u[0], mx = u[0];
        double mass = 0.0, emass = 0.0, diss = 0.0, diss_grad = 0.0, gradsq_sum = 0.0;
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                const std::size_t c = static_cast<std::size_t>(j) * g.nx + i;
                const double uc = u[c];
                mn = std::min(mn, uc);
                mx = std::max(mx, uc);
                mass += uc;
                const double e1 = std::exp(model.a * uc / model.beta);
                emass += e1;
                const double e2 = e1 * e1;
                diss += e2;
                // same zero-flux stencil the rollout uses
                const double uw = u[static_cast<std::size_t>(j) * g.nx + mirror(i - 1, g.nx)];
                const double ue = u[static_cast<std::size_t>(j) * g.nx + mirror(i + 1, g.nx)];
                const double un = u[static_cast<std::size_t>(mirror(j - 1, g.ny)) * g.nx + i];
                const double us = u[static_cast<std::size_t>(mirror(j + 1, g.ny)) * g.nx + i];
                const double ux = 0.5 * (ue - uw) / g.dx;
                const double uy = 0.5 * (us - un) / g.dy;
                const double gradsq = ux * ux + uy * uy;
                gradsq_sum += gradsq;
                diss_grad += e2 * gradsq;
            }
        }
        rep.min_u[k] = mn;
        rep.max_u[k] = mx;
        rep.mass[k] = mass * area;
        rep.exp_mass[k] = emass * area;
        rep.dissipation[k] = diss * area;
        rep.dissipation_rhs[k] =
            -2.0 * model.a * model.a / model.beta * diss_grad * area;
        rep.mass_rhs[k] = model.a * gradsq_sum * area;
    }
    for (int k = 1; k < g.nt - 1; ++k) {
        rep.dissipation_rate[k] = (rep.dissipation[k + 1] - rep.dissipation[k - 1]) / (2 * g.dt);
        rep.mass_rate[k] = (rep.mass[k + 1] - rep.mass[k - 1]) / (2 * g.dt);
    }
    return rep;
}

}  // namespace plume
