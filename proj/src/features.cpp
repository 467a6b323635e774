#include "plume/features.hpp"

#include <algorithm>

#include "plume/errors.hpp"

namespace plume {

std::string_view feature_label(FeatureKind kind) {
    switch (kind) {
        case FeatureKind::Const: return "1";
        case FeatureKind::U: return "u";
        case FeatureKind::U2: return "u^2";
        case FeatureKind::GradSq: return "|grad u|^2";
        case FeatureKind::UGradSq: return "u|grad u|^2";
        case FeatureKind::Lap: return "lap u";
        case FeatureKind::AdvX: return "vx ux";
        case FeatureKind::AdvY: return "vy uy";
    }
    return "?";
}

FeatureKind feature_from_label(std::string_view label) {
    for (int q = 0; q < 8; ++q) {
        const auto kind = static_cast<FeatureKind>(q);
        if (feature_label(kind) == label) return kind;
    }
    throw DataError("unknown feature label: " + std::string(label));
}

std::string_view advection_mode_label(AdvectionMode mode) {
    return mode == AdvectionMode::Learned ? "learned" : "measured";
}

AdvectionMode advection_mode_from_label(std::string_view label) {
    if (label == "learned") return AdvectionMode::Learned;
    if (label == "measured") return AdvectionMode::Measured;
    throw DataError("unknown advection mode: " + std::string(label));
}

const std::vector<std::string>& FeatureLibrary::known_ids() {
    static const std::vector<std::string> ids = {"A", "B", "C", "C-alt", "C-both", "Full"};
    return ids;
}

FeatureLibrary FeatureLibrary::make(std::string_view id, bool with_drift, AdvectionMode mode) {
    FeatureLibrary lib;
    lib.id = std::string(id);
    lib.advection_mode = mode;
    if (id == "A") {
        lib.features = {FeatureKind::Lap};
    } else if (id == "B") {
        lib.features = {FeatureKind::U, FeatureKind::Lap};
    } else if (id == "C") {
        lib.features = {FeatureKind::GradSq, FeatureKind::Lap};
    } else if (id == "C-alt") {
        lib.features = {FeatureKind::UGradSq, FeatureKind::Lap};
    } else if (id == "C-both") {
        lib.features = {FeatureKind::GradSq, FeatureKind::UGradSq, FeatureKind::Lap};
    } else if (id == "Full") {
        lib.features = {FeatureKind::Const,  FeatureKind::U,        FeatureKind::U2,
                        FeatureKind::GradSq, FeatureKind::UGradSq, FeatureKind::Lap};
    } else {
        throw ConfigError("unknown library id: " + std::string(id));
    }
    if (with_drift) {
        lib.features.push_back(FeatureKind::AdvX);
        lib.features.push_back(FeatureKind::AdvY);
    }
    return lib;
}

std::vector<FeatureKind> FeatureLibrary::intrinsic() const {
    std::vector<FeatureKind> out;
    for (auto f : features) {
        if (f != FeatureKind::AdvX && f != FeatureKind::AdvY) out.push_back(f);
    }
    return out;
}

bool FeatureLibrary::has_advection() const {
    return std::find(features.begin(), features.end(), FeatureKind::AdvX) != features.end();
}

void frame_derivative_x(const double* u, double* out, int nx, int ny, double dx) {
    const double inv2 = 1.0 / (2.0 * dx);
    for (int j = 0; j < ny; ++j) {
        const double* row = u + static_cast<std::size_t>(j) * nx;
        double* drow = out + static_cast<std::size_t>(j) * nx;
        drow[0] = (-3.0 * row[0] + 4.0 * row[1] - row[2]) * inv2;
        for (int i = 1; i < nx - 1; ++i) {
            drow[i] = (row[i + 1] - row[i - 1]) * inv2;
        }
        drow[nx - 1] = (3.0 * row[nx - 1] - 4.0 * row[nx - 2] + row[nx - 3]) * inv2;
    }
}

void frame_derivative_y(const double* u, double* out, int nx, int ny, double dy) {
    const double inv2 = 1.0 / (2.0 * dy);
    auto at = [&](int j, int i) { return u[static_cast<std::size_t>(j) * nx + i]; };
    for (int i = 0; i < nx; ++i) {
        out[i] = (-3.0 * at(0, i) + 4.0 * at(1, i) - at(2, i)) * inv2;
        out[static_cast<std::size_t>(ny - 1) * nx + i] =
            (3.0 * at(ny - 1, i) - 4.0 * at(ny - 2, i) + at(ny - 3, i)) * inv2;
    }
    for (int j = 1; j < ny - 1; ++j) {
        for (int i = 0; i < nx; ++i) {
            out[static_cast<std::size_t>(j) * nx + i] = (at(j + 1, i) - at(j - 1, i)) * inv2;
        }
    }
}

FieldSeries derivative_x(const FieldSeries& field) {
    const Grid& g = field.grid();
    FieldSeries out(g);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < g.nt; ++k) {
        frame_derivative_x(field.frame(k).data(), out.frame(k).data(), g.nx, g.ny, g.dx);
    }
    return out;
}

FieldSeries derivative_y(const FieldSeries& field) {
    const Grid& g = field.grid();
    FieldSeries out(g);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < g.nt; ++k) {
        frame_derivative_y(field.frame(k).data(), out.frame(k).data(), g.nx, g.ny, g.dy);
    }
    return out;
}

FieldSeries feature_field(FeatureKind kind, const FieldSeries& u, const FieldSeries& ux,
                          const FieldSeries& uy, const DriftSeries* drift) {
    const Grid& g = u.grid();
    if ((kind == FeatureKind::AdvX || kind == FeatureKind::AdvY)) {
        if (!drift) throw DataError("advection feature requires drift velocities");
        if (drift->size() != g.nt) throw DataError("drift length does not match frame count");
    }
    FieldSeries out(g);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < g.nt; ++k) {
        const auto uf = u.frame(k);
        auto of = out.frame(k);
        switch (kind) {
            case FeatureKind::Const:
                std::fill(of.begin(), of.end(), 1.0);
                break;
            case FeatureKind::U:
                std::copy(uf.begin(), uf.end(), of.begin());
                break;
            case FeatureKind::U2:
                for (std::size_t q = 0; q < uf.size(); ++q) of[q] = uf[q] * uf[q];
                break;
            case FeatureKind::GradSq: {
                const auto gx = ux.frame(k);
                const auto gy = uy.frame(k);
                for (std::size_t q = 0; q < uf.size(); ++q) {
                    of[q] = gx[q] * gx[q] + gy[q] * gy[q];
                }
                break;
            }
            case FeatureKind::UGradSq: {
                const auto gx = ux.frame(k);
                const auto gy = uy.frame(k);
                for (std::size_t q = 0; q < uf.size(); ++q) {
                    of[q] = uf[q] * (gx[q] * gx[q] + gy[q] * gy[q]);
                }
                break;
            }
            case FeatureKind::Lap:
                throw DataError("laplacian has no pointwise strong-form field here; "
                                "its weak column is assembled from the gradient");
            case FeatureKind::AdvX: {
                const auto gx = ux.frame(k);
                const double v = drift->vx[k];
                for (std::size_t q = 0; q < uf.size(); ++q) of[q] = -v * gx[q];
                break;
            }
            case FeatureKind::AdvY: {
                const auto gy = uy.frame(k);
                const double v = drift->vy[k];
                for (std::size_t q = 0; q < uf.size(); ++q) of[q] = -v * gy[q];
                break;
            }
        }
    }
    return out;
}

std::map<FeatureKind, FieldSeries> feature_fields(const FieldSeries& u, const DriftSeries* drift,
                                                  const std::vector<FeatureKind>& kinds) {
    FieldSeries ux = derivative_x(u);
    FieldSeries uy = derivative_y(u);
    std::map<FeatureKind, FieldSeries> out;
    for (auto kind : kinds) {
        if (kind == FeatureKind::Lap) continue;
        out.emplace(kind, feature_field(kind, u, ux, uy, drift));
    }
    return out;
}

}  // namespace plume
