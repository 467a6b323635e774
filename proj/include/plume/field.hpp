#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "plume/errors.hpp"

namespace plume {

// Uniform space-time grid. Spatial coordinates are image units with node i at
// x_i = i*dx; frame k is at t_k = k*dt.
struct Grid {
    int nx = 0;
    int ny = 0;
    int nt = 0;
    double dx = 1.0;
    double dy = 1.0;
    double dt = 1.0;

    double lx() const { return dx * (nx - 1); }
    double ly() const { return dy * (ny - 1); }
    double duration() const { return dt * (nt - 1); }
    double x(int i) const { return dx * i; }
    double y(int j) const { return dy * j; }
    double t(int k) const { return dt * k; }

    std::size_t cells_per_frame() const {
        return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    }
    std::size_t total_points() const { return cells_per_frame() * static_cast<std::size_t>(nt); }

    void validate() const;

    bool operator==(const Grid&) const = default;
};

// Half-open frame-index range.
struct FrameWindow {
    int begin = 0;
    int end = 0;

    int size() const { return end - begin; }
    bool contains(int k) const { return k >= begin && k < end; }
};

// Scalar observable tensor u[j,i,k] stored frame-major (k outer, then row j,
// then column i). Frames are contiguous so per-frame kernels get flat spans.
class FieldSeries {
public:
    FieldSeries() = default;
    FieldSeries(const Grid& grid, double fill = 0.0)
        : grid_(grid), data_(grid.total_points(), fill) {
        grid_.validate();
    }

    const Grid& grid() const { return grid_; }

    double& at(int j, int i, int k) { return data_[index(j, i, k)]; }
    double at(int j, int i, int k) const { return data_[index(j, i, k)]; }

    std::span<double> frame(int k) {
        return {data_.data() + static_cast<std::size_t>(k) * grid_.cells_per_frame(),
                grid_.cells_per_frame()};
    }
    std::span<const double> frame(int k) const {
        return {data_.data() + static_cast<std::size_t>(k) * grid_.cells_per_frame(),
                grid_.cells_per_frame()};
    }

    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

    bool normalized() const { return normalized_; }
    void set_normalized(bool v) { normalized_ = v; }

    // Checks finiteness, and the [0,1] range when flagged normalized.
    void validate() const;

    std::size_t index(int j, int i, int k) const {
        return (static_cast<std::size_t>(k) * grid_.ny + j) * grid_.nx + i;
    }

private:
    Grid grid_;
    std::vector<double> data_;
    bool normalized_ = false;
};

// Single 2-D frame, row-major, used by the preprocessing stages.
struct Frame {
    int nx = 0;
    int ny = 0;
    std::vector<double> v;

    Frame() = default;
    Frame(int ny_, int nx_, double fill = 0.0)
        : nx(nx_), ny(ny_), v(static_cast<std::size_t>(nx_) * ny_, fill) {}

    double& at(int j, int i) { return v[static_cast<std::size_t>(j) * nx + i]; }
    double at(int j, int i) const { return v[static_cast<std::size_t>(j) * nx + i]; }
};

}  // namespace plume
