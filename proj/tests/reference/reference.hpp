#pragma once

// Serial reference implementations used as independent oracles in the tests
// and as the baseline side of the benchmark. Everything here is written as
// plain dense loops, deliberately sharing no code with the library's
// separable / OpenMP kernels it is checked against.

#include <span>
#include <vector>

#include "plume/drift.hpp"
#include "plume/field.hpp"
#include "plume/model.hpp"
#include "plume/weak.hpp"

namespace plume::ref {

// Dense 2-D convolution with the full (2R+1)^2 normalized Gaussian product
// kernel, reflect (edge-repeating) boundaries.
Frame dense_gaussian_smooth(const Frame& src, double sigma);

// Direct bilinear interpolation of a frame at fractional source coordinates.
double bilinear_at(const Frame& src, double sy, double sx);

// Which test-function factor carries the derivative in a weak column.
enum class DerivAxis { None, X, Y, T };

// Direct triple Riemann sum of <phi or d_phi, f> over the training window for
// one centre, with phi the truncated separable Gaussian. `f` is any
// space-time field sampled on the grid.
double weak_inner_dense(const FieldSeries& f, FrameWindow train, const Grid& grid,
                        const TestFunctionSpec& spec, Centre centre, DerivAxis axis);

// Dense evaluation of one weak column (or the right-hand side) for a centre,
// building its own derivative fields with plain loops.
double weak_column_dense(FeatureKind kind, const FieldSeries& u, const DriftSeries* drift,
                         FrameWindow train, const TestFunctionSpec& spec, Centre centre);
double weak_rhs_dense(const FieldSeries& u, FrameWindow train, const TestFunctionSpec& spec,
                      Centre centre);

// Independent stencil evaluation of the model right-hand side on one frame
// (central differences, upwind advection, zero-flux edge replication).
std::vector<double> pde_rhs_dense(std::span<const double> u, const SparseModel& model,
                                  double vx, double vy, const Grid& grid, double eps_visc);

// Free-space heat evolution of a Gaussian bump amplitude*exp(-r^2/(2 s0^2)).
double heat_bump(double x, double y, double t, double x0, double y0, double sigma0,
                 double beta, double amplitude);

// Ordinary least-squares line fit; returns (intercept, slope per sample).
std::pair<double, double> line_fit(std::span<const double> series);

}  // namespace plume::ref
