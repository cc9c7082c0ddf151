#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qclat/planar_set.hpp"
#include "qclat/sequence.hpp"

namespace qclat {

/// Piecewise-linear homeomorphism of R with phi(n) = a_n at every in-window
/// integer n, linear on each [n, n+1], and continued affinely past the window
/// ends with the boundary segment slopes.
class PLMap {
 public:
  explicit PLMap(RealSequenceWindow window);

  double operator()(double x) const noexcept { return eval(x); }
  double eval(double x) const noexcept;

  /// Exact oriented integral of phi from lo to hi, summed piece by piece.
  double integral(double lo, double hi) const noexcept;

  const RealSequenceWindow& window() const noexcept { return window_; }
  double left_slope() const noexcept { return left_slope_; }
  double right_slope() const noexcept { return right_slope_; }

 private:
  double piece_integral(double lo, double hi) const noexcept;

  RealSequenceWindow window_;
  double left_slope_;
  double right_slope_;
};

PLMap pl_map(const RealSequenceWindow& seq);

struct QSSample {
  double x = 0.0;
  double t = 0.0;
  double ratio = 1.0;  // (phi(x+t) - phi(x)) / (phi(x) - phi(x-t))
};

struct QSProfile {
  std::vector<QSSample> samples;
  double rho_hat = 1.0;
  /// C(M) for the M the profile is checked against.
  double bound_claimed = 4.0;
  double m_used = 1.0;
  /// Samples with ratio outside [1/bound_claimed, bound_claimed].
  std::size_t violations = 0;
};

/// Quasisymmetry quotient on the cartesian product x_samples x t_samples.
/// `m` defaults to the window's own m_hat. Throws NonpositiveOffset for t <= 0.
QSProfile qs_profile(const PLMap& map, std::span<const double> x_samples, std::span<const double> t_samples,
                     std::optional<double> m = std::nullopt);

enum class Quadrature {
  ExactBreakpoints,  // integrate phi piece by piece (exact for a PL map)
  AdaptiveSimpson,   // composite Simpson, doubling until successive estimates agree
};

struct ExtensionOptions {
  Quadrature quadrature = Quadrature::ExactBreakpoints;
  double simpson_rel_tol = 1e-9;
  int simpson_max_doublings = 24;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Averaging extension of phi to the plane:
///   F(x+iy) = (alpha + beta)/2 + i(alpha - beta),
///   alpha = int_0^1 phi(x + t y) dt,  beta = int_0^1 phi(x - t y) dt,
/// for y > 0, and F(z) = conj(F(conj z)) for y < 0. The identity map extends
/// to the identity. Throws RealAxisInput for y == 0.
Complex ba_extend(const PLMap& map, Complex z, const ExtensionOptions& options = {});

/// Node grid over [x0, x1] x [y0, y1] with nx * ny nodes (endpoints included).
struct Grid {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  std::size_t nx = 2, ny = 2;

  double x(std::size_t i) const noexcept {
    return nx == 1 ? x0 : x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(nx - 1);
  }
  double y(std::size_t j) const noexcept {
    return ny == 1 ? y0 : y0 + (y1 - y0) * static_cast<double>(j) / static_cast<double>(ny - 1);
  }
  Complex node(std::size_t i, std::size_t j) const noexcept { return {x(i), y(j)}; }
  std::size_t size() const noexcept { return nx * ny; }
  /// Row-major index with x varying fastest.
  std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * nx + i; }
  double dx() const noexcept { return nx > 1 ? (x1 - x0) / static_cast<double>(nx - 1) : 0.0; }
  double dy() const noexcept { return ny > 1 ? (y1 - y0) / static_cast<double>(ny - 1) : 0.0; }
};

/// Throws BadGrid for empty or inverted grids.
void validate_grid(const Grid& grid);

struct ExtensionField {
  Grid grid;
  std::vector<Complex> values;
  double vertical_scale = 2.0;

  Complex at(std::size_t i, std::size_t j) const { return values[grid.index(i, j)]; }
};

/// F at every grid node. Nodes on the real axis take phi(x).
ExtensionField extension_field(const PLMap& map, const Grid& grid, const ExtensionOptions& options = {});

struct DilatationField {
  Grid grid;
  std::vector<Complex> mu;
  std::vector<double> k;
  double fd_step = 0.0;

  double max_k() const noexcept;
  double min_k() const noexcept;
};

/// Beltrami quotient mu = (F_x + i F_y) / (F_x - i F_y) from central differences
/// with step `fd_step` (default 1e-4 times the smaller node spacing), and
/// K = (1 + |mu|) / (1 - |mu|) (infinite when |mu| >= 1).
/// Throws BadGrid if the stencil leaves the upper half-plane or fd_step is not
/// below half the node spacing, DegenerateJacobian when |F_x - i F_y| vanishes.
DilatationField dilatation_field(const PLMap& map, const Grid& grid, std::optional<double> fd_step = std::nullopt,
                                 const ExtensionOptions& options = {});

/// Window of `size` points, base index -(size/2), a_0 = 0, gaps i.i.d. uniform
/// on [1, M] from a 64-bit Mersenne Twister seeded with `seed`.
RealSequenceWindow random_M_sequence(double m, std::size_t size, std::uint64_t seed);

}  // namespace qclat
