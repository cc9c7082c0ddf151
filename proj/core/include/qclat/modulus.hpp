#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qclat/planar_set.hpp"

namespace qclat {

// Convention: the "extremal distance" between two continua is the 2-modulus of
// the family of curves joining them, so a round annulus of radius ratio R/r
// has value 2*pi / log(R/r). Extremal length is the reciprocal.

/// 2*pi / log(r_out / r_in). Throws BadRadii unless 0 < r_in < r_out < inf.
double annulus_modulus(double r_in, double r_out);

struct VuorinenBound {
  double value = 0.0;  // (2/pi) log(1 + min_diam / dist)
  double min_diam = 0.0;
  double dist = 0.0;
};

/// Lower bound for the modulus of the curves joining two continua, each given
/// as a polyline (one vertex = a point). Distances are exact segment-to-segment
/// minima. Throws TouchingContinua when the continua meet, BadParam when empty.
VuorinenBound vuorinen_lower(std::span<const Complex> c1, std::span<const Complex> c2);

/// Same bound for continua given as point clouds (e.g. grid masks).
VuorinenBound vuorinen_lower_points(std::span<const Complex> c1, std::span<const Complex> c2);

/// Node lattice with spacing h over [x0, x0 + (nx-1)h] x [y0, y0 + (ny-1)h].
struct CondenserGrid {
  double x0 = 0.0, y0 = 0.0, h = 1.0;
  std::size_t nx = 2, ny = 2;

  double x(std::size_t i) const noexcept { return x0 + h * static_cast<double>(i); }
  double y(std::size_t j) const noexcept { return y0 + h * static_cast<double>(j); }
  Complex node(std::size_t i, std::size_t j) const noexcept { return {x(i), y(j)}; }
  std::size_t size() const noexcept { return nx * ny; }
  std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * nx + i; }
};

/// Grid over [x0, x1] x [y0, y1] (upper bounds rounded to whole steps). Throws InvalidCondenser.
CondenserGrid make_condenser_grid(double x0, double x1, double y0, double y1, double h);

using NodeMask = std::vector<std::uint8_t>;

NodeMask mask_disk(const CondenserGrid& grid, Complex center, double radius);
NodeMask mask_outside_disk(const CondenserGrid& grid, Complex center, double radius);
/// 4-connected staircase through the nodes nearest to the segment [a, b].
NodeMask mask_segment(const CondenserGrid& grid, Complex a, Complex b);
NodeMask mask_nodes(const CondenserGrid& grid, std::span<const std::pair<std::size_t, std::size_t>> nodes);

/// Node coordinates of a mask, in index order.
std::vector<Complex> mask_points(const CondenserGrid& grid, const NodeMask& mask);

/// Two continua as node sets of a Neumann box. Validated by build_condenser.
class CondenserSpec {
 public:
  const CondenserGrid& grid() const noexcept { return grid_; }
  const NodeMask& c1() const noexcept { return c1_; }
  const NodeMask& c2() const noexcept { return c2_; }

 private:
  friend CondenserSpec build_condenser(CondenserGrid, NodeMask, NodeMask);
  CondenserSpec(CondenserGrid g, NodeMask a, NodeMask b) : grid_(g), c1_(std::move(a)), c2_(std::move(b)) {}
  CondenserGrid grid_;
  NodeMask c1_, c2_;
};

/// Errors: InvalidCondenser (mask size mismatch, empty or not 4-connected);
/// MasksTooClose when the masks overlap or come within one node (Chebyshev
/// distance < 2).
CondenserSpec build_condenser(CondenserGrid grid, NodeMask c1, NodeMask c2);

enum class ModulusMethod { AnalyticAnnulus, VuorinenLower, GridCapacity };

std::string_view to_string(ModulusMethod method) noexcept;

struct SolverOptions {
  double rel_tol = 1e-8;
  std::size_t max_iterations = 0;  // 0 = automatic, scaled with the grid
  bool keep_fields = true;
};

struct ModulusEstimate {
  double value = 0.0;
  ModulusMethod method = ModulusMethod::GridCapacity;
  /// Relative solver residual (grid), or 0 for closed forms.
  double residual = 0.0;
  std::size_t iterations = 0;
  std::size_t unknowns = 0;
  /// Net flux out of C2, equal to the energy at convergence.
  std::optional<double> flux;
  /// Gap between the continua's bounding box and the Neumann box, in units of
  /// the continua's extent; empty when a continuum touches the box.
  std::optional<double> margin_ratio;
  std::optional<CondenserGrid> grid;
  std::vector<double> potential;
  /// |grad u| per node, the extremal-metric proxy.
  std::vector<double> density;
};

/// Discrete condenser capacity: the five-point Dirichlet energy
/// sum_edges w (u_p - u_q)^2 of the potential with u = 0 on C1, u = 1 on C2 and
/// natural (zero-flux) conditions on the box. Solved by Jacobi-preconditioned
/// conjugate gradients to ||r|| <= rel_tol ||b||. Throws SolverDivergence.
ModulusEstimate grid_condenser_modulus(const CondenserSpec& spec, const SolverOptions& options = {});

}  // namespace qclat
