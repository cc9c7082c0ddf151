#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qclat/planar_set.hpp"

namespace qclat {

/// Exact nearest-neighbour queries over a fixed point cloud, backed by a
/// uniform bucket grid.
class PointIndex {
 public:
  explicit PointIndex(std::vector<Complex> points);

  /// Distance to the closest indexed point, +inf when the index is empty.
  double nearest_distance(Complex q) const;
  std::optional<std::size_t> nearest(Complex q) const;

  const std::vector<Complex>& points() const noexcept { return points_; }

 private:
  std::vector<Complex> points_;
  double x0_ = 0.0, y0_ = 0.0, cell_ = 1.0;
  std::int64_t nx_ = 1, ny_ = 1;
  std::vector<std::size_t> cell_start_;
  std::vector<std::size_t> items_;
};

/// Every point of E inside `region`, using the descriptor to tile periodic
/// sets. Throws InsufficientCoverage when the sample is not known to be complete
/// there.
std::vector<Complex> expand_sample(const PlanarSet& set, const Rect& region);

struct Disk {
  Complex center;
  double radius = 1.0;
};

struct DiskPorosity {
  Disk disk;
  double required_c = 1.0;
  Complex best_point;
  double best_distance = 0.0;
  std::size_t candidates = 0;
};

struct PorosityReport {
  std::vector<DiskPorosity> per_disk;
  double c_hat = 1.0;
  std::optional<double> target_c;
  std::optional<bool> pass;
  std::size_t resolution = 0;
  /// Largest candidate-grid step over the disks; the estimate is an upper bound
  /// on the true required c up to this resolution.
  double max_grid_step = 0.0;
};

struct PorosityOptions {
  unsigned threads = 0;
};

/// For each closed disk B(c, r), searches a (resolution+1)^2 square grid of
/// candidates in the disk for the point z farthest from E and reports
/// required c = r / dist(z, E), clamped below at 1. Doubling the resolution
/// nests the candidate grids. Throws BadParam for non-positive radii or
/// resolution, InsufficientCoverage from expand_sample.
PorosityReport porosity_estimate(const PlanarSet& set, std::span<const Disk> disks, std::size_t resolution,
                                 std::optional<double> target_c = std::nullopt, const PorosityOptions& options = {});

/// `count` disks centred on the sample's bounding-box centre with radii
/// log-spaced between d/64 and d/2, d = max(bounding-box diagonal, 1).
std::vector<Disk> auto_disks(const PlanarSet& set, std::size_t count);

struct TurningReport {
  double a_hat = 0.0;
  /// Curve indices of z1, z2, z3 in the order the ratio |z1-z2|/|z1-z3| was taken.
  std::array<std::size_t, 3> witness{0, 1, 2};
  bool reversed = false;
  bool sampled = false;
  std::size_t triples_tested = 0;
};

struct TurningOptions {
  std::size_t exhaustive_cap = 300;
  std::size_t samples = 2'000'000;
  std::uint64_t seed = 0x5eed;
};

/// Three-point ratio |z1 - z2| / |z1 - z3| maximised over index triples
/// i < j < k in both traversal directions. Exhaustive up to
/// `exhaustive_cap` vertices, seeded random triples beyond. Triples with
/// coincident points are skipped.
TurningReport turning_constant(const Polyline& curve, const TurningOptions& options = {});

}  // namespace qclat
