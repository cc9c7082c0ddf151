#include "qclat/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "parallel.hpp"
#include "qclat/error.hpp"

namespace qclat {

// ---------------------------------------------------------------------------
// PointIndex
// ---------------------------------------------------------------------------

PointIndex::PointIndex(std::vector<Complex> points) : points_(std::move(points)) {
  if (points_.empty()) return;
  double x1 = points_.front().real(), y1 = points_.front().imag();
  x0_ = x1;
  y0_ = y1;
  for (Complex p : points_) {
    x0_ = std::min(x0_, p.real());
    y0_ = std::min(y0_, p.imag());
    x1 = std::max(x1, p.real());
    y1 = std::max(y1, p.imag());
  }
  const double w = x1 - x0_;
  const double h = y1 - y0_;
  const auto n = static_cast<double>(points_.size());
  if (w > 0.0 && h > 0.0) {
    cell_ = std::sqrt(w * h / n);
  } else {
    cell_ = std::max(w, h) / n;
  }
  if (!(cell_ > 0.0)) cell_ = 1.0;
  // keep the bucket count near the point count even for very elongated clouds
  cell_ = std::max({cell_, w / (4.0 * n + 1.0), h / (4.0 * n + 1.0)});
  nx_ = static_cast<std::int64_t>(std::floor(w / cell_)) + 1;
  ny_ = static_cast<std::int64_t>(std::floor(h / cell_)) + 1;

  const auto cells = static_cast<std::size_t>(nx_ * ny_);
  std::vector<std::size_t> cell_of(points_.size());
  cell_start_.assign(cells + 1, 0);
  for (std::size_t p = 0; p < points_.size(); ++p) {
    const auto cx = std::min<std::int64_t>(nx_ - 1, static_cast<std::int64_t>((points_[p].real() - x0_) / cell_));
    const auto cy = std::min<std::int64_t>(ny_ - 1, static_cast<std::int64_t>((points_[p].imag() - y0_) / cell_));
    cell_of[p] = static_cast<std::size_t>(cy * nx_ + cx);
    ++cell_start_[cell_of[p] + 1];
  }
  for (std::size_t c = 0; c < cells; ++c) cell_start_[c + 1] += cell_start_[c];
  items_.resize(points_.size());
  std::vector<std::size_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t p = 0; p < points_.size(); ++p) items_[fill[cell_of[p]]++] = p;
}

std::optional<std::size_t> PointIndex::nearest(Complex q) const {
  if (points_.empty()) return std::nullopt;
  // Work from the projection of q onto the bucket box; projection is
  // non-expansive, so ring r still bounds unseen points below by r * cell.
  const auto clamp_cell = [](double v, std::int64_t n) {
    if (!(v > 0.0)) return std::int64_t{0};
    return std::min<std::int64_t>(n - 1, static_cast<std::int64_t>(v));
  };
  const std::int64_t cx = clamp_cell((q.real() - x0_) / cell_, nx_);
  const std::int64_t cy = clamp_cell((q.imag() - y0_) / cell_, ny_);

  double best = std::numeric_limits<double>::infinity();
  std::size_t best_index = 0;
  auto scan_cell = [&](std::int64_t i, std::int64_t j) {
    if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return;
    const auto c = static_cast<std::size_t>(j * nx_ + i);
    for (std::size_t s = cell_start_[c]; s < cell_start_[c + 1]; ++s) {
      const std::size_t p = items_[s];
      const double d = std::abs(points_[p] - q);
      if (d < best || (d == best && p < best_index)) {
        best = d;
        best_index = p;
      }
    }
  };

  const std::int64_t max_ring = std::max(nx_, ny_);
  for (std::int64_t r = 0; r <= max_ring; ++r) {
    if (r == 0) {
      scan_cell(cx, cy);
    } else {
      for (std::int64_t i = cx - r; i <= cx + r; ++i) {
        scan_cell(i, cy - r);
        scan_cell(i, cy + r);
      }
      for (std::int64_t j = cy - r + 1; j <= cy + r - 1; ++j) {
        scan_cell(cx - r, j);
        scan_cell(cx + r, j);
      }
    }
    // rings 0..r are done; anything unseen is at least r cells away
    if (best <= static_cast<double>(r) * cell_) break;
  }
  return best_index;
}

double PointIndex::nearest_distance(Complex q) const {
  const auto p = nearest(q);
  return p ? std::abs(points_[*p] - q) : std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// Sample expansion
// ---------------------------------------------------------------------------

namespace {

void require_coverage(bool ok, const Rect& region) {
  if (!ok) {
    throw Error(Errc::InsufficientCoverage,
                "sample is not known to be complete on [" + std::to_string(region.x_min) + ", " +
                    std::to_string(region.x_max) + "] x [" + std::to_string(region.y_min) + ", " +
                    std::to_string(region.y_max) + "]");
  }
}

std::vector<Complex> expand_additive(const PlanarSet& set, const AdditivePeriodic& d, const Rect& region) {
  if (!d.count.is_finite()) {
    require_coverage(set.coverage().y_min <= region.y_min && set.coverage().y_max >= region.y_max, region);
  }
  std::vector<Complex> out;
  for (Complex rep : d.reps) {
    if (rep.imag() < region.y_min || rep.imag() > region.y_max) continue;
    const double lo = std::ceil(region.x_min - rep.real());
    const double hi = std::floor(region.x_max - rep.real());
    for (double n = lo; n <= hi; n += 1.0) out.push_back(rep + n);
  }
  return out;
}

std::vector<Complex> expand_multiplicative(const PlanarSet& set, const MultiplicativePeriodic& d,
                                           const Rect& region) {
  if (!d.count.is_finite()) require_coverage(set.coverage().contains(region), region);
  const double cx = std::clamp(0.0, region.x_min, region.x_max);
  const double cy = std::clamp(0.0, region.y_min, region.y_max);
  const double dmin = std::hypot(cx, cy);
  const double dmax = std::max(std::hypot(region.x_min, region.y_min),
                               std::max(std::hypot(region.x_min, region.y_max),
                                        std::max(std::hypot(region.x_max, region.y_min),
                                                 std::hypot(region.x_max, region.y_max))));
  // Points closer to 0 than 1e-12 * dmax are dropped; they only matter within
  // that distance of the accumulation point.
  const double lo_radius = std::max(dmin, 1e-12 * dmax);
  const double log_factor = std::log(d.factor);
  std::vector<Complex> out;
  for (Complex rep : d.reps) {
    const double m = std::abs(rep);
    const auto kmin = static_cast<std::int64_t>(std::floor(std::log(lo_radius / m) / log_factor)) - 1;
    const auto kmax = static_cast<std::int64_t>(std::ceil(std::log(dmax / m) / log_factor)) + 1;
    for (std::int64_t k = kmin; k <= kmax; ++k) {
      const Complex z = rep * std::pow(d.factor, static_cast<double>(k));
      if (region.contains(z)) out.push_back(z);
    }
  }
  return out;
}

}  // namespace

std::vector<Complex> expand_sample(const PlanarSet& set, const Rect& region) {
  if (const auto* add = std::get_if<AdditivePeriodic>(&set.descriptor())) return expand_additive(set, *add, region);
  if (const auto* mul = std::get_if<MultiplicativePeriodic>(&set.descriptor())) {
    return expand_multiplicative(set, *mul, region);
  }
  require_coverage(set.coverage().contains(region), region);
  std::vector<Complex> out;
  for (Complex z : set.points()) {
    if (region.contains(z)) out.push_back(z);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Porosity
// ---------------------------------------------------------------------------

PorosityReport porosity_estimate(const PlanarSet& set, std::span<const Disk> disks, std::size_t resolution,
                                 std::optional<double> target_c, const PorosityOptions& options) {
  if (resolution == 0) throw Error(Errc::BadParam, "candidate resolution must be positive");
  for (std::size_t i = 0; i < disks.size(); ++i) {
    if (!(disks[i].radius > 0.0) || !std::isfinite(disks[i].radius) || !std::isfinite(disks[i].center.real()) ||
        !std::isfinite(disks[i].center.imag())) {
      throw Error(Errc::BadParam, "disk radii must be positive and finite", static_cast<std::int64_t>(i));
    }
  }
  if (target_c && !(*target_c >= 1.0)) throw Error(Errc::BadConstant, "target c must be >= 1");

  PorosityReport report;
  report.resolution = resolution;
  report.target_c = target_c;
  report.per_disk.resize(disks.size());

  detail::parallel_for(disks.size(), options.threads, [&](std::size_t d) {
    const Disk disk = disks[d];
    const double r = disk.radius;
    const PointIndex index(expand_sample(set, Rect::around(disk.center, 2.0 * r)));

    const double step = (2.0 * r) / static_cast<double>(resolution);
    DiskPorosity result;
    result.disk = disk;
    result.best_distance = -1.0;
    for (std::size_t j = 0; j <= resolution; ++j) {
      const double oy = -r + static_cast<double>(j) * step;
      for (std::size_t i = 0; i <= resolution; ++i) {
        const double ox = -r + static_cast<double>(i) * step;
        if (std::hypot(ox, oy) > r) continue;
        const Complex z = disk.center + Complex{ox, oy};
        ++result.candidates;
        const double dist = index.nearest_distance(z);
        if (dist > result.best_distance) {
          result.best_distance = dist;
          result.best_point = z;
        }
      }
    }
    result.required_c = result.best_distance > 0.0 ? std::max(1.0, r / result.best_distance)
                                                   : std::numeric_limits<double>::infinity();
    report.per_disk[d] = result;
  });

  for (const auto& d : report.per_disk) {
    report.c_hat = std::max(report.c_hat, d.required_c);
    report.max_grid_step = std::max(report.max_grid_step, 2.0 * d.disk.radius / static_cast<double>(resolution));
  }
  if (target_c) report.pass = report.c_hat <= *target_c;
  return report;
}

std::vector<Disk> auto_disks(const PlanarSet& set, std::size_t count) {
  if (count == 0) throw Error(Errc::BadParam, "auto disk count must be positive");
  Complex center{0.0, 0.0};
  double diag = 0.0;
  if (!set.points().empty()) {
    double x0 = set.points().front().real(), x1 = x0;
    double y0 = set.points().front().imag(), y1 = y0;
    for (Complex z : set.points()) {
      x0 = std::min(x0, z.real());
      x1 = std::max(x1, z.real());
      y0 = std::min(y0, z.imag());
      y1 = std::max(y1, z.imag());
    }
    center = {0.5 * (x0 + x1), 0.5 * (y0 + y1)};
    diag = std::hypot(x1 - x0, y1 - y0);
  }
  const double d = std::max(diag, 1.0);
  const double lo = d / 64.0;
  const double hi = d / 2.0;
  std::vector<Disk> disks;
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    disks.push_back({center, lo * std::pow(hi / lo, t)});
  }
  return disks;
}

// ---------------------------------------------------------------------------
// Three-point condition
// ---------------------------------------------------------------------------

namespace {

struct TripleScan {
  const std::vector<Complex>& z;
  TurningReport& report;

  void visit(std::size_t i, std::size_t j, std::size_t k) {
    // i < j < k in curve order
    const double dij = std::abs(z[i] - z[j]);
    const double dik = std::abs(z[i] - z[k]);
    const double djk = std::abs(z[j] - z[k]);
    if (dij == 0.0 || dik == 0.0 || djk == 0.0) return;
    ++report.triples_tested;
    const double forward = dij / dik;
    if (forward > report.a_hat) {
      report.a_hat = forward;
      report.witness = {i, j, k};
      report.reversed = false;
    }
    const double backward = djk / dik;
    if (backward > report.a_hat) {
      report.a_hat = backward;
      report.witness = {k, j, i};
      report.reversed = true;
    }
  }
};

}  // namespace

TurningReport turning_constant(const Polyline& curve, const TurningOptions& options) {
  const auto& z = curve.vertices();
  const std::size_t n = z.size();
  if (n < 3) throw Error(Errc::TooFewPoints, "need at least 3 vertices");
  TurningReport report;
  TripleScan scan{z, report};
  if (n <= options.exhaustive_cap) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) scan.visit(i, j, k);
      }
    }
    return report;
  }
  report.sampled = true;
  std::mt19937_64 gen(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t s = 0; s < options.samples; ++s) {
    std::array<std::size_t, 3> t{pick(gen), pick(gen), pick(gen)};
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2]) continue;
    scan.visit(t[0], t[1], t[2]);
  }
  return report;
}

}  // namespace qclat
