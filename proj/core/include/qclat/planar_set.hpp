#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qclat {

using Complex = std::complex<double>;

/// Number of cosets in a periodic descriptor: a finite m, or marked infinite.
class CosetCount {
 public:
  static CosetCount finite(std::size_t m) { return CosetCount(m); }
  static CosetCount infinite() { return CosetCount(std::nullopt); }

  bool is_finite() const noexcept { return m_.has_value(); }
  /// Only meaningful when is_finite().
  std::size_t value() const noexcept { return m_.value_or(0); }

  friend bool operator==(const CosetCount&, const CosetCount&) = default;

 private:
  explicit CosetCount(std::optional<std::size_t> m) : m_(m) {}
  std::optional<std::size_t> m_;
};

struct ExplicitSet {
  friend bool operator==(const ExplicitSet&, const ExplicitSet&) = default;
};

/// E = Z + {reps}. Period is fixed at 1; every rep has Re in [0, 1).
/// With an infinite count the reps are a finite sample of the coset family.
struct AdditivePeriodic {
  std::vector<Complex> reps;
  CosetCount count = CosetCount::finite(0);
  friend bool operator==(const AdditivePeriodic&, const AdditivePeriodic&) = default;
};

/// E = {factor^k * rep : k in Z}. Reps lie in the fundamental annulus 1 <= |rep| < factor.
struct MultiplicativePeriodic {
  double factor = 2.0;
  std::vector<Complex> reps;
  CosetCount count = CosetCount::finite(0);
  friend bool operator==(const MultiplicativePeriodic&, const MultiplicativePeriodic&) = default;
};

/// A named closed-form family from the corpus (e.g. "geometric" with params {r}).
struct CorpusFormula {
  std::string name;
  std::vector<double> params;
  friend bool operator==(const CorpusFormula&, const CorpusFormula&) = default;
};

using Descriptor = std::variant<ExplicitSet, AdditivePeriodic, MultiplicativePeriodic, CorpusFormula>;

/// Axis-aligned rectangle; infinite bounds allowed.
struct Rect {
  double x_min = -std::numeric_limits<double>::infinity();
  double x_max = std::numeric_limits<double>::infinity();
  double y_min = -std::numeric_limits<double>::infinity();
  double y_max = std::numeric_limits<double>::infinity();

  static Rect plane() { return {}; }
  static Rect around(Complex c, double half_width) {
    return {c.real() - half_width, c.real() + half_width, c.imag() - half_width, c.imag() + half_width};
  }
  bool contains(Complex z) const noexcept {
    return z.real() >= x_min && z.real() <= x_max && z.imag() >= y_min && z.imag() <= y_max;
  }
  bool contains(const Rect& r) const noexcept {
    return r.x_min >= x_min && r.x_max <= x_max && r.y_min >= y_min && r.y_max <= y_max;
  }
  bool is_plane() const noexcept { return contains(Rect::plane()); }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Finite sample of a closed discrete set E in C.
///
/// `coverage` is the region inside which the sample is known to list every
/// point of E. It defaults to the whole plane (the sample *is* E).
class PlanarSet {
 public:
  const std::vector<Complex>& points() const noexcept { return points_; }
  const Descriptor& descriptor() const noexcept { return descriptor_; }
  const Rect& coverage() const noexcept { return coverage_; }

  /// True when every sampled point has zero imaginary part.
  bool is_real() const noexcept;

  friend bool operator==(const PlanarSet&, const PlanarSet&) = default;

 private:
  friend PlanarSet build_planar_set(std::vector<Complex>, std::optional<Descriptor>, Rect);
  PlanarSet(std::vector<Complex> p, Descriptor d, Rect c)
      : points_(std::move(p)), descriptor_(std::move(d)), coverage_(c) {}

  std::vector<Complex> points_;
  Descriptor descriptor_;
  Rect coverage_;
};

/// Validates points and descriptor. A missing descriptor becomes ExplicitSet.
///
/// Errors: DuplicatePoint (exact equality, located at the later index);
/// DescriptorViolation for reps outside the fundamental domain, a finite count
/// that differs from the number of reps, a factor <= 1, or 0 among the points
/// of a multiplicative set.
PlanarSet build_planar_set(std::vector<Complex> points, std::optional<Descriptor> descriptor = std::nullopt,
                           Rect coverage = Rect::plane());

/// Checks descriptor invariants on their own (used before a descriptor is
/// attached to a set, and by the periodic checkers on raw descriptors).
void validate_descriptor(const Descriptor& descriptor);

std::string descriptor_kind(const Descriptor& descriptor);

/// Ordered samples of a curve.
class Polyline {
 public:
  const std::vector<Complex>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }

 private:
  friend Polyline build_polyline(std::vector<Complex>);
  explicit Polyline(std::vector<Complex> v) : vertices_(std::move(v)) {}
  std::vector<Complex> vertices_;
};

/// Errors: TooFewPoints (< 3 vertices); DuplicatePoint for equal consecutive vertices.
Polyline build_polyline(std::vector<Complex> vertices);

}  // namespace qclat
