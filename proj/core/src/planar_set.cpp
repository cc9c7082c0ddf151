#include "qclat/planar_set.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qclat/error.hpp"

namespace qclat {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_distinct_reps(const std::vector<Complex>& reps) {
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      if (reps[i] == reps[j]) {
        throw Error(Errc::DescriptorViolation, "coset representatives must be distinct",
                    static_cast<std::int64_t>(j));
      }
    }
  }
}

void require_count_matches(const CosetCount& count, std::size_t nreps) {
  if (count.is_finite() && count.value() != nreps) {
    throw Error(Errc::DescriptorViolation, "finite coset count " + std::to_string(count.value()) +
                                               " does not match " + std::to_string(nreps) + " representatives");
  }
  if (count.is_finite() && nreps == 0) {
    throw Error(Errc::DescriptorViolation, "a periodic set needs at least one coset");
  }
}

struct DescriptorValidator {
  void operator()(const ExplicitSet&) const {}

  void operator()(const AdditivePeriodic& d) const {
    for (std::size_t i = 0; i < d.reps.size(); ++i) {
      const Complex r = d.reps[i];
      if (!finite(r) || r.real() < 0.0 || r.real() >= 1.0) {
        throw Error(Errc::DescriptorViolation, "additive representative needs Re in [0,1)",
                    static_cast<std::int64_t>(i));
      }
    }
    require_distinct_reps(d.reps);
    require_count_matches(d.count, d.reps.size());
  }

  void operator()(const MultiplicativePeriodic& d) const {
    if (!(d.factor > 1.0) || !std::isfinite(d.factor)) {
      throw Error(Errc::DescriptorViolation, "multiplicative factor must be > 1");
    }
    for (std::size_t i = 0; i < d.reps.size(); ++i) {
      const double m = std::abs(d.reps[i]);
      if (!finite(d.reps[i]) || m < 1.0 || m >= d.factor) {
        throw Error(Errc::DescriptorViolation, "multiplicative representative needs 1 <= |rep| < factor",
                    static_cast<std::int64_t>(i));
      }
    }
    require_distinct_reps(d.reps);
    require_count_matches(d.count, d.reps.size());
  }

  void operator()(const CorpusFormula& d) const {
    if (d.name.empty()) throw Error(Errc::DescriptorViolation, "corpus formula needs a name");
  }
};

}  // namespace

bool PlanarSet::is_real() const noexcept {
  return std::all_of(points_.begin(), points_.end(), [](Complex z) { return z.imag() == 0.0; });
}

void validate_descriptor(const Descriptor& descriptor) { std::visit(DescriptorValidator{}, descriptor); }

std::string descriptor_kind(const Descriptor& descriptor) {
  struct Kind {
    std::string operator()(const ExplicitSet&) const { return "explicit"; }
    std::string operator()(const AdditivePeriodic&) const { return "additive_periodic"; }
    std::string operator()(const MultiplicativePeriodic&) const { return "multiplicative_periodic"; }
    std::string operator()(const CorpusFormula&) const { return "corpus"; }
  };
  return std::visit(Kind{}, descriptor);
}

PlanarSet build_planar_set(std::vector<Complex> points, std::optional<Descriptor> descriptor, Rect coverage) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!finite(points[i])) {
      throw Error(Errc::DescriptorViolation, "points must be finite", static_cast<std::int64_t>(i));
    }
  }

  // Duplicate detection on a lexicographic sort of indices keeps the original order intact.
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto lex = [&](std::size_t a, std::size_t b) {
    if (points[a].real() != points[b].real()) return points[a].real() < points[b].real();
    if (points[a].imag() != points[b].imag()) return points[a].imag() < points[b].imag();
    return a < b;
  };
  std::sort(order.begin(), order.end(), lex);
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (points[order[i]] == points[order[i - 1]]) {
      throw Error(Errc::DuplicatePoint, "points must be pairwise distinct",
                  static_cast<std::int64_t>(std::max(order[i], order[i - 1])));
    }
  }

  Descriptor d = descriptor.value_or(ExplicitSet{});
  validate_descriptor(d);
  if (std::holds_alternative<MultiplicativePeriodic>(d)) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i] == Complex{0.0, 0.0}) {
        throw Error(Errc::DescriptorViolation, "0 cannot belong to a multiplicative set",
                    static_cast<std::int64_t>(i));
      }
    }
  }
  return PlanarSet(std::move(points), std::move(d), coverage);
}

Polyline build_polyline(std::vector<Complex> vertices) {
  if (vertices.size() < 3) {
    throw Error(Errc::TooFewPoints, "a polyline needs at least 3 vertices, got " + std::to_string(vertices.size()));
  }
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!finite(vertices[i])) {
      throw Error(Errc::ParseError, "vertices must be finite", static_cast<std::int64_t>(i));
    }
    if (i > 0 && vertices[i] == vertices[i - 1]) {
      throw Error(Errc::DuplicatePoint, "consecutive vertices must differ", static_cast<std::int64_t>(i));
    }
  }
  return Polyline(std::move(vertices));
}

}  // namespace qclat
