#include "qclat/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <numbers>
#include <string>

#include "qclat/error.hpp"

namespace qclat {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

void require_constant(double value, const char* name) {
  if (!(value >= 1.0) || !std::isfinite(value)) {
    throw Error(Errc::BadConstant, std::string(name) + " must be a finite number >= 1, got " + std::to_string(value));
  }
}

double symmetric(double r) { return r >= 1.0 ? r : 1.0 / r; }

EquivalenceVerdict exact(VerdictKind kind, std::string target, std::string theorem) {
  EquivalenceVerdict v;
  v.kind = kind;
  v.target = std::move(target);
  v.theorem = std::move(theorem);
  return v;
}

// Builds a window from a real sample, numbered so that index 0 sits at the middle.
RealSequenceWindow centered_window(const PlanarSet& set) {
  std::vector<double> xs;
  xs.reserve(set.points().size());
  for (Complex z : set.points()) xs.push_back(z.real());
  std::sort(xs.begin(), xs.end());
  const auto base = -static_cast<std::int64_t>(xs.size() / 2);
  return build_sequence(std::move(xs), base);
}

RealSequenceWindow sub_window(const RealSequenceWindow& seq, std::size_t start, std::size_t size) {
  auto values = seq.values().subspan(start, size);
  return build_sequence(std::vector<double>(values.begin(), values.end()),
                        seq.first_index() + static_cast<std::int64_t>(start));
}

EquivalenceVerdict decide_real_sample(const PlanarSet& set, const DivergenceConfig& config) {
  EquivalenceVerdict v;
  v.target = "Z";
  v.theorem = "heuristic (Thm B iii)";
  if (set.points().size() < 3) {
    v.kind = VerdictKind::Inconclusive;
    v.evidence.window = std::pair<std::int64_t, std::int64_t>{0, static_cast<std::int64_t>(set.points().size()) - 1};
    v.evidence.notes.push_back("fewer than 3 points; the ratio condition cannot be sampled");
    return v;
  }

  const RealSequenceWindow seq = centered_window(set);
  const RatioReport full = ratio_report(seq);
  v.evidence.m_hat = full.m_hat;
  v.evidence.witness = full.witness;
  v.evidence.window = std::pair{seq.first_index(), seq.last_index()};

  const std::size_t min_window = std::max<std::size_t>(config.min_window, 3);
  for (std::size_t size = min_window; size <= seq.size(); size *= 2) {
    const std::size_t start = (seq.size() - size) / 2;
    v.evidence.growth.push_back({size, ratio_report(sub_window(seq, start, size)).m_hat});
  }

  const auto& growth = v.evidence.growth;
  const auto needed = static_cast<std::size_t>(std::max(config.doublings, 1)) + 1;
  if (growth.size() < needed) {
    v.kind = VerdictKind::Inconclusive;
    v.evidence.notes.push_back("sample too small for the divergence test: " + std::to_string(growth.size()) +
                               " nested windows, need " + std::to_string(needed));
    return v;
  }

  bool diverging = true;
  for (std::size_t j = growth.size() - needed; j + 1 < growth.size(); ++j) {
    if (!(growth[j + 1].m_hat >= config.growth_factor * growth[j].m_hat)) diverging = false;
  }
  if (diverging) {
    v.kind = VerdictKind::Inconsistent;
    v.evidence.notes.push_back("m_hat grows by a factor >= " + std::to_string(config.growth_factor) +
                               " at each of the last " + std::to_string(config.doublings) +
                               " window doublings; the ratio condition appears to fail");
  } else {
    v.kind = VerdictKind::ConsistentWithEquivalence;
    v.evidence.notes.push_back("ratio condition holds on the window with M = m_hat; no divergence detected");
  }
  v.evidence.notes.push_back("window-level heuristic: a finite sample cannot certify the asymptotic condition");
  return v;
}

std::optional<EquivalenceVerdict> decide_corpus(const CorpusFormula& formula, const PlanarSet& set) {
  const double base = formula.params.empty() ? 0.0 : formula.params.front();
  if (formula.name == "geometric" && base > 1.0) {
    // {r^n : n >= 0} is bounded below by 1.
    auto v = exact(VerdictKind::ExactNo, "Z", "Thm lem");
    v.evidence.notes.push_back("real set bounded below (inf = 1); equivalence to Z needs sup = +inf and inf = -inf");
    return v;
  }
  if (formula.name == "pm_geometric" && base > 1.0) {
    // Both tails are geometric: (s^{n+k} - s^n) / (s^n - s^{n-k}) = s^k is unbounded in k.
    auto v = exact(VerdictKind::ExactNo, "Z", "Thm B");
    v.evidence.notes.push_back("tail ratio equals s^k for every k, so no M bounds the ratio condition");
    if (set.is_real() && set.points().size() >= 3) {
      const RealSequenceWindow seq = centered_window(set);
      const RatioReport r = ratio_report(seq);
      v.evidence.m_hat = r.m_hat;
      v.evidence.witness = r.witness;
      v.evidence.window = std::pair{seq.first_index(), seq.last_index()};
    }
    return v;
  }
  return std::nullopt;
}

}  // namespace

RatioReport ratio_report(const RealSequenceWindow& seq) {
  RatioReport report;
  report.m_hat = -1.0;
  for (std::int64_t n = seq.first_index() + 1; n < seq.last_index(); ++n) {
    const std::int64_t kmax = std::min(n - seq.first_index(), seq.last_index() - n);
    const double an = seq[n];
    for (std::int64_t k = 1; k <= kmax; ++k) {
      const double r = (seq[n + k] - an) / (an - seq[n - k]);
      const double v = symmetric(r);
      ++report.pairs_tested;
      if (v > report.m_hat) {
        report.m_hat = v;
        report.witness = {n, k, r};
      }
    }
  }
  return report;
}

RatioCheck check_ratio(const RealSequenceWindow& seq, double m) {
  require_constant(m, "M");
  RatioCheck check;
  check.m = m;
  check.report = ratio_report(seq);
  check.pass = check.report.m_hat <= m;
  return check;
}

EquivalenceVerdict decide_equiv_to_Z(const PlanarSet& set, const DivergenceConfig& config) {
  const Descriptor& d = set.descriptor();
  if (std::holds_alternative<AdditivePeriodic>(d)) return periodic_additive_check(d);

  if (std::holds_alternative<MultiplicativePeriodic>(d)) {
    EquivalenceVerdict v;
    v.kind = VerdictKind::Inconclusive;
    v.target = "Z";
    v.theorem = "Thm 2";
    v.evidence.window = std::pair<std::int64_t, std::int64_t>{0, static_cast<std::int64_t>(set.points().size()) - 1};
    v.evidence.notes.push_back(
        "multiplicative set accumulates at 0 and is not closed-discrete in C; compare against R' with the "
        "periodic checker instead");
    return v;
  }

  if (const auto* formula = std::get_if<CorpusFormula>(&d)) {
    if (auto v = decide_corpus(*formula, set)) return *std::move(v);
  }

  if (!set.is_real()) {
    EquivalenceVerdict v;
    v.kind = VerdictKind::Inconclusive;
    v.target = "Z";
    v.theorem = "none";
    v.evidence.window = std::pair<std::int64_t, std::int64_t>{0, static_cast<std::int64_t>(set.points().size()) - 1};
    v.evidence.notes.push_back(
        "non-real sample without a periodic descriptor; porosity is preserved by quasiconformal maps, so run "
        "the porosity estimator as a necessary-condition screen");
    return v;
  }
  return decide_real_sample(set, config);
}

EquivalenceVerdict periodic_additive_check(const Descriptor& descriptor) {
  const auto* d = std::get_if<AdditivePeriodic>(&descriptor);
  if (d == nullptr) {
    throw Error(Errc::WrongDescriptor, "expected additive_periodic, got " + descriptor_kind(descriptor));
  }
  validate_descriptor(descriptor);
  auto v = exact(d->count.is_finite() ? VerdictKind::ExactYes : VerdictKind::ExactNo, "Z", "Thm A");
  v.evidence.coset_count = d->count;
  if (d->count.is_finite()) {
    v.evidence.notes.push_back("E = Z + {a_1..a_m} with m = " + std::to_string(d->count.value()) +
                               " finite cosets");
  } else {
    v.evidence.notes.push_back("infinitely many cosets mod 1");
  }
  return v;
}

EquivalenceVerdict periodic_additive_check(const PlanarSet& set) { return periodic_additive_check(set.descriptor()); }

EquivalenceVerdict periodic_multiplicative_check(const Descriptor& descriptor) {
  const auto* d = std::get_if<MultiplicativePeriodic>(&descriptor);
  if (d == nullptr) {
    throw Error(Errc::WrongDescriptor, "expected multiplicative_periodic, got " + descriptor_kind(descriptor));
  }
  for (std::size_t i = 0; i < d->reps.size(); ++i) {
    if (d->reps[i] == Complex{0.0, 0.0}) {
      throw Error(Errc::ZeroInSet, "0 cannot be a representative", static_cast<std::int64_t>(i));
    }
  }
  validate_descriptor(descriptor);
  auto v = exact(d->count.is_finite() ? VerdictKind::ExactYes : VerdictKind::ExactNo, "R'", "Thm 2");
  v.evidence.coset_count = d->count;
  v.evidence.notes.push_back(d->count.is_finite() ? "quotient by z -> factor*z is a finitely punctured torus"
                                                  : "quotient by z -> factor*z has infinitely many punctures");
  return v;
}

EquivalenceVerdict periodic_multiplicative_check(const PlanarSet& set) {
  for (std::size_t i = 0; i < set.points().size(); ++i) {
    if (set.points()[i] == Complex{0.0, 0.0}) {
      throw Error(Errc::ZeroInSet, "0 belongs to the sample", static_cast<std::int64_t>(i));
    }
  }
  return periodic_multiplicative_check(set.descriptor());
}

double qs_constant_C(double m) {
  require_constant(m, "M");
  return m * (1.0 + m * (1.0 + m * (1.0 + m)));
}

double spacing_constant_L(double a) {
  require_constant(a, "A");
  return 8.0 * a * a;
}

double log_ratio_bound_from_K_L(double k, double l) {
  require_constant(k, "K");
  require_constant(l, "L");
  return kPi2 * k / std::log1p(1.0 / (l + 1.0));
}

double ratio_bound_from_K_L(double k, double l) { return std::exp(log_ratio_bound_from_K_L(k, l)); }

double ratio_bound_from_K_A(double k, double a) { return ratio_bound_from_K_L(k, spacing_constant_L(a)); }

double k_lower_bound_from_gap(double ell) {
  if (!(ell > 1.0) || !std::isfinite(ell)) {
    throw Error(Errc::BadGap, "gap must be a finite number > 1, got " + std::to_string(ell));
  }
  return std::log(ell) * std::numbers::ln2 / kPi2;
}

std::string_view to_string(SpacingFamily family) noexcept {
  switch (family) {
    case SpacingFamily::ConsecutiveGap: return "consecutive_gap";
    case SpacingFamily::SpanUpper: return "span_upper";
    case SpacingFamily::SpanLower: return "span_lower";
    case SpacingFamily::RatioUpper: return "ratio_upper";
    case SpacingFamily::RatioLower: return "ratio_lower";
  }
  return "unknown";
}

SpacingReport validate_image_spacing(const RealSequenceWindow& window, std::span<const double> images, double a,
                                     std::size_t max_listed) {
  require_constant(a, "A");
  if (images.size() != window.size()) {
    throw Error(Errc::LengthMismatch, "expected " + std::to_string(window.size()) + " images, got " +
                                          std::to_string(images.size()));
  }

  SpacingReport report;
  report.a_used = a;
  report.l_bound = spacing_constant_L(a);

  const std::int64_t first = window.first_index();
  const std::int64_t last = window.last_index();
  auto f = [&](std::int64_t n) { return images[static_cast<std::size_t>(n - first)]; };
  auto record = [&](std::int64_t n, std::int64_t k, SpacingFamily family, double quantity, double bound) {
    ++report.violation_count;
    if (report.violations.size() < max_listed) report.violations.push_back({n, k, family, quantity, bound});
  };

  for (std::int64_t n = first; n < last; ++n) {
    const double gap = std::abs(f(n) - f(n + 1));
    if (!(gap <= 2.0 * a)) record(n, 1, SpacingFamily::ConsecutiveGap, gap, 2.0 * a);
  }

  for (std::int64_t k = 2; k <= last - first; ++k) {
    const double upper = 2.0 * a * static_cast<double>(k);
    const double lower = static_cast<double>(k - 1) / (2.0 * a);
    for (std::int64_t n = first; n + k <= last; ++n) {
      const double span = std::abs(f(n) - f(n + k));
      if (!(span <= upper)) record(n, k, SpacingFamily::SpanUpper, span, upper);
      if (!(span >= lower)) record(n, k, SpacingFamily::SpanLower, span, lower);
    }
  }

  const double l = report.l_bound;
  for (std::int64_t n = first + 1; n < last; ++n) {
    const std::int64_t kmax = std::min(n - first, last - n);
    for (std::int64_t k = 1; k <= kmax; ++k) {
      const double num = std::abs(f(n + k) - f(n));
      const double den = std::abs(f(n) - f(n - k));
      double r = num / den;
      if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
      const double sym = (r == 0.0) ? std::numeric_limits<double>::infinity() : symmetric(r);
      report.l_hat = std::max(report.l_hat, sym);
      if (!(r <= l)) record(n, k, SpacingFamily::RatioUpper, r, l);
      if (!(r >= 1.0 / l)) record(n, k, SpacingFamily::RatioLower, r, 1.0 / l);
    }
  }
  return report;
}

}  // namespace qclat
