#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qclat/planar_set.hpp"
#include "qclat/sequence.hpp"
#include "qclat/verdict.hpp"

namespace qclat {

// ---------------------------------------------------------------------------
// Ratio condition on a real sequence
// ---------------------------------------------------------------------------

/// Smallest M certified by the window for
///   1/M <= (a_{n+k} - a_n) / (a_n - a_{n-k}) <= M,
/// taken over every (n, k >= 1) with n-k and n+k inside the window.
/// `witness` is the lexicographically smallest (n, k) attaining m_hat and
/// carries the raw ratio r, not max(r, 1/r).
struct RatioReport {
  double m_hat = 1.0;
  RatioWitness witness;
  std::size_t pairs_tested = 0;
};

RatioReport ratio_report(const RealSequenceWindow& seq);

struct RatioCheck {
  bool pass = false;
  double m = 1.0;
  RatioReport report;
};

/// pass iff ratio_report(seq).m_hat <= m. Throws BadConstant for m < 1 (or NaN).
RatioCheck check_ratio(const RealSequenceWindow& seq, double m);

// ---------------------------------------------------------------------------
// Equivalence decisions
// ---------------------------------------------------------------------------

/// Window-level divergence heuristic for explicit real samples: m_hat is
/// computed on centered sub-windows of sizes min_window, 2*min_window, ...
/// and the sample is reported Inconsistent when each of the last `doublings`
/// steps multiplies m_hat by at least `growth_factor`.
struct DivergenceConfig {
  double growth_factor = 2.0;
  int doublings = 3;
  std::size_t min_window = 4;
};

EquivalenceVerdict decide_equiv_to_Z(const PlanarSet& set, const DivergenceConfig& config = {});

/// Exact verdict for E = Z + {reps}: equivalent to Z iff the coset count is finite.
/// Throws WrongDescriptor for any other descriptor kind.
EquivalenceVerdict periodic_additive_check(const Descriptor& descriptor);
EquivalenceVerdict periodic_additive_check(const PlanarSet& set);

/// Exact verdict for a multiplicative set against R' = C* \ {2^n}: equivalent
/// iff the coset count is finite. Throws WrongDescriptor or ZeroInSet.
EquivalenceVerdict periodic_multiplicative_check(const Descriptor& descriptor);
EquivalenceVerdict periodic_multiplicative_check(const PlanarSet& set);

// ---------------------------------------------------------------------------
// Scalar bounds
// ---------------------------------------------------------------------------

/// Quasisymmetry constant of the piecewise-linear interpolant of an
/// M-ratio sequence: M^4 + M^3 + M^2 + M.
double qs_constant_C(double m);

/// Ratio band 8A^2 for images of a sequence under a map whose image curve
/// has turning constant A.
double spacing_constant_L(double a);

/// Natural log of exp(pi^2 K / log(1 + 1/(L+1))). Finite where the bound itself overflows.
double log_ratio_bound_from_K_L(double k, double l);
/// exp(pi^2 K / log(1 + 1/(L+1))); may be +inf for large arguments.
double ratio_bound_from_K_L(double k, double l);
/// Same bound with L = 8A^2.
double ratio_bound_from_K_A(double k, double a);

/// Least K not contradicted by an image gap ell > 1: log(ell) * log(2) / pi^2.
/// Throws BadGap for ell <= 1.
double k_lower_bound_from_gap(double ell);

// ---------------------------------------------------------------------------
// Image spacing lemmas
// ---------------------------------------------------------------------------

enum class SpacingFamily {
  ConsecutiveGap,  // |f(a_n) - f(a_{n+1})| <= 2A
  SpanUpper,       // |f(a_n) - f(a_{n+k})| <= 2Ak, k >= 2
  SpanLower,       // |f(a_n) - f(a_{n+k})| >= (k-1)/(2A), k >= 2
  RatioUpper,      // |f(a_{n+k}) - f(a_n)| / |f(a_n) - f(a_{n-k})| <= L
  RatioLower,      // ... >= 1/L
};

std::string_view to_string(SpacingFamily family) noexcept;

struct SpacingViolation {
  std::int64_t n = 0;
  std::int64_t k = 0;
  SpacingFamily family = SpacingFamily::ConsecutiveGap;
  double quantity = 0.0;
  double bound = 0.0;
};

struct SpacingReport {
  double a_used = 1.0;
  double l_bound = 8.0;
  /// First `max_listed` violations in (family, n, k) scan order.
  std::vector<SpacingViolation> violations;
  std::size_t violation_count = 0;
  /// Observed max over (n, k) of max(r', 1/r') for the image ratio r'.
  double l_hat = 1.0;

  bool ok() const noexcept { return violation_count == 0; }
};

/// Checks the consecutive-gap, span and ratio inequalities for images
/// f(a_n) indexed like `window`. Throws LengthMismatch or BadConstant (A < 1).
SpacingReport validate_image_spacing(const RealSequenceWindow& window, std::span<const double> images, double a,
                                     std::size_t max_listed = 1000);

}  // namespace qclat
