#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qclat/planar_set.hpp"

namespace qclat {

enum class VerdictKind { ExactYes, ExactNo, ConsistentWithEquivalence, Inconsistent, Inconclusive };

std::string_view to_string(VerdictKind kind) noexcept;

/// Ratio r = (a_{n+k} - a_n) / (a_n - a_{n-k}) at sequence index n, offset k.
struct RatioWitness {
  std::int64_t n = 0;
  std::int64_t k = 0;
  double ratio = 1.0;
  friend bool operator==(const RatioWitness&, const RatioWitness&) = default;
};

struct WindowGrowth {
  std::size_t size = 0;
  double m_hat = 1.0;
  friend bool operator==(const WindowGrowth&, const WindowGrowth&) = default;
};

struct Evidence {
  std::optional<double> m_hat;
  std::optional<RatioWitness> witness;
  std::optional<CosetCount> coset_count;
  /// Sequence index range [first, last] of the window the heuristic used.
  std::optional<std::pair<std::int64_t, std::int64_t>> window;
  /// m_hat on the nested centered sub-windows, smallest first.
  std::vector<WindowGrowth> growth;
  std::vector<std::string> notes;
  friend bool operator==(const Evidence&, const Evidence&) = default;
};

/// Decision about quasiconformal equivalence. `target` names the model set
/// ("Z" for C\Z, "R'" for C*\{2^n}); `theorem` is a short tag such as
/// "Thm A", "Thm lem", "Thm B", "Thm 2", or "heuristic".
struct EquivalenceVerdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::string target = "Z";
  std::string theorem;
  Evidence evidence;

  bool is_exact() const noexcept { return kind == VerdictKind::ExactYes || kind == VerdictKind::ExactNo; }
  friend bool operator==(const EquivalenceVerdict&, const EquivalenceVerdict&) = default;
};

}  // namespace qclat
