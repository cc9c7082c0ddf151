#include "qclat/verdict.hpp"

namespace qclat {

std::string_view to_string(VerdictKind kind) noexcept {
  switch (kind) {
    case VerdictKind::ExactYes: return "ExactYes";
    case VerdictKind::ExactNo: return "ExactNo";
    case VerdictKind::ConsistentWithEquivalence: return "ConsistentWithEquivalence";
    case VerdictKind::Inconsistent: return "Inconsistent";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

}  // namespace qclat
