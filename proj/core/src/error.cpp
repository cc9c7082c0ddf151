#include "qclat/error.hpp"

namespace qclat {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NotStrictlyIncreasing: return "NotStrictlyIncreasing";
    case Errc::TooShort: return "TooShort";
    case Errc::DuplicatePoint: return "DuplicatePoint";
    case Errc::DescriptorViolation: return "DescriptorViolation";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::BadConstant: return "BadConstant";
    case Errc::BadGap: return "BadGap";
    case Errc::WrongDescriptor: return "WrongDescriptor";
    case Errc::ZeroInSet: return "ZeroInSet";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NonpositiveOffset: return "NonpositiveOffset";
    case Errc::RealAxisInput: return "RealAxisInput";
    case Errc::BadGrid: return "BadGrid";
    case Errc::DegenerateJacobian: return "DegenerateJacobian";
    case Errc::InsufficientCoverage: return "InsufficientCoverage";
    case Errc::BadRadii: return "BadRadii";
    case Errc::TouchingContinua: return "TouchingContinua";
    case Errc::InvalidCondenser: return "InvalidCondenser";
    case Errc::MasksTooClose: return "MasksTooClose";
    case Errc::SolverDivergence: return "SolverDivergence";
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownCorpus: return "UnknownCorpus";
    case Errc::BadParam: return "BadParam";
  }
  return "Unknown";
}

bool is_numeric_failure(Errc code) noexcept {
  return code == Errc::SolverDivergence || code == Errc::DegenerateJacobian;
}

namespace {

std::string format_message(Errc code, const std::string& what, std::optional<std::int64_t> location) {
  std::string msg(to_string(code));
  if (location) msg += "(" + std::to_string(*location) + ")";
  if (!what.empty()) msg += ": " + what;
  return msg;
}

}  // namespace

Error::Error(Errc code, const std::string& what, std::optional<std::int64_t> location)
    : std::runtime_error(format_message(code, what, location)), code_(code), location_(location) {}

}  // namespace qclat
