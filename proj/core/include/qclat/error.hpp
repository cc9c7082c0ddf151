#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qclat {

enum class Errc {
  // construction
  NotStrictlyIncreasing,
  TooShort,
  DuplicatePoint,
  DescriptorViolation,
  TooFewPoints,
  // criteria
  BadConstant,
  BadGap,
  WrongDescriptor,
  ZeroInSet,
  LengthMismatch,
  // extension
  NonpositiveOffset,
  RealAxisInput,
  BadGrid,
  DegenerateJacobian,
  // geometry / modulus
  InsufficientCoverage,
  BadRadii,
  TouchingContinua,
  InvalidCondenser,
  MasksTooClose,
  SolverDivergence,
  // io
  ParseError,
  UnknownCorpus,
  BadParam,
};

std::string_view to_string(Errc code) noexcept;

// Numeric failures map to CLI exit code 3, everything else is an input error.
bool is_numeric_failure(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<std::int64_t> location = std::nullopt);

  Errc code() const noexcept { return code_; }
  /// Index, line number or similar locator when the error has one.
  std::optional<std::int64_t> location() const noexcept { return location_; }

 private:
  Errc code_;
  std::optional<std::int64_t> location_;
};

}  // namespace qclat
