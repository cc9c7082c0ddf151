#include "qclat/sequence.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qclat/error.hpp"

namespace qclat {

double RealSequenceWindow::at(std::int64_t n) const {
  if (!contains(n)) {
    throw std::out_of_range("sequence index " + std::to_string(n) + " outside window [" +
                            std::to_string(first_index()) + ", " + std::to_string(last_index()) + "]");
  }
  return (*this)[n];
}

RealSequenceWindow build_sequence(std::vector<double> values, std::int64_t base_index) {
  if (values.size() < 3) {
    throw Error(Errc::TooShort, "a sequence window needs at least 3 values, got " + std::to_string(values.size()));
  }
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    // written as !(a < b) so NaN is rejected too
    if (!(values[i] < values[i + 1]) || !std::isfinite(values[i]) || !std::isfinite(values[i + 1])) {
      throw Error(Errc::NotStrictlyIncreasing, "values must be finite and strictly increasing",
                  static_cast<std::int64_t>(i));
    }
  }
  return RealSequenceWindow(std::move(values), base_index);
}

}  // namespace qclat
