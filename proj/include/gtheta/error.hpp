#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gtheta {

enum class Errc {
  odd_parameter_count,
  non_positive_last_imaginary,
  too_many_parameters,
  empty_parameters,
  range_overflow,
  complex_offset_divergence,
  precision_loss,
  dimension_mismatch,
  dimension_too_small,
  degenerate_point,
  invalid_argument,
};

std::string_view to_string(Errc code) noexcept;

// Domain and evaluation failures of the library. The code is stable and is
// what callers (and the CLI exit-code mapping) dispatch on.
class ThetaError : public std::runtime_error {
 public:
  ThetaError(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace gtheta
