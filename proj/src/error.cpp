#include "gtheta/error.hpp"

namespace gtheta {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::odd_parameter_count: return "OddParameterCount";
    case Errc::non_positive_last_imaginary: return "NonPositiveLastImaginary";
    case Errc::too_many_parameters: return "TooManyParameters";
    case Errc::empty_parameters: return "EmptyParameters";
    case Errc::range_overflow: return "RangeOverflow";
    case Errc::complex_offset_divergence: return "ComplexOffsetDivergence";
    case Errc::precision_loss: return "PrecisionLoss";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::dimension_too_small: return "DimensionTooSmall";
    case Errc::degenerate_point: return "DegeneratePoint";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace gtheta
