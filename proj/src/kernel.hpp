#pragma once

// Summation kernel shared by the plain, offset and characteristic series.

#include <span>

#include "ddouble.hpp"
#include "gtheta/series.hpp"

namespace gtheta::detail {

struct SeriesSpec {
  std::span<const cplx> params;
  // Real shifts added to the parameters in extended precision. Empty or one
  // per parameter.
  std::span<const dd> shifts;
  dd offset_re;
  double offset_im = 0.0;
};

SeriesRange plan_series(const SeriesSpec& spec, const MultiIndex& alpha, const EvalOptions& options);
EvalResult sum_series(const SeriesSpec& spec, const MultiIndex& alpha, const EvalOptions& options);

}  // namespace gtheta::detail
