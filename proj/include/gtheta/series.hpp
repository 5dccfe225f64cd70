#pragma once

#include <cstdint>

#include "gtheta/parameters.hpp"

namespace gtheta {

enum class ToleranceMode {
  // tail_bound <= tol.
  absolute,
  // tail_bound <= tol * (sum of term magnitudes), the scale at which double
  // precision can resolve the sum at all.
  relative,
};

struct EvalOptions {
  double tol = 1e-12;
  ToleranceMode mode = ToleranceMode::absolute;
  // Hard cap on the scanned index range on either side of zero.
  std::int64_t max_terms_per_side = std::int64_t{1} << 20;
};

inline EvalOptions absolute_tol(double tol) { return EvalOptions{tol, ToleranceMode::absolute}; }
inline EvalOptions relative_tol(double tol) { return EvalOptions{tol, ToleranceMode::relative}; }

struct SeriesRange {
  std::int64_t n_min = 0;
  std::int64_t n_max = 0;
  // Certified bound on the discarded terms on both sides.
  double certified_tail = 0.0;
};

struct EvalResult {
  cplx value;
  // Certified bound on |value - exact|: truncation plus floating-point error.
  double tail_bound = 0.0;
  double truncation_error = 0.0;
  double rounding_error = 0.0;
  // Sum of |term| over the summed range.
  double abs_sum = 0.0;
  std::int64_t n_min = 0;
  std::int64_t n_max = 0;
  std::int64_t terms_summed = 0;
};

// Summation range for the plain series. The index range is chosen from the
// actual term magnitudes: beyond it the log-magnitude is concave (so term
// ratios are non-increasing), the last N steps decrease strictly, the last
// included term is below the per-side target and the geometric tail bound
// from the last included ratio is below it too.
SeriesRange truncation_bound(const ParameterVector& params, double tol);
SeriesRange truncation_bound(const ParameterVector& params, const EvalOptions& options);

// sum_{n in Z} exp(2 pi i phi(n)), summed in the order 0, 1, -1, 2, -2, ...
// with compensated accumulation.
EvalResult theta_eval(const ParameterVector& params, double tol);
EvalResult theta_eval(const ParameterVector& params, const EvalOptions& options);

// sum over n in Z + a of exp(2 pi i phi(n)). For integer a this is the plain
// series term for term. Non-real offsets are accepted only while the decay
// certificate holds.
EvalResult theta_eval_offset(const ParameterVector& params, cplx offset, double tol);
EvalResult theta_eval_offset(const ParameterVector& params, cplx offset, const EvalOptions& options);

// Termwise derivative: each order in tau_k contributes 2 pi i n^k / k!.
EvalResult theta_derivative(const MultiIndex& alpha, const ParameterVector& params, double tol);
EvalResult theta_derivative(const MultiIndex& alpha, const ParameterVector& params, const EvalOptions& options);

}  // namespace gtheta
