#pragma once

#include <span>
#include <vector>

#include "gtheta/parameters.hpp"

namespace gtheta {

// phi(a) = sum_{k=1}^{N} a^k / k! * c_k for an arbitrary coefficient vector;
// nested evaluation on the coefficients c_k / k!.
cplx phase_value(cplx a, std::span<const cplx> coeffs);

// m-th derivative in a of phase_value: sum_{k=0}^{N-m} a^k / k! * c_{k+m},
// with the m = 0 case equal to phase_value and zero beyond the degree.
cplx phase_value_derivative(unsigned m, cplx a, std::span<const cplx> coeffs);

// (phi'(a), phi''(a), ..., phi^(N)(a)) for an arbitrary coefficient vector.
std::vector<cplx> shift_coefficients(cplx a, std::span<const cplx> coeffs);

// sum_k |c_k| / k! * |a|^k; bounds the magnitude of every partial sum in the
// nested evaluation and thereby its rounding error.
double phase_abs_bound(double abs_a, std::span<const cplx> coeffs);

// The phase polynomial whose coefficients are a parameter vector. Its
// derivatives at zero reproduce the parameters.
class PhasePolynomial {
 public:
  explicit PhasePolynomial(ParameterVector params) : params_(std::move(params)) {}

  const ParameterVector& params() const noexcept { return params_; }
  std::size_t degree() const noexcept { return params_.size(); }

  cplx operator()(cplx a) const { return phase_value(a, params_.values()); }
  cplx derivative(unsigned m, cplx a) const { return phase_value_derivative(m, a, params_.values()); }

 private:
  ParameterVector params_;
};

cplx phase_eval(cplx a, const PhasePolynomial& phi);
cplx phase_derivative(unsigned m, cplx a, const PhasePolynomial& phi);

// Parameters after the quasi-period shift by a: entry m is phi^(m)(a). The last
// entry is tau_N itself, so the result stays in the convergence domain.
ParameterVector shifted_params(cplx a, const ParameterVector& params);

}  // namespace gtheta
