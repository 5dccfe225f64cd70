#include "gtheta/phase.hpp"

#include <cmath>

namespace gtheta {

cplx phase_value_derivative(unsigned m, cplx a, std::span<const cplx> coeffs) {
  const std::size_t n = coeffs.size();
  if (m == 0) return phase_value(a, coeffs);
  if (m > n) return {0.0, 0.0};
  // sum_{k=0}^{n-m} a^k / k! * c_{k+m}, nested from the top.
  const std::size_t top = n - m;
  cplx acc = coeffs[n - 1] / factorial_d(top);
  for (std::size_t k = top; k-- > 0;) acc = acc * a + coeffs[k + m - 1] / factorial_d(k);
  return acc;
}

cplx phase_value(cplx a, std::span<const cplx> coeffs) {
  const std::size_t n = coeffs.size();
  if (n == 0) return {0.0, 0.0};
  cplx acc = coeffs[n - 1] / factorial_d(n);
  for (std::size_t k = n - 1; k >= 1; --k) acc = acc * a + coeffs[k - 1] / factorial_d(k);
  return acc * a;
}

std::vector<cplx> shift_coefficients(cplx a, std::span<const cplx> coeffs) {
  std::vector<cplx> out(coeffs.size());
  for (std::size_t m = 1; m <= coeffs.size(); ++m) out[m - 1] = phase_value_derivative(static_cast<unsigned>(m), a, coeffs);
  return out;
}

double phase_abs_bound(double abs_a, std::span<const cplx> coeffs) {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k >= 1; --k) acc = (acc + std::abs(coeffs[k - 1]) / factorial_d(k)) * abs_a;
  return acc;
}

cplx phase_eval(cplx a, const PhasePolynomial& phi) { return phi(a); }

cplx phase_derivative(unsigned m, cplx a, const PhasePolynomial& phi) { return phi.derivative(m, a); }

ParameterVector shifted_params(cplx a, const ParameterVector& params) {
  return ParameterVector(shift_coefficients(a, params.values()));
}

}  // namespace gtheta
