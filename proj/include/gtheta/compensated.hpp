#pragma once

#include <cmath>
#include <complex>

namespace gtheta {

// Neumaier's variant of Kahan summation. The running compensation also
// captures the case where the incoming term is larger than the partial sum.
template <typename Real>
class CompensatedSum {
 public:
  void add(Real x) noexcept {
    const Real t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  Real value() const noexcept { return sum_ + comp_; }

 private:
  Real sum_{0};
  Real comp_{0};
};

template <typename Real>
class CompensatedComplexSum {
 public:
  void add(const std::complex<Real>& z) noexcept {
    re_.add(z.real());
    im_.add(z.imag());
  }

  std::complex<Real> value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<Real> re_;
  CompensatedSum<Real> im_;
};

}  // namespace gtheta
