#pragma once

// Seeded generators for the property-style tests.

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "gtheta/parameters.hpp"

namespace gen {

using gtheta::cplx;

struct ParamRanges {
  double real_span = 0.5;   // Re tau_k uniform in [-real_span, real_span]
  double imag_span = 0.15;  // Im tau_k, k < N, uniform in [-imag_span, imag_span]
  double last_imag_lo = 0.6;
  double last_imag_hi = 1.6;
};

class Source {
 public:
  explicit Source(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_); }
  cplx complex_in(double re, double im) { return {uniform(-re, re), uniform(-im, im)}; }

  gtheta::ParameterVector params(std::size_t n, const ParamRanges& r = {}) {
    std::vector<cplx> t(n);
    for (std::size_t k = 0; k + 1 < n; ++k) t[k] = {uniform(-r.real_span, r.real_span), uniform(-r.imag_span, r.imag_span)};
    t[n - 1] = {uniform(-r.real_span, r.real_span), uniform(r.last_imag_lo, r.last_imag_hi)};
    return gtheta::ParameterVector(std::move(t));
  }

  std::vector<cplx> real_vector(std::size_t n, double span) {
    std::vector<cplx> v(n);
    for (auto& x : v) x = {uniform(-span, span), 0.0};
    return v;
  }

  std::vector<cplx> complex_vector(std::size_t n, double span) {
    std::vector<cplx> v(n);
    for (auto& x : v) x = complex_in(span, span);
    return v;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double rel_err(cplx got, cplx want) {
  const double scale = std::abs(want);
  return scale == 0.0 ? std::abs(got) : std::abs(got - want) / scale;
}

}  // namespace gen
