#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "gtheta/error.hpp"

namespace gtheta {

using cplx = std::complex<double>;

// Largest supported parameter count; k! stays an exact 64-bit integer up to 20!.
inline constexpr std::size_t max_parameters = 20;

// Exact k! for 0 <= k <= 20.
std::uint64_t factorial(std::size_t k);

// k! as a double. Exact for every k <= 20 (each such factorial has at most
// 53 significant bits once its powers of two are removed).
double factorial_d(std::size_t k);

enum class DomainStatus {
  ok,
  empty,
  odd_parameter_count,
  non_positive_last_imaginary,
  too_many_parameters,
};

// Checks the convergence domain of the series: an even number of parameters
// and a strictly positive imaginary part on the last one.
DomainStatus validate_domain(std::span<const cplx> taus) noexcept;

Errc to_errc(DomainStatus status) noexcept;

// Ordered parameters (tau_1, ..., tau_N) of a generalized theta function.
// Construction enforces the domain, so every instance is evaluable.
class ParameterVector {
 public:
  explicit ParameterVector(std::vector<cplx> taus);
  ParameterVector(std::initializer_list<cplx> taus) : ParameterVector(std::vector<cplx>(taus)) {}

  std::size_t size() const noexcept { return taus_.size(); }
  const cplx& operator[](std::size_t i) const { return taus_[i]; }
  // 1-based access matching the tau_k naming.
  const cplx& tau(std::size_t k) const { return taus_.at(k - 1); }
  std::span<const cplx> values() const noexcept { return taus_; }
  const std::vector<cplx>& vector() const noexcept { return taus_; }

  auto begin() const noexcept { return taus_.begin(); }
  auto end() const noexcept { return taus_.end(); }

  friend bool operator==(const ParameterVector&, const ParameterVector&) = default;

 private:
  std::vector<cplx> taus_;
};

// Orders of differentiation (alpha_1, ..., alpha_N) with respect to each tau_k.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<unsigned> orders) : orders_(std::move(orders)) {}
  MultiIndex(std::initializer_list<unsigned> orders) : orders_(orders) {}

  static MultiIndex zeros(std::size_t n) { return MultiIndex(std::vector<unsigned>(n, 0)); }

  std::size_t size() const noexcept { return orders_.size(); }
  unsigned operator[](std::size_t i) const { return orders_[i]; }
  // Order with respect to tau_k, 1-based; zero for k beyond the stored entries.
  unsigned order(std::size_t k) const noexcept { return k >= 1 && k <= orders_.size() ? orders_[k - 1] : 0; }
  std::span<const unsigned> orders() const noexcept { return orders_; }

  unsigned total_order() const noexcept;
  // Sum of k * alpha_k: the power of n in the termwise prefactor.
  unsigned weighted_degree() const noexcept;
  bool is_zero() const noexcept { return total_order() == 0; }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<unsigned> orders_;
};

}  // namespace gtheta
