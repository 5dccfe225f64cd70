#include "gtheta/parameters.hpp"

#include <array>
#include <string>

namespace gtheta {

namespace {

constexpr std::array<std::uint64_t, max_parameters + 1> factorials = [] {
  std::array<std::uint64_t, max_parameters + 1> f{};
  f[0] = 1;
  for (std::size_t k = 1; k <= max_parameters; ++k) f[k] = f[k - 1] * k;
  return f;
}();

}  // namespace

std::uint64_t factorial(std::size_t k) {
  if (k > max_parameters) throw ThetaError(Errc::too_many_parameters, "factorial argument " + std::to_string(k) + " exceeds 20");
  return factorials[k];
}

double factorial_d(std::size_t k) { return static_cast<double>(factorial(k)); }

DomainStatus validate_domain(std::span<const cplx> taus) noexcept {
  if (taus.empty()) return DomainStatus::empty;
  if (taus.size() % 2 != 0) return DomainStatus::odd_parameter_count;
  if (taus.size() > max_parameters) return DomainStatus::too_many_parameters;
  if (!(taus.back().imag() > 0.0)) return DomainStatus::non_positive_last_imaginary;
  return DomainStatus::ok;
}

Errc to_errc(DomainStatus status) noexcept {
  switch (status) {
    case DomainStatus::empty: return Errc::empty_parameters;
    case DomainStatus::odd_parameter_count: return Errc::odd_parameter_count;
    case DomainStatus::non_positive_last_imaginary: return Errc::non_positive_last_imaginary;
    case DomainStatus::too_many_parameters: return Errc::too_many_parameters;
    case DomainStatus::ok: break;
  }
  return Errc::invalid_argument;
}

ParameterVector::ParameterVector(std::vector<cplx> taus) : taus_(std::move(taus)) {
  const DomainStatus status = validate_domain(taus_);
  if (status == DomainStatus::ok) return;
  std::string detail;
  switch (status) {
    case DomainStatus::empty: detail = "no parameters given"; break;
    case DomainStatus::odd_parameter_count:
      detail = "parameter count " + std::to_string(taus_.size()) + " is odd; the series diverges in one direction of n";
      break;
    case DomainStatus::too_many_parameters:
      detail = "parameter count " + std::to_string(taus_.size()) + " exceeds the supported maximum of 20";
      break;
    case DomainStatus::non_positive_last_imaginary:
      detail = "imag(tau_" + std::to_string(taus_.size()) + ") = " + std::to_string(taus_.back().imag()) +
               " must be strictly positive";
      break;
    case DomainStatus::ok: break;
  }
  throw ThetaError(to_errc(status), detail);
}

unsigned MultiIndex::total_order() const noexcept {
  unsigned s = 0;
  for (unsigned a : orders_) s += a;
  return s;
}

unsigned MultiIndex::weighted_degree() const noexcept {
  unsigned s = 0;
  for (std::size_t k = 0; k < orders_.size(); ++k) s += static_cast<unsigned>(k + 1) * orders_[k];
  return s;
}

}  // namespace gtheta
