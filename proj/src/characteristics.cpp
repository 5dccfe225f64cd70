#include "gtheta/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gtheta/phase.hpp"
#include "kernel.hpp"

namespace gtheta {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr std::int64_t exact_double_limit = std::int64_t{1} << 53;
constexpr std::int64_t max_family_size = std::int64_t{1} << 24;

// base^e, or -1 once the result would exceed limit.
std::int64_t checked_power(std::int64_t base, std::size_t e, std::int64_t limit) {
  std::int64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > limit / base) return -1;
    r *= base;
  }
  return r;
}

std::int64_t floor_mod(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

void check_level(std::int64_t level, std::size_t n) {
  if (level < 1) throw ThetaError(Errc::invalid_argument, "level must be a positive integer");
  if (n < 2 || n % 2 != 0) throw ThetaError(Errc::odd_parameter_count, "parameter count must be even and at least 2");
  if (n > max_parameters) throw ThetaError(Errc::too_many_parameters, "at most 20 parameters are supported");
  if (checked_power(level, n - 1, exact_double_limit) < 0)
    throw ThetaError(Errc::invalid_argument, "level " + std::to_string(level) + " is too large for " +
                                                 std::to_string(n) + " parameters");
}

detail::dd to_dd(const rational& r) {
  if (std::abs(r.numerator()) >= exact_double_limit || r.denominator() >= exact_double_limit)
    throw ThetaError(Errc::invalid_argument, "characteristic entry exceeds the exact double range");
  return detail::dd{static_cast<double>(r.numerator())} / static_cast<double>(r.denominator());
}

}  // namespace

Characteristic::Characteristic(std::int64_t level, std::size_t n, std::int64_t a_num, std::vector<std::int64_t> b_num)
    : level_(level), n_(n), b_num_(std::move(b_num)) {
  check_level(level, n);
  if (b_num_.size() != n - 1)
    throw ThetaError(Errc::dimension_mismatch, "characteristic needs " + std::to_string(n - 1) + " b entries, got " +
                                                   std::to_string(b_num_.size()));
  a_num_ = floor_mod(a_num, level);
  for (std::size_t k = 1; k < n; ++k) b_num_[k - 1] = floor_mod(b_num_[k - 1], b_denominator(k));
}

Characteristic Characteristic::zero(std::int64_t level, std::size_t n) {
  check_level(level, n);
  return {level, n, 0, std::vector<std::int64_t>(n - 1, 0)};
}

std::int64_t Characteristic::b_denominator(std::size_t k) const {
  if (k < 1 || k >= n_) throw ThetaError(Errc::invalid_argument, "b index out of range");
  return checked_power(level_, n_ - k, exact_double_limit);
}

CharacteristicShift Characteristic::raw() const {
  CharacteristicShift s{a(), std::vector<rational>(n_)};
  for (std::size_t k = 1; k < n_; ++k) s.shifts[k - 1] = b(k);
  return s;
}

CharacteristicShift Characteristic::factorial_scaled() const {
  CharacteristicShift s{a(), std::vector<rational>(n_)};
  for (std::size_t k = 1; k < n_; ++k) s.shifts[k - 1] = b(k) * static_cast<std::int64_t>(factorial(k));
  return s;
}

std::string Characteristic::to_string() const {
  auto frac = [](const rational& r) {
    return r.denominator() == 1 ? std::to_string(r.numerator())
                                : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
  };
  std::string out = "[" + frac(a()) + ";";
  for (std::size_t k = 1; k < n_; ++k) out += (k == 1 ? " " : ", ") + frac(b(k));
  return out + "]";
}

std::int64_t characteristic_count(std::int64_t level, std::size_t n) {
  check_level(level, n);
  const std::int64_t count = checked_power(level, 1 + n * (n - 1) / 2, max_family_size);
  if (count < 0) throw ThetaError(Errc::invalid_argument, "characteristic family exceeds 2^24 members");
  return count;
}

std::vector<Characteristic> enumerate_chars(std::int64_t level, std::size_t n) {
  const std::int64_t count = characteristic_count(level, n);
  std::vector<Characteristic> out;
  out.reserve(static_cast<std::size_t>(count));
  // Mixed-radix counter: digit 0 is a, digit j >= 1 is b_{N-j}.
  std::vector<std::int64_t> radix(n);
  radix[0] = level;
  for (std::size_t j = 1; j < n; ++j) radix[j] = checked_power(level, j, exact_double_limit);
  std::vector<std::int64_t> digit(n, 0);
  for (std::int64_t idx = 0; idx < count; ++idx) {
    std::vector<std::int64_t> b(n - 1);
    for (std::size_t k = 1; k < n; ++k) b[k - 1] = digit[n - k];
    out.emplace_back(level, n, digit[0], std::move(b));
    for (std::size_t j = 0; j < n; ++j) {
      if (++digit[j] < radix[j]) break;
      digit[j] = 0;
    }
  }
  return out;
}

EvalResult theta_char_eval(const Characteristic& ch, const ParameterVector& params, double tol) {
  return theta_char_eval(ch, params, absolute_tol(tol));
}

EvalResult theta_char_eval(const Characteristic& ch, const ParameterVector& params, const EvalOptions& options) {
  if (ch.size() != params.size())
    throw ThetaError(Errc::dimension_mismatch, "characteristic is for " + std::to_string(ch.size()) +
                                                   " parameters, got " + std::to_string(params.size()));
  return theta_char_eval(ch.raw(), params, options);
}

EvalResult theta_char_eval(const CharacteristicShift& shift, const ParameterVector& params, const EvalOptions& options) {
  if (shift.shifts.size() != params.size())
    throw ThetaError(Errc::dimension_mismatch, "shift vector does not match the parameter count");
  std::vector<detail::dd> shifts(shift.shifts.size());
  for (std::size_t k = 0; k < shifts.size(); ++k) shifts[k] = to_dd(shift.shifts[k]);
  // Shifts only move the real parts, so the domain of the shifted parameters is that of params.
  detail::SeriesSpec spec;
  spec.params = params.values();
  spec.shifts = shifts;
  spec.offset_re = to_dd(shift.offset);
  return detail::sum_series(spec, MultiIndex::zeros(params.size()), options);
}

ParameterVector scaled_params(const ParameterVector& params, std::int64_t level) {
  check_level(level, params.size());
  const std::size_t n = params.size();
  std::vector<cplx> q(n);
  for (std::size_t k = 1; k <= n; ++k)
    q[k - 1] = params.tau(k) * static_cast<double>(checked_power(level, n - k, exact_double_limit));
  return ParameterVector(std::move(q));
}

ProjectivePoint char_family(const ParameterVector& scaled, std::int64_t level, const EvalOptions& options) {
  const std::vector<Characteristic> chars = enumerate_chars(level, scaled.size());
  ProjectivePoint p;
  p.coords.reserve(chars.size());
  for (const Characteristic& ch : chars) p.coords.push_back(theta_char_eval(ch.factorial_scaled(), scaled, options).value);
  return p;
}

ProjectivePoint embed(const ParameterVector& params, std::int64_t level, double tol) {
  return embed(params, level, absolute_tol(tol));
}

ProjectivePoint embed(const ParameterVector& params, std::int64_t level, const EvalOptions& options) {
  return char_family(scaled_params(params, level), level, options);
}

namespace {

std::size_t largest_coordinate(const ProjectivePoint& x) {
  std::size_t j = 0;
  for (std::size_t i = 1; i < x.coords.size(); ++i)
    if (std::abs(x.coords[i]) > std::abs(x.coords[j])) j = i;
  if (x.coords.empty() || !(std::abs(x.coords[j]) > x.floor))
    throw ThetaError(Errc::degenerate_point, "all projective coordinates are below the floor");
  return j;
}

double max_abs(const ProjectivePoint& x) {
  double m = 0.0;
  for (const cplx& c : x.coords) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

ProjectiveComparison projective_equal(const ProjectivePoint& x, const ProjectivePoint& y, double tol) {
  if (x.coords.size() != y.coords.size())
    throw ThetaError(Errc::dimension_mismatch, "projective points have different lengths");
  const std::size_t j = largest_coordinate(x);
  (void)largest_coordinate(y);
  ProjectiveComparison r;
  r.scalar = y.coords[j] / x.coords[j];
  double worst = 0.0;
  for (std::size_t i = 0; i < x.coords.size(); ++i) worst = std::max(worst, std::abs(y.coords[i] - r.scalar * x.coords[i]));
  r.residual = worst / max_abs(y);
  r.equal = r.residual <= tol;
  return r;
}

PermutationReport match_permutation(const ProjectivePoint& x, const ProjectivePoint& y, double tol) {
  if (x.coords.size() != y.coords.size())
    throw ThetaError(Errc::dimension_mismatch, "projective points have different lengths");
  (void)largest_coordinate(x);
  const std::size_t n = x.coords.size();
  const double scale = max_abs(x);
  auto gap = [&](std::size_t i, std::size_t j) { return std::abs(std::abs(y.coords[i]) - std::abs(x.coords[j])) / scale; };

  // A family may contain coordinates of equal magnitude (even identical
  // series), so matches are ambiguous. Keep i -> i where it fits, then assign
  // the rest to unused coordinates of matching magnitude.
  PermutationReport r;
  r.permutation.assign(n, n);
  r.phases.resize(n);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i)
    if (gap(i, i) <= tol) {
      r.permutation[i] = i;
      used[i] = true;
    }
  for (std::size_t i = 0; i < n; ++i) {
    if (r.permutation[i] != n) continue;
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j)
      if (!used[j] && gap(i, j) <= tol) {
        best = j;
        break;
      }
    if (best == n) {
      best = 0;
      for (std::size_t j = 1; j < n; ++j)
        if (gap(i, j) < gap(i, best)) best = j;
    }
    r.permutation[i] = best;
    used[best] = true;
  }
  r.bijective = std::all_of(used.begin(), used.end(), [](bool u) { return u; });
  for (std::size_t i = 0; i < n; ++i) {
    const cplx xb = x.coords[r.permutation[i]];
    // Coordinates that vanish to working accuracy carry no phase information.
    r.phases[i] = std::abs(xb) > tol * scale ? y.coords[i] / xb : cplx{1.0, 0.0};
    r.residual = std::max(r.residual, gap(i, r.permutation[i]));
  }
  r.ok = r.bijective && r.residual <= tol;
  return r;
}

GroupElement make_gamma_element(std::int64_t level, std::size_t n, std::int64_t alpha,
                                const std::vector<std::int64_t>& beta) {
  check_level(level, n);
  if (beta.size() != n - 1)
    throw ThetaError(Errc::dimension_mismatch, "Gamma_l element needs " + std::to_string(n - 1) + " b entries");
  std::vector<cplx> b(n);
  for (std::size_t k = 1; k < n; ++k)
    b[k - 1] = factorial_d(k) * static_cast<double>(checked_power(level, n - k, exact_double_limit)) *
               static_cast<double>(beta[k - 1]);
  return {0.0, static_cast<double>(level * alpha), std::move(b)};
}

FamilyAction group_action_on_family(const GroupElement& g, const ParameterVector& params, std::int64_t level,
                                    const EvalOptions& options, double match_tol) {
  const ParameterVector moved = matrix_apply(matrix_rep(g), params).new_params;
  const ParameterVector q = scaled_params(params, level);
  FamilyAction act;
  act.multiplier = std::exp(cplx{0.0, -two_pi} * phase_value(static_cast<double>(level) * g.a(), q.values()));
  act.original = char_family(q, level, options);
  act.transformed = char_family(scaled_params(moved, level), level, options);
  ProjectivePoint normalized = act.transformed;
  for (cplx& c : normalized.coords) c /= act.multiplier;
  act.report = match_permutation(act.original, normalized, match_tol);
  return act;
}

std::vector<cplx> unit_lattice_shift(std::int64_t level, std::size_t n) {
  std::vector<cplx> b(n);
  for (std::size_t k = 1; k <= n; ++k) b[k - 1] = factorial_d(k) * static_cast<double>(level);
  return b;
}

ParameterVector chain_project(const ParameterVector& params) {
  if (params.size() < 4)
    throw ThetaError(Errc::dimension_too_small, "chain projection needs at least 4 parameters, got " +
                                                    std::to_string(params.size()));
  return ParameterVector(std::vector<cplx>(params.begin() + 2, params.end()));
}

SecondDerivativePhase phase_second_derivative(const ParameterVector& params) {
  if (params.size() < 4)
    throw ThetaError(Errc::dimension_too_small, "chain projection needs at least 4 parameters, got " +
                                                    std::to_string(params.size()));
  // phi(n) = sum_k tau_k n^k / k!, so d^2/dn^2 carries n^j with weight
  // tau_{j+2} (j+2)(j+1) / (j+2)!. As a parameter of the new phase the slot
  // j >= 1 takes j! times that weight; the ratio is an exact integer.
  const std::size_t n = params.size();
  SecondDerivativePhase out;
  out.params.resize(n - 2);
  for (std::size_t j = 0; j + 2 <= n; ++j) {
    const std::uint64_t num = (j + 2) * (j + 1) * factorial(j);
    const std::uint64_t den = factorial(j + 2);
    const double weight = static_cast<double>(num / den);
    if (num % den != 0) throw ThetaError(Errc::invalid_argument, "non-integral coefficient ratio");
    const cplx c = params.tau(j + 2) * weight;
    if (j == 0)
      out.constant = c;
    else
      out.params[j - 1] = c;
  }
  return out;
}

}  // namespace gtheta
