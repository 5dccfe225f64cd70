#include "gtheta/heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <string>

#include "gtheta/phase.hpp"

namespace gtheta {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

cplx reduce_phase(cplx t) {
  double re = t.real() - std::floor(t.real());
  if (re >= 1.0) re = 0.0;
  return {re, t.imag()};
}

// Distance between two real numbers on R / Z.
double circle_distance(double x, double y) {
  const double d = std::abs(x - y);
  const double f = d - std::floor(d);
  return std::min(f, 1.0 - f);
}

void require_same_size(std::size_t n1, std::size_t n2, const char* what) {
  if (n1 != n2)
    throw ThetaError(Errc::dimension_mismatch,
                     std::string(what) + ": sizes " + std::to_string(n1) + " and " + std::to_string(n2) + " differ");
}

// (A_a b)_i = sum_{j >= i} a^{j-i} / (j-i)! b_j, i.e. the derivatives of phi(.; b) at a.
std::vector<cplx> stencil_apply(cplx a, std::span<const cplx> b) { return shift_coefficients(a, b); }

}  // namespace

TAction apply_T(cplx a, const ParameterVector& params) {
  return {std::exp(cplx{0.0, -two_pi} * phase_value(a, params.values())), shifted_params(a, params)};
}

ParameterVector apply_S(std::span<const cplx> b, const ParameterVector& params) {
  require_same_size(b.size(), params.size(), "apply_S");
  std::vector<cplx> out = params.vector();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += b[k];
  return ParameterVector(std::move(out));
}

std::vector<cplx> lattice_translation(std::span<const std::int64_t> j) {
  std::vector<cplx> b(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) b[k] = factorial_d(k + 1) * static_cast<double>(j[k]);
  return b;
}

cplx commutation_phase(cplx a, std::span<const cplx> b, PhaseConvention convention) {
  if (b.empty()) return 1.0;
  if (convention == PhaseConvention::plus) return std::exp(cplx{0.0, -two_pi} * phase_value(a, b));
  std::vector<cplx> flipped(b.begin(), b.end());
  for (std::size_t k = 1; k < flipped.size(); ++k) flipped[k] = -flipped[k];
  return std::exp(cplx{0.0, -two_pi} * phase_value(a, flipped));
}

CommutationCheck check_commutation(cplx a, std::span<const cplx> b, const ParameterVector& params,
                                   const EvalOptions& options, PhaseConvention convention) {
  const ParameterVector translated = apply_S(b, params);
  CommutationCheck c;
  c.phase = commutation_phase(a, b, convention);
  c.lhs = theta_eval(apply_T(a, translated).new_params, options).value;
  c.rhs = c.phase * apply_T(a, params).multiplier * theta_eval_offset(translated, a, options).value;
  c.relative_error = std::abs(c.lhs - c.rhs) / std::max(std::abs(c.rhs), std::numeric_limits<double>::min());
  return c;
}

GroupElement::GroupElement(cplx phase, cplx a, std::vector<cplx> b)
    : phase_(reduce_phase(phase)), a_(a), b_(std::move(b)) {
  if (b_.empty()) throw ThetaError(Errc::dimension_too_small, "group element needs at least one b entry");
}

GroupElement GroupElement::identity(std::size_t n) { return {0.0, 0.0, std::vector<cplx>(n)}; }
GroupElement GroupElement::pure_T(cplx a, std::size_t n) { return {0.0, a, std::vector<cplx>(n)}; }
GroupElement GroupElement::pure_S(std::vector<cplx> b) { return {0.0, 0.0, std::move(b)}; }

cplx GroupElement::lambda() const { return std::exp(cplx{0.0, two_pi} * phase_); }

GroupElement group_multiply(const GroupElement& g1, const GroupElement& g2) {
  require_same_size(g1.size(), g2.size(), "group_multiply");
  std::vector<cplx> b = stencil_apply(g1.a(), g2.b());
  for (std::size_t k = 0; k < b.size(); ++k) b[k] += g1.b()[k];
  return {g1.phase() + g2.phase() - phase_value(g1.a(), g2.b()), g1.a() + g2.a(), std::move(b)};
}

GroupElement group_inverse(const GroupElement& g) {
  std::vector<cplx> b = stencil_apply(-g.a(), g.b());
  for (cplx& x : b) x = -x;
  return {-g.phase() + phase_value(-g.a(), g.b()), -g.a(), std::move(b)};
}

double group_distance(const GroupElement& g1, const GroupElement& g2) {
  require_same_size(g1.size(), g2.size(), "group_distance");
  double d = std::max(circle_distance(g1.phase().real(), g2.phase().real()),
                      std::abs(g1.phase().imag() - g2.phase().imag()));
  d = std::max(d, std::abs(g1.a() - g2.a()));
  for (std::size_t k = 0; k < g1.size(); ++k) d = std::max(d, std::abs(g1.b()[k] - g2.b()[k]));
  return d;
}

RepMatrix::RepMatrix(std::size_t size) : size_(size), entries_(size * size) {}

RepMatrix RepMatrix::identity(std::size_t size) {
  RepMatrix m(size);
  for (std::size_t i = 0; i < size; ++i) m(i, i) = 1.0;
  return m;
}

bool RepMatrix::is_upper_unitriangular() const {
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)(i, i) != cplx{1.0, 0.0}) return false;
    for (std::size_t j = 0; j < i; ++j)
      if ((*this)(i, j) != cplx{0.0, 0.0}) return false;
  }
  return true;
}

RepMatrix operator*(const RepMatrix& x, const RepMatrix& y) {
  require_same_size(x.size(), y.size(), "matrix product");
  const std::size_t n = x.size();
  RepMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx xik = x(i, k);
      if (xik == cplx{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

RepMatrix matrix_rep(const GroupElement& g) {
  const std::size_t n = g.size();
  RepMatrix m = RepMatrix::identity(n + 2);
  // powers[d] = a^d / d!
  std::vector<cplx> powers(n + 1);
  powers[0] = 1.0;
  for (std::size_t d = 1; d <= n; ++d) powers[d] = powers[d - 1] * g.a() / static_cast<double>(d);
  for (std::size_t j = 1; j <= n; ++j) m(0, j) = powers[j];
  m(0, n + 1) = -g.phase();
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) m(i, j) = powers[j - i];
    m(i, n + 1) = g.b()[i - 1];
  }
  return m;
}

double rep_distance(const RepMatrix& x, const RepMatrix& y) {
  require_same_size(x.size(), y.size(), "rep_distance");
  const std::size_t n = x.size();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == 0 && j == n - 1) {
        d = std::max(d, circle_distance(x(i, j).real(), y(i, j).real()));
        d = std::max(d, std::abs(x(i, j).imag() - y(i, j).imag()));
      } else {
        d = std::max(d, std::abs(x(i, j) - y(i, j)));
      }
    }
  return d;
}

MatrixAction matrix_apply(const RepMatrix& m, const ParameterVector& params, cplx input_phase) {
  require_same_size(m.size(), params.size() + 2, "matrix_apply");
  const std::size_t n = params.size();
  std::vector<cplx> column(n + 2);
  column[0] = input_phase;
  for (std::size_t k = 0; k < n; ++k) column[k + 1] = params[k];
  column[n + 1] = 1.0;

  std::vector<cplx> out(n + 2);
  for (std::size_t i = 0; i < n + 2; ++i)
    for (std::size_t j = i; j < n + 2; ++j) out[i] += m(i, j) * column[j];
  return {out[0], ParameterVector(std::vector<cplx>(out.begin() + 1, out.end() - 1))};
}

}  // namespace gtheta
