#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gtheta/parameters.hpp"
#include "gtheta/series.hpp"

namespace gtheta {

// T_a: quasi-period shift of the parameters together with its multiplier,
// so that theta(new_params) = multiplier * theta_a(params).
struct TAction {
  cplx multiplier;
  ParameterVector new_params;
};

TAction apply_T(cplx a, const ParameterVector& params);

// S(b): entrywise translation of the parameters.
ParameterVector apply_S(std::span<const cplx> b, const ParameterVector& params);

// Translation (1! j_1, 2! j_2, ..., N! j_N), under which the plain series is
// invariant term by term.
std::vector<cplx> lattice_translation(std::span<const std::int64_t> j);

// Sign pattern of the commutation exponent. `plus` is phi(a; b); `minus` is
// a b_1 - a^2/2! b_2 - a^3/3! b_3 - ..., kept as a negative control.
enum class PhaseConvention { plus, minus };

// exp(-2 pi i phi(a; b)), with b taking the place of the parameters.
cplx commutation_phase(cplx a, std::span<const cplx> b, PhaseConvention convention = PhaseConvention::plus);

// Both operator orderings evaluated on actual series: for integer a,
// theta(T_a S_b params) = commutation_phase(a, b) * mult_T(a, params) * theta(S_b params).
struct CommutationCheck {
  cplx lhs;
  cplx rhs;
  cplx phase;
  double relative_error = 0.0;
};

CommutationCheck check_commutation(cplx a, std::span<const cplx> b, const ParameterVector& params,
                                   const EvalOptions& options = relative_tol(1e-12),
                                   PhaseConvention convention = PhaseConvention::plus);

// Element (lambda, a, b_1, ..., b_N) with lambda = exp(2 pi i t). The phase t
// is kept as a complex number with its real part reduced to [0, 1); it is
// real, and lambda unimodular, whenever the element was built from real data.
class GroupElement {
 public:
  GroupElement(cplx phase, cplx a, std::vector<cplx> b);

  static GroupElement identity(std::size_t n);
  static GroupElement pure_T(cplx a, std::size_t n);
  static GroupElement pure_S(std::vector<cplx> b);

  cplx phase() const noexcept { return phase_; }
  double lambda_phase() const noexcept { return phase_.real(); }
  cplx lambda() const;
  cplx a() const noexcept { return a_; }
  std::span<const cplx> b() const noexcept { return b_; }
  std::size_t size() const noexcept { return b_.size(); }
  bool is_unimodular() const noexcept { return phase_.imag() == 0.0; }

 private:
  cplx phase_;
  cplx a_;
  std::vector<cplx> b_;
};

// (t, a, b) (t', a', b') = (t + t' - phi(a; b'), a + a', b + A_a b'), where
// (A_a b')_i = sum_{j >= i} a^{j-i} / (j-i)! b'_j is the quasi-period shift of
// b'. The law is the one carried by matrix_rep, which makes it associative.
GroupElement group_multiply(const GroupElement& g1, const GroupElement& g2);

// (-t + phi(-a; b), -a, -A_{-a} b).
GroupElement group_inverse(const GroupElement& g);

// Distance between two elements, with phases compared mod 1.
double group_distance(const GroupElement& g1, const GroupElement& g2);

// Dense (N+2) x (N+2) matrix, row major.
class RepMatrix {
 public:
  explicit RepMatrix(std::size_t size);

  static RepMatrix identity(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * size_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return entries_[i * size_ + j]; }

  bool is_upper_unitriangular() const;

  friend RepMatrix operator*(const RepMatrix& x, const RepMatrix& y);

 private:
  std::size_t size_;
  std::vector<cplx> entries_;
};

// Row 0: (1, a, a^2/2!, ..., a^N/N!, -t); rows 1..N: a^{j-i}/(j-i)! on and
// above the diagonal with b_i in the last column; last row e_{N+1}.
RepMatrix matrix_rep(const GroupElement& g);

// Largest entrywise difference, with the phase entry compared mod 1.
double rep_distance(const RepMatrix& x, const RepMatrix& y);

struct MatrixAction {
  cplx phase;
  ParameterVector new_params;
};

// Applies m to the column (input_phase, tau_1, ..., tau_N, 1).
MatrixAction matrix_apply(const RepMatrix& m, const ParameterVector& params, cplx input_phase = 0.0);

}  // namespace gtheta
