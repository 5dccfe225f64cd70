#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "gtheta/heisenberg.hpp"
#include "gtheta/parameters.hpp"
#include "gtheta/series.hpp"

namespace gtheta {

using rational = boost::rational<std::int64_t>;

// Exact offset and parameter shifts of a characteristic series. There is one
// shift per parameter; the last one is always zero.
struct CharacteristicShift {
  rational offset;
  std::vector<rational> shifts;
};

// Rational characteristic [a; b_1, ..., b_{N-1}] of level l. a has
// denominator l and b_k denominator l^{N-k}; all entries lie in [0, 1) and are
// stored as numerators over those denominators.
class Characteristic {
 public:
  // Numerators are reduced into range, so any integers are accepted.
  Characteristic(std::int64_t level, std::size_t n, std::int64_t a_num, std::vector<std::int64_t> b_num);

  static Characteristic zero(std::int64_t level, std::size_t n);

  std::int64_t level() const noexcept { return level_; }
  std::size_t size() const noexcept { return n_; }
  std::int64_t a_numerator() const noexcept { return a_num_; }
  // Numerator of b_k, 1 <= k <= N-1.
  std::int64_t b_numerator(std::size_t k) const { return b_num_.at(k - 1); }
  std::int64_t b_denominator(std::size_t k) const;

  rational a() const { return {a_num_, level_}; }
  rational b(std::size_t k) const { return {b_numerator(k), b_denominator(k)}; }

  // (a; b_1, ..., b_{N-1}, 0)
  CharacteristicShift raw() const;
  // (a; 1! b_1, 2! b_2, ..., (N-1)! b_{N-1}, 0), the convention of the embedding.
  CharacteristicShift factorial_scaled() const;

  // "[1/2; 0, 1/4, 1/2]"
  std::string to_string() const;

  friend bool operator==(const Characteristic&, const Characteristic&) = default;

 private:
  std::int64_t level_;
  std::size_t n_;
  std::int64_t a_num_;
  std::vector<std::int64_t> b_num_;
};

// l^{1 + N(N-1)/2}.
std::int64_t characteristic_count(std::int64_t level, std::size_t n);

// All characteristics of level l for N parameters; a varies fastest, then
// b_{N-1}, ..., then b_1 slowest.
std::vector<Characteristic> enumerate_chars(std::int64_t level, std::size_t n);

// sum_{n in Z} exp(2 pi i sum_k (n + a)^k / k! (tau_k + b_k)) with b_N = 0.
EvalResult theta_char_eval(const Characteristic& ch, const ParameterVector& params, double tol);
EvalResult theta_char_eval(const Characteristic& ch, const ParameterVector& params, const EvalOptions& options);
EvalResult theta_char_eval(const CharacteristicShift& shift, const ParameterVector& params, const EvalOptions& options);

// (l^{N-1} tau_1, l^{N-2} tau_2, ..., l tau_{N-1}, tau_N).
ParameterVector scaled_params(const ParameterVector& params, std::int64_t level);

struct ProjectivePoint {
  std::vector<cplx> coords;
  // Coordinates below this magnitude count as zero.
  double floor = 1e-250;
};

// The family of factorial-scaled characteristic series at already scaled
// parameters, in enumerate_chars order.
ProjectivePoint char_family(const ParameterVector& scaled, std::int64_t level, const EvalOptions& options);

// char_family at scaled_params(params, l).
ProjectivePoint embed(const ParameterVector& params, std::int64_t level, double tol);
ProjectivePoint embed(const ParameterVector& params, std::int64_t level, const EvalOptions& options);

struct ProjectiveComparison {
  bool equal = false;
  cplx scalar;
  // max_i |y_i - scalar x_i| / max_i |y_i|
  double residual = 0.0;
};

// Scalar from the largest coordinate of x; equal iff the residual is <= tol.
ProjectiveComparison projective_equal(const ProjectivePoint& x, const ProjectivePoint& y, double tol);

// y_i = phases[i] * x_{permutation[i]}, found by matching magnitudes.
struct PermutationReport {
  std::vector<std::size_t> permutation;
  std::vector<cplx> phases;
  // Largest | |phase| - 1 | and largest relative magnitude mismatch.
  double residual = 0.0;
  bool bijective = false;
  bool ok = false;
};

PermutationReport match_permutation(const ProjectivePoint& x, const ProjectivePoint& y, double tol);

// (0, l alpha, 1! l^{N-1} beta_1, 2! l^{N-2} beta_2, ..., (N-1)! l beta_{N-1}, 0).
GroupElement make_gamma_element(std::int64_t level, std::size_t n, std::int64_t alpha,
                                const std::vector<std::int64_t>& beta);

struct FamilyAction {
  // exp(-2 pi i phi(l a; scaled params)), divided out of the transformed family.
  cplx multiplier;
  ProjectivePoint original;
  ProjectivePoint transformed;
  PermutationReport report;
};

// Evaluates the family at matrix_apply(g, params) and matches it against the
// family at params, up to the predicted multiplier.
FamilyAction group_action_on_family(const GroupElement& g, const ParameterVector& params, std::int64_t level,
                                    const EvalOptions& options, double match_tol = 1e-8);

// (l, 2! l, 3! l, ..., N! l).
std::vector<cplx> unit_lattice_shift(std::int64_t level, std::size_t n);

// (tau_3, ..., tau_N).
ParameterVector chain_project(const ParameterVector& params);

// d^2/dn^2 phi(n) as a polynomial in n: constant term tau_2, then the
// parameters of the remaining phase, derived through exact factorial ratios.
struct SecondDerivativePhase {
  cplx constant;
  std::vector<cplx> params;
};

SecondDerivativePhase phase_second_derivative(const ParameterVector& params);

}  // namespace gtheta
