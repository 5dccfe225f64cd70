#pragma once

#include <string>
#include <vector>

#include "gtheta/characteristics.hpp"
#include "gtheta/series.hpp"

namespace gtheta {

// (re + i im) * pi^pi_power with rational re, im.
struct ExactCoefficient {
  rational re;
  rational im;
  int pi_power = 0;

  cplx value() const;
};

struct PdeTerm {
  ExactCoefficient coeff;
  MultiIndex alpha;
};

// sum_terms coeff * d^alpha Theta = 0, written in derivatives with respect to
// the tau_k only.
struct PdeSpec {
  std::string name;
  std::vector<PdeTerm> terms;
};

// heat, tau-heat, delta-mixed, eta-mixed, quartic, rho-cubic. Real-time
// variables are eliminated through tau_2 = i t and tau_4 = i eta. For N = 2
// only heat and quartic apply.
std::vector<PdeSpec> builtin_pdes(std::size_t n);

// Same spec with the sign of its first term flipped.
PdeSpec sign_flipped(const PdeSpec& spec);

// One monomial c * pi^pi_power * n^n_degree of the termwise prefactor.
struct PrefactorMonomial {
  unsigned n_degree = 0;
  int pi_power = 0;
  rational re;
  rational im;
};

// sum_terms coeff * prod_k (2 pi i n^k / k!)^{alpha_k}, collected exactly;
// only nonzero monomials are returned.
std::vector<PrefactorMonomial> prefactor_polynomial(const PdeSpec& spec);

// True when the prefactor polynomial vanishes identically in n.
bool annihilates_symbolically(const PdeSpec& spec);

struct PdeResidual {
  cplx residual;
  // sum_terms |coeff| |d^alpha Theta|
  double scale = 0.0;
  // sum_terms |coeff| * tail_bound, a certified bound on |residual| for an exact solution.
  double bound = 0.0;

  double relative() const { return scale > 0.0 ? std::abs(residual) / scale : std::abs(residual); }
};

PdeResidual pde_residual(const PdeSpec& spec, const ParameterVector& params, double tol);
PdeResidual pde_residual(const PdeSpec& spec, const ParameterVector& params, const EvalOptions& options);

struct DifferenceOptions {
  double step = 0.0;  // 0 selects default_fd_step
  // Number of step halvings combined by Richardson extrapolation of the h^2 error.
  int richardson = -1;  // -1 selects the default for the derivative order
  // Steps are taken along step * direction in each differentiated parameter.
  cplx direction{1.0, 0.0};
  EvalOptions eval = relative_tol(1e-14);
};

// Order 1: step 1e-5, no extrapolation. Order 2: 2e-3 with one Richardson
// level. Orders 3 and 4: 1e-2 with two.
double default_fd_step(unsigned total_order);
int default_richardson(unsigned total_order);

// Tensor product of central stencils sum_j (-1)^j C(m, j) f(tau_k + (m/2 - j) h) / h^m.
cplx finite_difference(const MultiIndex& alpha, const ParameterVector& params, double step, double tol);
cplx finite_difference(const MultiIndex& alpha, const ParameterVector& params, const DifferenceOptions& options);

// d Theta / d(Im tau_2) by a central difference, and the value (1/4 pi) Theta_{tau_1 tau_1}
// the heat equation forces on it.
struct HeatFlow {
  cplx time_derivative;
  cplx predicted;
};

HeatFlow heat_flow(const ParameterVector& params, double step = 1e-5, const EvalOptions& options = relative_tol(1e-14));

}  // namespace gtheta
