#include <cmath>
#include <numbers>

#include "doctest.h"
#include "generators.hpp"
#include "gtheta/pde.hpp"

using namespace gtheta;
using gen::rel_err;

namespace {
constexpr cplx I{0.0, 1.0};
const double pi = std::numbers::pi;

std::vector<MultiIndex> catalog_indices(std::size_t n) {
  std::vector<MultiIndex> out;
  for (const PdeSpec& spec : builtin_pdes(n))
    for (const PdeTerm& t : spec.terms)
      if (std::find(out.begin(), out.end(), t.alpha) == out.end()) out.push_back(t.alpha);
  return out;
}
}  // namespace

TEST_CASE("builtin_pdes") {
  CHECK(builtin_pdes(2).size() == 2);
  CHECK(builtin_pdes(2)[0].name == "heat");
  CHECK(builtin_pdes(2)[1].name == "quartic");
  const std::vector<PdeSpec> all = builtin_pdes(4);
  REQUIRE(all.size() == 6);
  const char* names[] = {"heat", "tau-heat", "delta-mixed", "eta-mixed", "quartic", "rho-cubic"};
  for (int i = 0; i < 6; ++i) CHECK(all[i].name == names[i]);
  CHECK(builtin_pdes(6).size() == 6);
  CHECK_THROWS_AS(builtin_pdes(3), ThetaError);

  CHECK(std::abs(all[0].terms[1].coeff.value() + 1.0 / (4.0 * pi)) < 1e-16);
  CHECK(std::abs(all[1].terms[0].coeff.value() - 12.0 * pi * I) < 1e-14);
}

TEST_CASE("symbolic annihilation") {
  for (std::size_t n : {2u, 4u, 6u})
    for (const PdeSpec& spec : builtin_pdes(n)) {
      INFO(spec.name);
      CHECK(annihilates_symbolically(spec));
      CHECK_FALSE(annihilates_symbolically(sign_flipped(spec)));
    }

  // heat: i (pi i n^2) - (1/4 pi)(2 pi i n)^2, flipped: -2 pi n^2.
  const std::vector<PrefactorMonomial> flipped = prefactor_polynomial(sign_flipped(builtin_pdes(2)[0]));
  REQUIRE(flipped.size() == 1);
  CHECK(flipped[0].n_degree == 2);
  CHECK(flipped[0].pi_power == 1);
  CHECK(flipped[0].re == rational(2));
  CHECK(flipped[0].im == rational(0));
}

TEST_CASE("pde_residual") {
  const ParameterVector p{0.3 + 0.1 * I, I, 0.2, 2.0 * I};
  const PdeResidual heat = pde_residual(builtin_pdes(4)[0], p, relative_tol(1e-13));
  CHECK(heat.relative() < 1e-10);
  CHECK(std::abs(heat.residual) <= heat.bound);

  gen::Source src(61);
  for (int trial = 0; trial < 25; ++trial) {
    const ParameterVector q = src.params(4);
    for (const PdeSpec& spec : builtin_pdes(4)) {
      INFO(spec.name);
      const PdeResidual r = pde_residual(spec, q, relative_tol(1e-13));
      CHECK(r.relative() < 1e-9);
      CHECK(std::abs(r.residual) <= r.bound);
      CHECK(pde_residual(sign_flipped(spec), q, relative_tol(1e-13)).relative() > 0.1);
    }
  }
}

TEST_CASE("finite_difference") {
  const ParameterVector p{0.0, I};
  CHECK(finite_difference(MultiIndex{0, 0}, p, 1e-5, 1e-14) == theta_eval(p, relative_tol(1e-14)).value);

  const ParameterVector q{0.1 + 0.05 * I, I};
  const cplx d1 = finite_difference(MultiIndex{1, 0}, q, 1e-5, 1e-14);
  CHECK(rel_err(d1, theta_derivative(MultiIndex{1, 0}, q, relative_tol(1e-13)).value) < 1e-6);

  const ParameterVector r{0.3 + 0.1 * I, 0.1 + I, 0.2, 2.0 * I};
  const MultiIndex mixed{2, 1, 0, 0};
  CHECK(rel_err(finite_difference(mixed, r, DifferenceOptions{}), theta_derivative(mixed, r, relative_tol(1e-13)).value) <
        1e-5);

  // Stepping out of the domain is a domain error.
  CHECK_THROWS_AS(finite_difference(MultiIndex{0, 1}, ParameterVector{0.0, 1e-9 * I},
                                    DifferenceOptions{1e-3, 0, {0.0, 1.0}, relative_tol(1e-12)}),
                  ThetaError);
  CHECK_THROWS_AS(finite_difference(MultiIndex{5, 0}, q, 1e-3, 1e-12), ThetaError);
}

TEST_CASE("finite differences agree with the termwise derivatives") {
  gen::Source src(62);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const ParameterVector p = src.params(4);
    for (const MultiIndex& alpha : catalog_indices(4)) {
      const cplx fd = finite_difference(alpha, p, DifferenceOptions{});
      const cplx an = theta_derivative(alpha, p, relative_tol(1e-13)).value;
      worst = std::max(worst, rel_err(fd, an));
      CHECK(rel_err(fd, an) < 1e-5);
    }
  }
  MESSAGE("worst finite-difference error " << worst);
}

TEST_CASE("heat flow along the imaginary part of tau_2") {
  gen::Source src(63);
  for (int trial = 0; trial < 10; ++trial) {
    const ParameterVector p = src.params(2 * static_cast<std::size_t>(src.integer(1, 3)));
    const HeatFlow f = heat_flow(p);
    CHECK(rel_err(f.time_derivative, f.predicted) < 1e-5);
  }
}
