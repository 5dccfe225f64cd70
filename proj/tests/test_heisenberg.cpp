#include <cmath>
#include <numbers>

#include "doctest.h"
#include "generators.hpp"
#include "gtheta/heisenberg.hpp"
#include "gtheta/phase.hpp"
#include "oracle.hpp"

using namespace gtheta;
using gen::rel_err;

namespace {
constexpr cplx I{0.0, 1.0};
const double pi = std::numbers::pi;

GroupElement random_element(gen::Source& src, std::size_t n, bool real) {
  const double t = src.uniform(0.0, 1.0);
  if (real) return {t, src.uniform(-1.5, 1.5), src.real_vector(n, 1.0)};
  return {t, src.complex_in(1.0, 0.5), src.complex_vector(n, 1.0)};
}

// The law with plain addition of the b entries.
GroupElement additive_multiply(const GroupElement& g1, const GroupElement& g2) {
  std::vector<cplx> b(g1.b().begin(), g1.b().end());
  for (std::size_t k = 0; k < b.size(); ++k) b[k] += g2.b()[k];
  return {g1.phase() + g2.phase() - phase_value(g1.a(), g2.b()), g1.a() + g2.a(), b};
}
}  // namespace

TEST_CASE("apply_T") {
  const ParameterVector p{0.3 + 0.1 * I, -0.2 + 0.05 * I, 0.1, 0.2 + I};
  const TAction zero = apply_T(0.0, p);
  CHECK(zero.multiplier == cplx{1.0, 0.0});
  CHECK(zero.new_params == p);

  const TAction one = apply_T(1.0, ParameterVector{0.0, I});
  CHECK(std::abs(one.multiplier - std::exp(pi)) < 1e-12);
  CHECK(one.new_params == ParameterVector{I, I});
  const cplx lhs = theta_eval(one.new_params, relative_tol(1e-14)).value;
  CHECK(std::abs(lhs - cplx{25.140854031838732728, 0.0}) < 1e-12);
  CHECK(rel_err(lhs, one.multiplier * theta_eval(ParameterVector{0.0, I}, 1e-14).value) < 1e-13);

  // T_{a1} then T_{a2} is T_{a1 + a2}, multipliers included.
  gen::Source src(41);
  for (int trial = 0; trial < 20; ++trial) {
    const cplx a1 = src.complex_in(1.0, 0.3);
    const cplx a2 = src.complex_in(1.0, 0.3);
    const TAction first = apply_T(a1, p);
    const TAction second = apply_T(a2, first.new_params);
    const TAction both = apply_T(a1 + a2, p);
    CHECK(rel_err(first.multiplier * second.multiplier, both.multiplier) < 1e-12);
    for (std::size_t k = 0; k < p.size(); ++k) CHECK(std::abs(second.new_params[k] - both.new_params[k]) < 1e-12);
  }
}

TEST_CASE("apply_S") {
  const ParameterVector p{0.3 + 0.1 * I, -0.2 + 0.05 * I, 0.1, 0.2 + 0.9 * I};
  CHECK(apply_S(std::vector<cplx>(4), p) == p);
  CHECK_THROWS_AS(apply_S(std::vector<cplx>(2), p), ThetaError);
  try {
    (void)apply_S(std::vector<cplx>{0.0, 0.0, 0.0, -2.0 * p[3].imag() * I}, p);
    FAIL("expected a domain error");
  } catch (const ThetaError& e) {
    CHECK(e.code() == Errc::non_positive_last_imaginary);
  }

  const std::vector<std::int64_t> ones{1, 1, 1, 1};
  const std::vector<cplx> b = lattice_translation(ones);
  CHECK(b == std::vector<cplx>{1.0, 2.0, 6.0, 24.0});
  const EvalResult before = theta_eval(p, 1e-13);
  const EvalResult after = theta_eval(apply_S(b, p), 1e-13);
  CHECK(std::abs(before.value - after.value) <= before.tail_bound + after.tail_bound);
}

TEST_CASE("commutation_phase") {
  CHECK(commutation_phase(0.0, std::vector<cplx>{0.3, 0.2, 0.1, 0.4}) == cplx{1.0, 0.0});
  CHECK(commutation_phase(0.7, std::vector<cplx>(4)) == cplx{1.0, 0.0});
  const cplx a{0.4, 0.1};
  CHECK(rel_err(commutation_phase(a, std::vector<cplx>{0.3, 0.0, 0.0, 0.0}), std::exp(-2.0 * pi * I * a * 0.3)) < 1e-15);

  gen::Source src(42);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 * static_cast<std::size_t>(src.integer(1, 3));
    const ParameterVector p = src.params(n);
    const double a = double(src.integer(-3, 3));
    const std::vector<cplx> b = src.real_vector(n, 0.5);
    const CommutationCheck c = check_commutation(a, b, p);
    CHECK(c.relative_error < 1e-9);
  }
  // Non-integer a goes through the offset sum.
  const ParameterVector p{0.1 + 0.05 * I, 0.2 + I};
  CHECK(check_commutation(cplx{0.3, 0.1}, std::vector<cplx>{0.2, 0.1}, p).relative_error < 1e-9);
}

TEST_CASE("commutation: the minus-sign convention fails") {
  gen::Source src(43);
  int failures = 0;
  const int trials = 20;
  for (int trial = 0; trial < trials; ++trial) {
    const ParameterVector p = src.params(4);
    const double a = double(src.integer(1, 3));
    const std::vector<cplx> b = src.real_vector(4, 0.5);
    const CommutationCheck plus = check_commutation(a, b, p);
    const CommutationCheck minus = check_commutation(a, b, p, relative_tol(1e-12), PhaseConvention::minus);
    CHECK(plus.relative_error < 1e-9);
    if (minus.relative_error > 1e-3) ++failures;
  }
  CHECK(failures == trials);
}

TEST_CASE("group law") {
  gen::Source src(44);
  for (std::size_t n : {2u, 4u, 6u}) {
    const GroupElement e = GroupElement::identity(n);
    for (int trial = 0; trial < 20; ++trial) {
      const GroupElement g1 = random_element(src, n, trial % 2 == 0);
      const GroupElement g2 = random_element(src, n, trial % 2 == 0);
      const GroupElement g3 = random_element(src, n, trial % 2 == 0);
      CHECK(group_distance(group_multiply(e, g1), g1) < 1e-15);
      CHECK(group_distance(group_multiply(g1, e), g1) < 1e-15);
      CHECK(group_distance(group_multiply(g1, group_multiply(g2, g3)), group_multiply(group_multiply(g1, g2), g3)) <
            1e-12);
      CHECK(group_distance(group_multiply(g1, group_inverse(g1)), e) < 1e-12);
      CHECK(group_distance(group_multiply(group_inverse(g1), g1), e) < 1e-12);
    }
  }

  // Pure T elements: no phase correction, a adds.
  const GroupElement t = group_multiply(GroupElement::pure_T(0.3, 4), GroupElement::pure_T(0.5, 4));
  CHECK(t.phase() == cplx{0.0, 0.0});
  CHECK(t.a() == cplx{0.8, 0.0});
  // Pure S elements: b adds.
  const GroupElement s = group_multiply(GroupElement::pure_S({0.1, 0.2}), GroupElement::pure_S({0.3, 0.4}));
  CHECK(std::abs(s.b()[0] - 0.4) < 1e-15);
  CHECK(std::abs(s.b()[1] - 0.6) < 1e-15);

  CHECK_THROWS_AS(group_multiply(GroupElement::identity(2), GroupElement::identity(4)), ThetaError);
  CHECK(GroupElement(1.25, 0.0, {0.0, 0.0}).lambda_phase() == 0.25);
  CHECK(GroupElement(-0.25, 0.0, {0.0, 0.0}).lambda_phase() == 0.75);
  CHECK(random_element(src, 4, true).is_unimodular());
}

TEST_CASE("group law: plain addition of b is not associative") {
  gen::Source src(45);
  // The two laws agree when the left factor has a = 0.
  for (int trial = 0; trial < 10; ++trial) {
    const GroupElement g1{src.uniform(0.0, 1.0), 0.0, src.real_vector(4, 1.0)};
    const GroupElement g2 = random_element(src, 4, true);
    CHECK(group_distance(additive_multiply(g1, g2), group_multiply(g1, g2)) < 1e-15);
  }
  for (std::size_t n : {2u, 4u}) {
    std::vector<cplx> b(n);
    b[1] = 1.0;
    const GroupElement g1 = GroupElement::pure_T(0.5, n);
    const GroupElement g3 = GroupElement::pure_S(b);
    const double gap = group_distance(additive_multiply(g1, additive_multiply(g1, g3)),
                                      additive_multiply(additive_multiply(g1, g1), g3));
    CHECK(gap == doctest::Approx(0.25));
    CHECK(group_distance(group_multiply(g1, group_multiply(g1, g3)), group_multiply(group_multiply(g1, g1), g3)) <
          1e-15);
  }
}

TEST_CASE("matrix_rep") {
  CHECK(rep_distance(matrix_rep(GroupElement::identity(4)), RepMatrix::identity(6)) == 0.0);

  const RepMatrix t = matrix_rep(GroupElement::pure_T(2.0, 4));
  CHECK(t.size() == 6);
  CHECK(t.is_upper_unitriangular());
  const double row[] = {1.0, 2.0, 2.0, 4.0 / 3.0, 2.0 / 3.0, 0.0};
  for (int j = 0; j < 6; ++j) CHECK(t(0, j) == cplx{row[j], 0.0});
  for (int i = 1; i <= 4; ++i)
    for (int j = i; j <= 4; ++j) CHECK(t(i, j) == cplx{row[j - i], 0.0});

  gen::Source src(46);
  for (std::size_t n : {4u, 6u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const cplx a1 = src.complex_in(1.5, 1.5);
      const cplx a2 = src.complex_in(1.5, 1.5);
      const RepMatrix lhs = matrix_rep(GroupElement::pure_T(a2, n)) * matrix_rep(GroupElement::pure_T(a1, n));
      CHECK(rep_distance(lhs, matrix_rep(GroupElement::pure_T(a1 + a2, n))) < 1e-12);

      const GroupElement g1 = random_element(src, n, trial % 2 == 0);
      const GroupElement g2 = random_element(src, n, trial % 2 == 0);
      const RepMatrix m = matrix_rep(g1);
      CHECK(m.is_upper_unitriangular());
      CHECK(rep_distance(matrix_rep(group_multiply(g1, g2)), m * matrix_rep(g2)) < 1e-12);
    }
  }
}

TEST_CASE("matrix_apply") {
  const ParameterVector p{0.3 + 0.1 * I, -0.2 + 0.05 * I, 0.1 - 0.02 * I, 0.2 + I};
  const MatrixAction same = matrix_apply(RepMatrix::identity(6), p, 0.25);
  CHECK(same.phase == cplx{0.25, 0.0});
  CHECK(same.new_params == p);

  gen::Source src(47);
  for (int trial = 0; trial < 20; ++trial) {
    const cplx a = src.complex_in(1.5, 0.5);
    const MatrixAction r = matrix_apply(matrix_rep(GroupElement::pure_T(a, 4)), p, 0.0);
    const ParameterVector want = shifted_params(a, p);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(r.new_params[k] - want[k]) < 1e-12);
    CHECK(std::abs(r.phase - phase_value(a, p.values())) < 1e-12);
  }

  const std::vector<cplx> b{0.1, 0.2, 0.3, 0.4};
  const MatrixAction s = matrix_apply(matrix_rep(GroupElement::pure_S(b)), p, 0.1);
  CHECK(s.phase == cplx{0.1, 0.0});
  CHECK(s.new_params == apply_S(b, p));

  CHECK_THROWS_AS(matrix_apply(RepMatrix::identity(4), p), ThetaError);
}
