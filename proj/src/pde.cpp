#include "gtheta/pde.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <utility>

namespace gtheta {

namespace {

MultiIndex orders(std::size_t n, std::initializer_list<std::pair<std::size_t, unsigned>> entries) {
  std::vector<unsigned> a(n, 0);
  for (const auto& [k, m] : entries) a.at(k - 1) = m;
  return MultiIndex(std::move(a));
}

PdeTerm term(std::int64_t re_num, std::int64_t re_den, std::int64_t im_num, std::int64_t im_den, int pi_power,
             MultiIndex alpha) {
  return {{rational(re_num, re_den), rational(im_num, im_den), pi_power}, std::move(alpha)};
}

void check_parameter_count(std::size_t n) {
  if (n < 2 || n % 2 != 0) throw ThetaError(Errc::odd_parameter_count, "parameter count must be even and at least 2");
  if (n > max_parameters) throw ThetaError(Errc::too_many_parameters, "at most 20 parameters are supported");
}

}  // namespace

cplx ExactCoefficient::value() const {
  const double r = static_cast<double>(re.numerator()) / static_cast<double>(re.denominator());
  const double i = static_cast<double>(im.numerator()) / static_cast<double>(im.denominator());
  return cplx{r, i} * std::pow(std::numbers::pi, pi_power);
}

std::vector<PdeSpec> builtin_pdes(std::size_t n) {
  check_parameter_count(n);
  // heat: i Theta_{2} - (1/4 pi) Theta_{11}
  PdeSpec heat{"heat", {term(0, 1, 1, 1, 0, orders(n, {{2, 1}})), term(-1, 4, 0, 1, -1, orders(n, {{1, 2}}))}};
  // quartic: Theta_{1111} + 16 pi^2 Theta_{22}
  PdeSpec quartic{"quartic", {term(1, 1, 0, 1, 0, orders(n, {{1, 4}})), term(16, 1, 0, 1, 2, orders(n, {{2, 2}}))}};
  if (n == 2) return {heat, quartic};

  // tau-heat: 12 pi i Theta_{4} - Theta_{22}
  PdeSpec tau_heat{"tau-heat", {term(0, 1, 12, 1, 1, orders(n, {{4, 1}})), term(-1, 1, 0, 1, 0, orders(n, {{2, 2}}))}};
  // delta-mixed: 48 pi^2 Theta_{4} + Theta_{211}
  PdeSpec delta_mixed{"delta-mixed",
                      {term(48, 1, 0, 1, 2, orders(n, {{4, 1}})), term(1, 1, 0, 1, 0, orders(n, {{1, 2}, {2, 1}}))}};
  // eta-mixed: 4 pi i Theta_{4} - Theta_{22} + Theta_{31}
  PdeSpec eta_mixed{"eta-mixed",
                    {term(0, 1, 4, 1, 1, orders(n, {{4, 1}})), term(-1, 1, 0, 1, 0, orders(n, {{2, 2}})),
                     term(1, 1, 0, 1, 0, orders(n, {{1, 1}, {3, 1}}))}};
  // rho-cubic: 24 pi^2 Theta_{3} + Theta_{111}
  PdeSpec rho_cubic{"rho-cubic", {term(24, 1, 0, 1, 2, orders(n, {{3, 1}})), term(1, 1, 0, 1, 0, orders(n, {{1, 3}}))}};
  return {heat, tau_heat, delta_mixed, eta_mixed, quartic, rho_cubic};
}

PdeSpec sign_flipped(const PdeSpec& spec) {
  PdeSpec out = spec;
  out.name += "-flipped";
  if (!out.terms.empty()) {
    out.terms[0].coeff.re = -out.terms[0].coeff.re;
    out.terms[0].coeff.im = -out.terms[0].coeff.im;
  }
  return out;
}

std::vector<PrefactorMonomial> prefactor_polynomial(const PdeSpec& spec) {
  // (n-degree, pi power) -> Gaussian rational
  std::map<std::pair<unsigned, int>, std::pair<rational, rational>> acc;
  for (const PdeTerm& t : spec.terms) {
    rational re = t.coeff.re;
    rational im = t.coeff.im;
    int pi_power = t.coeff.pi_power;
    for (std::size_t k = 1; k <= t.alpha.size(); ++k) {
      const auto kf = static_cast<std::int64_t>(factorial(k));
      for (unsigned r = 0; r < t.alpha.order(k); ++r) {
        // times 2 i / k!
        const rational new_re = -2 * im / kf;
        im = 2 * re / kf;
        re = new_re;
        ++pi_power;
      }
    }
    auto& slot = acc[{t.alpha.weighted_degree(), pi_power}];
    slot.first += re;
    slot.second += im;
  }
  std::vector<PrefactorMonomial> out;
  for (const auto& [key, value] : acc)
    if (value.first.numerator() != 0 || value.second.numerator() != 0)
      out.push_back({key.first, key.second, value.first, value.second});
  return out;
}

bool annihilates_symbolically(const PdeSpec& spec) { return prefactor_polynomial(spec).empty(); }

PdeResidual pde_residual(const PdeSpec& spec, const ParameterVector& params, double tol) {
  return pde_residual(spec, params, absolute_tol(tol));
}

PdeResidual pde_residual(const PdeSpec& spec, const ParameterVector& params, const EvalOptions& options) {
  PdeResidual r;
  for (const PdeTerm& t : spec.terms) {
    const EvalResult d = theta_derivative(t.alpha, params, options);
    const cplx c = t.coeff.value();
    r.residual += c * d.value;
    r.scale += std::abs(c) * std::abs(d.value);
    r.bound += std::abs(c) * d.tail_bound;
  }
  return r;
}

double default_fd_step(unsigned total_order) {
  if (total_order <= 1) return 1e-5;
  return total_order == 2 ? 2e-3 : 1e-2;
}

int default_richardson(unsigned total_order) {
  if (total_order <= 1) return 0;
  return total_order == 2 ? 1 : 2;
}

namespace {

std::int64_t binomial(unsigned m, unsigned j) {
  std::int64_t r = 1;
  for (unsigned i = 1; i <= j; ++i) r = r * (m - j + i) / i;
  return r;
}

cplx stencil(const MultiIndex& alpha, const ParameterVector& params, double h, cplx direction,
             const EvalOptions& options) {
  std::vector<std::size_t> axes;
  for (std::size_t k = 0; k < alpha.size(); ++k)
    if (alpha[k] > 0) axes.push_back(k);

  cplx sum{0.0, 0.0};
  std::vector<cplx> point = params.vector();
  // Depth-first over the stencil of each differentiated axis.
  auto visit = [&](auto&& self, std::size_t depth, double weight) -> void {
    if (depth == axes.size()) {
      sum += weight * theta_eval(ParameterVector(point), options).value;
      return;
    }
    const std::size_t k = axes[depth];
    const unsigned m = alpha[k];
    const cplx base = point[k];
    for (unsigned j = 0; j <= m; ++j) {
      const double offset = 0.5 * m - j;
      point[k] = base + offset * h * direction;
      const double w = static_cast<double>(binomial(m, j)) * (j % 2 == 0 ? 1.0 : -1.0);
      self(self, depth + 1, weight * w);
    }
    point[k] = base;
  };
  visit(visit, 0, 1.0);
  return sum / std::pow(h * direction, static_cast<int>(alpha.total_order()));
}

}  // namespace

cplx finite_difference(const MultiIndex& alpha, const ParameterVector& params, double step, double tol) {
  DifferenceOptions o;
  o.step = step;
  o.eval = relative_tol(tol);
  return finite_difference(alpha, params, o);
}

cplx finite_difference(const MultiIndex& alpha, const ParameterVector& params, const DifferenceOptions& options) {
  if (alpha.size() != params.size())
    throw ThetaError(Errc::dimension_mismatch, "multi-index has " + std::to_string(alpha.size()) + " entries for " +
                                                   std::to_string(params.size()) + " parameters");
  const unsigned order = alpha.total_order();
  if (order > 4) throw ThetaError(Errc::invalid_argument, "finite differences support total order at most 4");
  if (order == 0) return theta_eval(params, options.eval).value;
  const double h = options.step > 0.0 ? options.step : default_fd_step(order);
  const int levels = options.richardson >= 0 ? options.richardson : default_richardson(order);

  // Richardson table on the even error expansion of central differences.
  std::vector<cplx> row;
  for (int i = 0; i <= levels; ++i) {
    cplx next = stencil(alpha, params, h / std::ldexp(1.0, i), options.direction, options.eval);
    double factor = 4.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      const cplx refined = (factor * next - row[j]) / (factor - 1.0);
      row[j] = next;
      next = refined;
      factor *= 4.0;
    }
    row.push_back(next);
  }
  return row.back();
}

HeatFlow heat_flow(const ParameterVector& params, double step, const EvalOptions& options) {
  std::vector<cplx> up = params.vector();
  std::vector<cplx> down = params.vector();
  up.at(1) += cplx{0.0, step};
  down.at(1) -= cplx{0.0, step};
  HeatFlow f;
  f.time_derivative =
      (theta_eval(ParameterVector(up), options).value - theta_eval(ParameterVector(down), options).value) / (2.0 * step);
  std::vector<unsigned> a(params.size(), 0);
  a[0] = 2;
  f.predicted = theta_derivative(MultiIndex(a), params, options).value / (4.0 * std::numbers::pi);
  return f;
}

}  // namespace gtheta
