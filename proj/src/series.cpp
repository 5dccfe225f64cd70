#include "gtheta/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "gtheta/compensated.hpp"
#include "gtheta/phase.hpp"
#include "kernel.hpp"

namespace gtheta {

using detail::dd;
using detail::ddc;
using detail::SeriesSpec;
using detail::two_sum;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double unit_roundoff = std::numeric_limits<double>::epsilon() / 2.0;
// exp() overflows just above 709.78.
constexpr double max_log_magnitude = 700.0;

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

cplx int_power(cplx x, unsigned p) {
  cplx r{1.0, 0.0};
  for (unsigned i = 0; i < p; ++i) r *= x;
  return r;
}

// Nearest-integer reduction of a double-double; the result lies in about
// [-1/2, 1/2] and carries the full double-double accuracy.
double fractional_part(const dd& x) {
  const double hi = x.hi - std::nearbyint(x.hi);
  const double lo = x.lo - std::nearbyint(x.lo);
  const double f = hi + lo;
  return f - std::nearbyint(f);
}

// One summand exp(2 pi i phi(m + offset)) times the derivative prefactor,
// as a function of the integer index m. The phase polynomial is evaluated
// in double-double arithmetic and reduced mod 1 before exponentiation, so
// the rounding error of a term does not grow with the size of its phase.
class TermModel {
 public:
  TermModel(const SeriesSpec& spec, const MultiIndex& alpha)
      : offset_re_(spec.offset_re),
        offset_im_(spec.offset_im),
        degree_(alpha.weighted_degree()),
        order_(alpha.total_order()) {
    const std::size_t n = spec.params.size();
    if (!spec.shifts.empty() && spec.shifts.size() != n)
      throw ThetaError(Errc::dimension_mismatch, "shift vector does not match the parameter count");
    q_.resize(n);
    coef_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      dd re{spec.params[k].real()};
      if (!spec.shifts.empty()) re = re + spec.shifts[k];
      q_[k] = cplx{re.value(), spec.params[k].imag()};
      const double fk = factorial_d(k + 1);
      coef_[k] = ddc{re / fk, dd{spec.params[k].imag()} / fk};
    }
    // (2 pi i)^{|alpha|} / prod_k (k!)^{alpha_k}
    prefactor_ = int_power(cplx{0.0, two_pi}, order_);
    for (std::size_t k = 1; k <= alpha.size(); ++k)
      for (unsigned r = 0; r < alpha.order(k); ++r) prefactor_ /= factorial_d(k);
    log_abs_prefactor_ = std::log(std::abs(prefactor_));
  }

  std::span<const cplx> params() const noexcept { return q_; }

  cplx x(std::int64_t m) const { return {(dd{static_cast<double>(m)} + offset_re_).value(), offset_im_}; }

  double log_magnitude(std::int64_t m) const {
    const cplx xm = x(m);
    double lm = -two_pi * phase_value(xm, q_).imag();
    if (degree_ > 0) {
      const double ax = std::abs(xm);
      if (ax == 0.0) return -std::numeric_limits<double>::infinity();
      lm += log_abs_prefactor_ + degree_ * std::log(ax);
    }
    return lm;
  }

  ddc phase(std::int64_t m) const {
    const ddc xm{two_sum(static_cast<double>(m), offset_re_.hi) + dd{offset_re_.lo}, dd{offset_im_}};
    ddc acc = coef_.back();
    for (std::size_t k = coef_.size() - 1; k-- > 0;) acc = coef_[k] + xm * acc;
    return xm * acc;
  }

  // Term value and a bound on |computed - exact| / |exact|.
  std::pair<cplx, double> term(std::int64_t m) const {
    const ddc ph = phase(m);
    const cplx xm = x(m);
    if (ph.re.hi == 0.0 && ph.im.hi == 0.0 && degree_ == 0) return {cplx{1.0, 0.0}, 0.0};  // exp(0) is exact
    const double f = fractional_part(ph.re);
    const double g = ph.im.value();
    const double angle = two_pi * f;
    cplx t = std::exp(-two_pi * g) * cplx{std::cos(angle), std::sin(angle)};
    double rel = unit_roundoff * (3.0 * two_pi * std::abs(g) + two_pi + 8.0);
    if (degree_ > 0 || order_ > 0) {
      t *= prefactor_ * int_power(xm, degree_);
      rel += unit_roundoff * (3.0 * (degree_ + order_) + 2.0);
    }
    // Double-double evaluation of the phase polynomial.
    const double horner = 16.0 * static_cast<double>(q_.size()) * unit_roundoff * unit_roundoff *
                          phase_abs_bound(std::abs(xm) + 1.0, q_);
    rel += 2.0 * two_pi * horner;
    return {t, rel};
  }

  unsigned degree() const noexcept { return degree_; }
  cplx offset() const noexcept { return {offset_re_.value(), offset_im_}; }

 private:
  std::vector<cplx> q_;
  std::vector<ddc> coef_;
  dd offset_re_;
  double offset_im_;
  unsigned degree_;
  unsigned order_;
  cplx prefactor_;
  double log_abs_prefactor_ = 0.0;
};

// Radius beyond which the log-magnitude of the summands is concave in m.
// The polynomial part is -2 pi Im phi(m + a), whose Taylor coefficients in m
// are those of the shifted parameters; its second derivative has a negative
// leading coefficient (Im tau_N > 0), so the Cauchy root bound of that
// second derivative suffices. The n^D prefactor is log-concave once
// |m + Re a| exceeds |Im a|.
double concavity_radius(const TermModel& model) {
  const std::span<const cplx> coeffs = model.params();
  const std::size_t n = coeffs.size();
  double radius = 0.0;
  if (n > 2) {
    const std::vector<cplx> s = shift_coefficients(model.offset(), coeffs);
    std::vector<double> d(n - 1);
    for (std::size_t j = 0; j + 2 <= n; ++j) {
      const std::size_t k = j + 2;
      d[j] = -two_pi * s[k - 1].imag() / factorial_d(k) * static_cast<double>(k * (k - 1));
    }
    const double lead = std::abs(d[n - 2]);
    double worst = 0.0;
    for (std::size_t j = 0; j + 2 < n; ++j) worst = std::max(worst, std::abs(d[j]) / lead);
    radius = 1.0 + worst;
  }
  if (model.degree() > 0) radius = std::max(radius, std::abs(model.offset().real()) + std::abs(model.offset().imag()));
  return radius;
}

struct SidePlan {
  std::int64_t last = 0;  // signed index of the last included term
  double tail = 0.0;
};

class Planner {
 public:
  Planner(const TermModel& model, const EvalOptions& options, Errc divergence_code)
      : model_(model), options_(options), divergence_(divergence_code) {
    if (!(options.tol > 0.0) || !std::isfinite(options.tol))
      throw ThetaError(Errc::invalid_argument, "tolerance must be a positive finite number");
    if (options.max_terms_per_side < 1) throw ThetaError(Errc::invalid_argument, "max_terms_per_side must be positive");
    radius_ = concavity_radius(model);
    if (!(radius_ < static_cast<double>(options.max_terms_per_side)))
      throw ThetaError(divergence_, "concavity radius " + sci(radius_) + " exceeds the range cap of " +
                                        std::to_string(options.max_terms_per_side) + " terms per side");
  }

  SidePlan scan(int dir) const {
    const double target_base = std::log(options_.tol / 4.0);
    const bool relative = options_.mode == ToleranceMode::relative;
    const std::int64_t needed_streak = static_cast<std::int64_t>(model_.params().size());
    const double l0 = model_.log_magnitude(0);
    check_magnitude(l0);

    double peak = l0;
    double prev = l0;
    std::int64_t streak = 0;
    double lj = model_.log_magnitude(dir);
    for (std::int64_t j = 1;; ++j) {
      check_magnitude(lj);
      const double lnext = model_.log_magnitude(dir * (j + 1));
      streak = lj < prev ? streak + 1 : 0;
      peak = std::max(peak, lj);
      const double target = target_base + (relative ? peak : 0.0);
      if (static_cast<double>(j) > radius_ && streak >= needed_streak && lj <= target && lnext < lj) {
        // Non-increasing ratios beyond j: tail <= t_{j+1} / (1 - t_{j+1}/t_j).
        const double log_ratio = lnext - lj;
        const double log_tail = lnext - std::log1p(-std::exp(log_ratio));
        // Slack for the double-precision log-magnitudes.
        const double slack = 1e-9 * (1.0 + std::abs(lnext));
        if (log_tail + slack <= target) return {dir * j, std::exp(log_tail + slack)};
      }
      if (j >= options_.max_terms_per_side)
        throw ThetaError(divergence_, "truncation certificate not reached within " +
                                          std::to_string(options_.max_terms_per_side) + " terms per side");
      prev = lj;
      lj = lnext;
    }
  }

  SeriesRange plan() const {
    const SidePlan right = scan(+1);
    const SidePlan left = scan(-1);
    return {left.last, right.last, left.tail + right.tail};
  }

 private:
  void check_magnitude(double log_mag) const {
    if (std::isnan(log_mag) || log_mag > max_log_magnitude)
      throw ThetaError(divergence_, "term magnitude exceeds the double range (log-magnitude " + sci(log_mag) + ")");
  }

  const TermModel& model_;
  const EvalOptions& options_;
  Errc divergence_;
  double radius_ = 0.0;
};

Errc divergence_code(const SeriesSpec& spec) {
  return spec.offset_im != 0.0 ? Errc::complex_offset_divergence : Errc::range_overflow;
}

bool is_integer_offset(cplx a) {
  return a.imag() == 0.0 && std::abs(a.real()) < 0x1p52 && std::floor(a.real()) == a.real();
}

SeriesSpec plain_spec(const ParameterVector& params, cplx offset = {}) {
  SeriesSpec spec;
  spec.params = params.values();
  spec.offset_re = dd{offset.real()};
  spec.offset_im = offset.imag();
  return spec;
}

}  // namespace

namespace detail {

SeriesRange plan_series(const SeriesSpec& spec, const MultiIndex& alpha, const EvalOptions& options) {
  const TermModel model(spec, alpha);
  return Planner(model, options, divergence_code(spec)).plan();
}

EvalResult sum_series(const SeriesSpec& spec, const MultiIndex& alpha, const EvalOptions& options) {
  if (alpha.size() != spec.params.size())
    throw ThetaError(Errc::dimension_mismatch, "multi-index has " + std::to_string(alpha.size()) + " entries for " +
                                                   std::to_string(spec.params.size()) + " parameters");
  const TermModel model(spec, alpha);
  const SeriesRange range = Planner(model, options, divergence_code(spec)).plan();

  CompensatedComplexSum<double> acc;
  CompensatedSum<double> abs_acc;
  double rounding = 0.0;
  std::int64_t count = 0;
  auto include = [&](std::int64_t m) {
    const auto [t, rel] = model.term(m);
    const double at = std::abs(t);
    acc.add(t);
    abs_acc.add(at);
    rounding += at * rel;
    ++count;
  };
  include(0);
  const std::int64_t reach = std::max(range.n_max, -range.n_min);
  for (std::int64_t j = 1; j <= reach; ++j) {
    if (j <= range.n_max) include(j);
    if (-j >= range.n_min) include(-j);
  }

  EvalResult r;
  r.value = acc.value();
  r.abs_sum = abs_acc.value();
  // Per-term errors, then the compensated accumulation itself, with 25% headroom.
  const double u = unit_roundoff;
  const double accumulation = 3.0 * u * std::abs(r.value) + 4.0 * static_cast<double>(count) * u * u * r.abs_sum;
  r.rounding_error = 1.25 * (rounding + accumulation);
  r.truncation_error = range.certified_tail;
  r.tail_bound = r.truncation_error + r.rounding_error;
  r.n_min = range.n_min;
  r.n_max = range.n_max;
  r.terms_summed = count;

  const double allowed = options.mode == ToleranceMode::relative ? options.tol * r.abs_sum : options.tol;
  if (!(r.tail_bound <= allowed))
    throw ThetaError(Errc::precision_loss, "certified error " + sci(r.tail_bound) +
                                               " exceeds the allowed " + sci(allowed));
  return r;
}

}  // namespace detail

SeriesRange truncation_bound(const ParameterVector& params, double tol) {
  return truncation_bound(params, absolute_tol(tol));
}

SeriesRange truncation_bound(const ParameterVector& params, const EvalOptions& options) {
  return detail::plan_series(plain_spec(params), MultiIndex::zeros(params.size()), options);
}

EvalResult theta_eval(const ParameterVector& params, double tol) { return theta_eval(params, absolute_tol(tol)); }

EvalResult theta_eval(const ParameterVector& params, const EvalOptions& options) {
  return detail::sum_series(plain_spec(params), MultiIndex::zeros(params.size()), options);
}

EvalResult theta_eval_offset(const ParameterVector& params, cplx offset, double tol) {
  return theta_eval_offset(params, offset, absolute_tol(tol));
}

EvalResult theta_eval_offset(const ParameterVector& params, cplx offset, const EvalOptions& options) {
  if (is_integer_offset(offset)) return theta_eval(params, options);
  return detail::sum_series(plain_spec(params, offset), MultiIndex::zeros(params.size()), options);
}

EvalResult theta_derivative(const MultiIndex& alpha, const ParameterVector& params, double tol) {
  return theta_derivative(alpha, params, absolute_tol(tol));
}

EvalResult theta_derivative(const MultiIndex& alpha, const ParameterVector& params, const EvalOptions& options) {
  return detail::sum_series(plain_spec(params), alpha, options);
}

}  // namespace gtheta
