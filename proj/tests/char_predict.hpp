#pragma once

// Exact prediction of how a characteristic series transforms when the scaled
// parameters move to A_c Q + delta (c an integer, delta integral): the series
// becomes exp(-2 pi i phi(c; Q)) * exp(2 pi i constant) * theta[image](Q),
// provided the reduced shifts land back on the level-l lattice.

#include <boost/rational.hpp>
#include <optional>
#include <vector>

#include "gtheta/characteristics.hpp"

namespace predict {

using gtheta::rational;

struct Image {
  gtheta::Characteristic ch;
  rational constant;  // exp(2 pi i constant) is the extra phase
};

inline rational rat_pow(rational x, std::size_t e) {
  rational r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= x;
  return r;
}

inline std::int64_t binom(std::size_t k, std::size_t i) {
  std::int64_t r = 1;
  for (std::size_t j = 1; j <= i; ++j) r = r * static_cast<std::int64_t>(k - i + j) / static_cast<std::int64_t>(j);
  return r;
}

inline std::int64_t ipow(std::int64_t b, std::size_t e) {
  std::int64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

inline std::int64_t floor_div(rational v) {
  std::int64_t q = v.numerator() / v.denominator();
  if (v.numerator() % v.denominator() != 0 && v.numerator() < 0) --q;
  return q;
}

inline std::optional<Image> action(const gtheta::Characteristic& ch, std::int64_t c, const std::vector<std::int64_t>& delta) {
  const std::size_t n = ch.size();
  const std::int64_t l = ch.level();
  const gtheta::CharacteristicShift s = ch.factorial_scaled();
  std::vector<rational> w(n + 1);
  for (std::size_t k = 1; k <= n; ++k) w[k] = s.shifts[k - 1] + delta[k - 1];
  // Coefficients of x^i in sum_k w_k (x - c)^k / k!.
  std::vector<rational> v(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t k = std::max<std::size_t>(i, 1); k <= n; ++k)
      v[i] += w[k] * rat_pow(rational(-c), k - i) / static_cast<std::int64_t>(gtheta::factorial(k - i)) /
              static_cast<std::int64_t>(gtheta::factorial(i));
  // Carry integer parts down: on x in Z + a, m x^k = m n^k - m sum_{i<k} C(k,i) (-a)^{k-i} x^i.
  const rational a = ch.a();
  std::vector<std::int64_t> b(n - 1);
  for (std::size_t k = n; k >= 1; --k) {
    const std::int64_t m = floor_div(v[k]);
    const rational frac = v[k] - m;
    if (k == n && frac.numerator() != 0) return std::nullopt;
    if (k < n) {
      const std::int64_t den = ipow(l, n - k);
      if (den % frac.denominator() != 0) return std::nullopt;
      b[k - 1] = frac.numerator() * (den / frac.denominator());
    }
    for (std::size_t i = 0; i < k; ++i) v[i] -= rational(m * binom(k, i)) * rat_pow(-a, k - i);
  }
  return Image{gtheta::Characteristic(l, n, ch.a_numerator(), b), v[0]};
}

inline std::size_t index_of(const std::vector<gtheta::Characteristic>& family, const gtheta::Characteristic& ch) {
  for (std::size_t i = 0; i < family.size(); ++i)
    if (family[i] == ch) return i;
  return family.size();
}

}  // namespace predict
