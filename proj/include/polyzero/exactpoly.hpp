#pragma once

// Exact dense polynomial arithmetic over arbitrary-precision integers, plus
// the guaranteed-exact expansion of quotient products
//   prod_j (1 - z^{b_j}) / (1 - z^{a_j}).

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "polyzero/bigint.hpp"
#include "polyzero/hp.hpp"

namespace polyzero {

// Dense coefficient vector; coeffs[k] is the coefficient of z^k.
// Canonical form: no trailing zero except the zero polynomial {0}.
struct ExactPolynomial {
  std::vector<Int> coeffs{Int(0)};

  ExactPolynomial() = default;
  explicit ExactPolynomial(std::vector<Int> c) : coeffs(std::move(c)) { normalize(); }

  void normalize() {
    while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
    if (coeffs.empty()) coeffs.assign(1, Int(0));
  }

  std::size_t degree() const { return coeffs.size() - 1; }
  bool is_zero() const { return coeffs.size() == 1 && coeffs[0] == 0; }

  bool operator==(const ExactPolynomial& o) const { return coeffs == o.coeffs; }

  bool nonnegative() const {
    for (const Int& c : coeffs)
      if (c < 0) return false;
    return true;
  }

  bool palindromic() const {
    std::size_t n = degree();
    for (std::size_t k = 0; 2 * k <= n; ++k)
      if (coeffs[k] != coeffs[n - k]) return false;
    return true;
  }
};

inline ExactPolynomial multiply(const ExactPolynomial& p, const ExactPolynomial& q) {
  if (p.is_zero() || q.is_zero()) return ExactPolynomial{};
  std::vector<Int> r(p.degree() + q.degree() + 1, Int(0));
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    if (p.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < q.coeffs.size(); ++j)
      r[i + j] += p.coeffs[i] * q.coeffs[j];
  }
  return ExactPolynomial(std::move(r));
}

// p * (1 - z^k), one O(deg) pass.
inline ExactPolynomial mul_one_minus_pow(const ExactPolynomial& p, std::size_t k) {
  if (p.is_zero()) return p;
  std::vector<Int> r(p.coeffs.size() + k, Int(0));
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) r[i] = p.coeffs[i];
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) r[i + k] -= p.coeffs[i];
  return ExactPolynomial(std::move(r));
}

// Exact division by (1 - z^a) via the stride-a prefix recurrence
// q[i] = p[i] + q[i-a]; throws not_a_polynomial when the division is inexact.
inline ExactPolynomial div_one_minus_pow(const ExactPolynomial& p, std::size_t a) {
  if (p.is_zero()) return p;
  std::size_t n = p.degree();
  if (n < a) throw error(error::code::not_a_polynomial, "degree too small for divisor stride");
  std::vector<Int> q(n - a + 1, Int(0));
  for (std::size_t i = 0; i + a <= n; ++i)
    q[i] = (i >= a) ? p.coeffs[i] + q[i - a] : p.coeffs[i];
  for (std::size_t i = n - a + 1; i <= n; ++i) {
    Int expect = (i >= a && i - a < q.size()) ? Int(-q[i - a]) : Int(0);
    if (p.coeffs[i] != expect)
      throw error(error::code::not_a_polynomial, "inexact division by 1-z^a");
  }
  return ExactPolynomial(std::move(q));
}

// Exponent pairs (a_j, b_j) of a quotient product; requires b_j >= a_j >= 1
// and, unless every pair is trivial (a_j = b_j for all j), max a_j < max b_j.
struct FactorSpec {
  std::vector<std::pair<long, long>> pairs;

  std::size_t size() const { return pairs.size(); }

  void validate() const {
    long max_a = 0, max_b = 0;
    for (auto [a, b] : pairs) {
      if (a < 1 || b < a)
        throw error(error::code::invalid_spec, "factor pair must satisfy b >= a >= 1");
      max_a = std::max(max_a, a);
      max_b = std::max(max_b, b);
    }
    if (degree() > 0 && max_a >= max_b)
      throw error(error::code::invalid_spec, "max exponent must come from a numerator factor");
  }

  // Degree of the quotient polynomial: sum of (b_j - a_j).
  long degree() const {
    long n = 0;
    for (auto [a, b] : pairs) n += b - a;
    return n;
  }

  // Largest numerator exponent; 0 for an empty/trivial spec.
  long max_b() const {
    long m = 0;
    for (auto [a, b] : pairs) m = std::max(m, b);
    return m;
  }

  // prod b_j / a_j, the coefficient sum of the quotient polynomial.
  Rat value_at_one() const {
    Int num(1), den(1);
    for (auto [a, b] : pairs) {
      num *= b;
      den *= a;
    }
    return rat(num, den);
  }
};

// Expands prod (1-z^{b_j})/(1-z^{a_j}) exactly: numerator product first, then
// stride-a prefix recurrences (the truncated geometric-series multiplies),
// then an independent multiply-back verification against the numerator.
inline ExactPolynomial build_product_form(const FactorSpec& spec) {
  spec.validate();
  ExactPolynomial numerator{std::vector<Int>{Int(1)}};
  for (auto [a, b] : spec.pairs) {
    (void)a;
    numerator = mul_one_minus_pow(numerator, static_cast<std::size_t>(b));
  }
  ExactPolynomial result = numerator;
  for (auto [a, b] : spec.pairs) {
    (void)b;
    result = div_one_minus_pow(result, static_cast<std::size_t>(a));
  }
  ExactPolynomial back = result;
  for (auto [a, b] : spec.pairs) {
    (void)b;
    back = mul_one_minus_pow(back, static_cast<std::size_t>(a));
  }
  if (!(back == numerator))
    throw error(error::code::not_a_polynomial, "multiply-back verification failed");
  if (static_cast<long>(result.degree()) != spec.degree() && !result.is_zero())
    throw error(error::code::not_a_polynomial, "degree mismatch after expansion");
  return result;
}

inline Rat eval_rational(const ExactPolynomial& p, const Rat& x) {
  Rat acc(0);
  for (std::size_t i = p.coeffs.size(); i-- > 0;) acc = acc * x + Rat(p.coeffs[i]);
  return acc;
}

inline Int eval_int(const ExactPolynomial& p, const Int& x) {
  Int acc(0);
  for (std::size_t i = p.coeffs.size(); i-- > 0;) acc = acc * x + p.coeffs[i];
  return acc;
}

struct ComplexEval {
  hp::Complex value;
  double residual_bound;  // bound on the accumulated rounding error magnitude
};

// Horner evaluation with coefficients rounded to `prec` bits. The residual
// bound is 2n * 2^{1-prec} * sum |c_i| |z|^i, a standard running-error bound.
inline ComplexEval eval_complex(const ExactPolynomial& p, const hp::Complex& z,
                                mpfr_prec_t prec = 128) {
  if (prec < 53) prec = 53;
  hp::Complex acc(prec);
  hp::Real mag = hp::abs(z);
  hp::Real magsum(prec);  // sum |c_i| |z|^i, accumulated as Horner too
  for (std::size_t i = p.coeffs.size(); i-- > 0;) {
    acc = acc * z + hp::Complex(hp::Real::of_int(p.coeffs[i], prec), hp::Real(prec));
    hp::Real ci = hp::Real::of_int(abs(p.coeffs[i]), prec);
    magsum = magsum * mag + ci;
  }
  double n = static_cast<double>(p.degree() + 1);
  double bound = 2.0 * n * std::max(magsum.to_double(), 1.0) *
                 std::pow(2.0, 1.0 - static_cast<double>(prec));
  return {std::move(acc), bound};
}

// Exact m-th derivative (falling-factorial scaling of shifted coefficients).
inline ExactPolynomial derivative(const ExactPolynomial& p, unsigned m = 1) {
  if (p.degree() < m) return ExactPolynomial{};
  std::vector<Int> d(p.degree() - m + 1);
  for (std::size_t k = 0; k < d.size(); ++k) {
    Int c = p.coeffs[k + m];
    for (unsigned j = 1; j <= m; ++j) c *= static_cast<long>(k + j);
    d[k] = c;
  }
  return ExactPolynomial(std::move(d));
}

// p(z) * z^s.
inline ExactPolynomial shift_up(const ExactPolynomial& p, std::size_t s) {
  if (p.is_zero()) return p;
  std::vector<Int> r(p.coeffs.size() + s, Int(0));
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) r[i + s] = p.coeffs[i];
  return ExactPolynomial(std::move(r));
}

}  // namespace polyzero
