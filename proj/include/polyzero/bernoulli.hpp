#pragma once

// Bernoulli numbers (B_1 = +1/2 convention), closed-form cumulants of
// quotient-product laws, the standardized-cumulant bound certificate with
// its interval-arithmetic verdict, and the supporting inequality toolkit.

#include <cstddef>
#include <vector>

#include "polyzero/bigint.hpp"
#include "polyzero/distributions.hpp"
#include "polyzero/exactpoly.hpp"
#include "polyzero/hp.hpp"

namespace polyzero {

struct BernoulliTable {
  std::vector<Rat> values;  // values[m] = B_m, with B_1 = +1/2

  const Rat& operator[](std::size_t m) const { return values.at(m); }
  std::size_t max_order() const { return values.size() - 1; }
};

// Defining recurrence sum_{k=0}^{m} C(m+1,k) B_k^- = 0 in the B_1^- = -1/2
// convention, then a sign flip at index 1.
inline BernoulliTable bernoulli_numbers(unsigned M) {
  std::vector<Rat> b(M + 1);
  b[0] = 1;
  for (unsigned m = 1; m <= M; ++m) {
    Rat acc(0);
    for (unsigned k = 0; k < m; ++k) acc += Rat(binomial(m + 1, k)) * b[k];
    b[m] = -acc / Rat(binomial(m + 1, m));
  }
  if (M >= 1) b[1] = -b[1];
  return {std::move(b)};
}

// Shared read-only table; orders beyond it are recomputed on demand.
inline Rat bernoulli_number(unsigned m) {
  static const BernoulliTable table = bernoulli_numbers(130);
  if (m <= table.max_order()) return table[m];
  return bernoulli_numbers(m)[m];
}

// kappa_m = (B_m / m) sum_j (b_j^m - a_j^m); kappa_1 = n/2, odd orders >= 3
// vanish with B_m.
inline Rat closed_form_cumulant(const FactorSpec& spec, unsigned m) {
  if (m == 0) throw error(error::code::invalid_spec, "cumulant order must be >= 1");
  const Rat B = bernoulli_number(m);
  if (B == 0) return Rat(0);
  Int s(0);
  for (auto [a, b] : spec.pairs) s += pow_int(Int(b), m) - pow_int(Int(a), m);
  return B / Rat(static_cast<long>(m)) * Rat(s);
}

inline CumulantSequence closed_form_cumulants(const FactorSpec& spec, unsigned M) {
  std::vector<Rat> raw(M);
  for (unsigned m = 1; m <= M; ++m) raw[m - 1] = closed_form_cumulant(spec, m);
  return {std::move(raw)};
}

// Two normalizations of the bound scale Delta = const * sigma / M.
//
// `order4` is the stated pi^2 sqrt(7/6) scale: it is exactly the m = 2 case
// of the chain |kappa*_{2m}| <= (2m)! c_m (M/sigma)^{2m-2} with
// c_m = 3*2^{1-m}/(m pi^{2m}(1-2^{1-2m})), so the fourth-cumulant bound is
// sharp, but for m >= 3 the inequality (2m)!/Delta^{2m-2} >= (2m)! c_m
// (M/sigma)^{2m-2} requires Delta <= c_m^{-1/(2m-2)} sigma/M, and that
// sequence decreases below pi^2 sqrt(7/6) (it tends to pi sqrt(2)); the
// order4 scale therefore over-claims for higher orders, and the checker
// refutes it (e.g. the N = 2 q-Catalan law standardizes to a Rademacher
// variable with kappa*_10 = 7936 > 10!/Delta^8 = 1425.8).
//
// `all_orders` is pi sqrt(2) sigma / M: c_m (2 pi^2)^{m-1} =
// 3/(m pi^2 (1-2^{1-2m})) <= 12/(7 pi^2) < 1 for every m >= 2, so the same
// chain proves the bound at every order with margin.
enum class DeltaScale { order4, all_orders };

// Rigorous enclosure of the chosen scale over the spec's exact variance;
// M is the largest numerator exponent.
inline hp::Interval delta_N(const FactorSpec& spec, mpfr_prec_t prec = 128,
                            DeltaScale scale = DeltaScale::order4) {
  Rat sigma2 = closed_form_cumulant(spec, 2);
  if (sigma2 <= 0)
    throw error(error::code::degenerate_variance, "sigma^2 must be positive");
  hp::Interval pi = hp::Interval::pi(prec);
  if (scale == DeltaScale::order4) {
    hp::Interval s = hp::sqrt(hp::Interval::of_rat(sigma2 * rat(7, 6), prec));
    return hp::pow_ui(pi, 2) * s / hp::Interval::of_int(Int(spec.max_b()), prec);
  }
  hp::Interval s = hp::sqrt(hp::Interval::of_rat(sigma2 * rat(2, 1), prec));
  return pi * s / hp::Interval::of_int(Int(spec.max_b()), prec);
}

struct BoundCertificate {
  unsigned m = 0;            // bound order is 2m
  Rat lhs;                   // |kappa*_{2m}| = |kappa_{2m}| / (sigma^2)^m, exact
  hp::Interval rhs;          // (2m)! / Delta^{2m-2}
  bool holds = false;
  double margin = 0.0;       // rhs.lo - lhs, in doubles, > 0 when holds
};

// |kappa*_{2m}| <= (2m)!/Delta^{2m-2}; the only irrational in the comparison
// is a power of pi, handled by enclosure, so a `holds` verdict is rigorous.
inline BoundCertificate verify_cumulant_bound(const FactorSpec& spec, unsigned m,
                                              mpfr_prec_t prec = 128,
                                              DeltaScale scale = DeltaScale::order4) {
  if (m < 2) throw error(error::code::invalid_spec, "bound order 2m needs m >= 2");
  Rat sigma2 = closed_form_cumulant(spec, 2);
  if (sigma2 <= 0)
    throw error(error::code::degenerate_variance, "sigma^2 must be positive");
  Rat k2m = closed_form_cumulant(spec, 2 * m);
  Rat lhs = abs(k2m) / pow_rat(sigma2, m);
  // order4:     Delta^{2m-2} = pi^{4(m-1)} (7/6)^{m-1} (sigma^2)^{m-1} / M^{2m-2}
  // all_orders: Delta^{2m-2} = pi^{2(m-1)} 2^{m-1}     (sigma^2)^{m-1} / M^{2m-2}
  Rat factor = (scale == DeltaScale::order4) ? pow_rat(rat(7, 6), m - 1)
                                             : pow_rat(rat(2, 1), m - 1);
  unsigned long pi_exp = (scale == DeltaScale::order4) ? 4 * (m - 1) : 2 * (m - 1);
  Rat ratio = Rat(factorial(2 * m)) * Rat(pow_int(Int(spec.max_b()), 2 * m - 2)) /
              (factor * pow_rat(sigma2, m - 1));
  hp::Interval rhs = hp::Interval::of_rat(ratio, prec) /
                     hp::pow_ui(hp::Interval::pi(prec), pi_exp);
  bool holds = hp::certainly_less(lhs, rhs);
  double margin = rhs.lo.to_double() - to_double(lhs);
  return {m, std::move(lhs), std::move(rhs), holds, margin};
}

// b^{2m} - a^{2m} <= (b^2 - a^2) 2^{m-1} b^{2m-2}, exact integer evaluation.
inline bool lemma_inequality(const Int& a, const Int& b, unsigned m) {
  if (a < 0 || b < a || m < 2)
    throw error(error::code::invalid_spec, "requires b >= a >= 0 and m >= 2");
  Int lhs = pow_int(b, 2 * m) - pow_int(a, 2 * m);
  Int rhs = (b * b - a * a) * pow_int(Int(2), m - 1) * pow_int(b, 2 * m - 2);
  return lhs <= rhs;
}

// |B_{2m}| <= 2 (2m)! / (2pi)^{2m} * 1/(1 - 2^{1-2m}), via pi enclosure:
// equivalent to q * pi^{2m} <= 1 with q exact rational. The product is the
// alternating zeta value at 2m, which approaches 1 within 2^{-2m}, so the
// working precision scales with the order.
inline bool bernoulli_bound(unsigned m, mpfr_prec_t prec = 128) {
  if (m < 1) throw error(error::code::invalid_spec, "m >= 1 required");
  mpfr_prec_t p = std::max<mpfr_prec_t>(prec, 4 * m + 64);
  Rat B = abs(bernoulli_number(2 * m));
  Rat one_minus = Rat(1) - pow_rat(rat(1, 2), 2 * m - 1);
  Rat q = B * one_minus * pow_rat(rat(4, 1), m) / (Rat(2) * Rat(factorial(2 * m)));
  hp::Interval lhs = hp::Interval::of_rat(q, p) * hp::pow_ui(hp::Interval::pi(p), 2 * m);
  return lhs.hi < hp::Real::of(1.0, p);
}

// c_m = 3 * 2^{1-m} / (m pi^{2m} (1 - 2^{1-2m})); rational part exposed so
// monotonicity reduces to a rational-vs-pi^2 comparison.
inline Rat c_m_rational_part(unsigned m) {
  return rat(3, 1) * pow_rat(rat(1, 2), m - 1) /
         (Rat(static_cast<long>(m)) * (Rat(1) - pow_rat(rat(1, 2), 2 * m - 1)));
}

// c_m > c_{m+1}  <=>  pi^2 > r_{m+1}/r_m, certified by enclosure.
inline bool c_m_strictly_decreasing_step(unsigned m, mpfr_prec_t prec = 128) {
  Rat ratio = c_m_rational_part(m + 1) / c_m_rational_part(m);
  return hp::certainly_less(ratio, hp::pow_ui(hp::Interval::pi(prec), 2));
}

inline hp::Interval c_m_value(unsigned m, mpfr_prec_t prec = 128) {
  return hp::Interval::of_rat(c_m_rational_part(m), prec) /
         hp::pow_ui(hp::Interval::pi(prec), 2 * m);
}

}  // namespace polyzero
