#pragma once

// Thin RAII layer over MPFR: round-to-nearest scalars (Real, Complex) for
// numerics, and directed-rounding enclosures (Interval) for every verdict
// that must not be produced by rounding luck.

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "polyzero/bigint.hpp"

namespace polyzero::hp {

class Real {
 public:
  explicit Real(mpfr_prec_t prec = 128) { mpfr_init2(v_, prec < MPFR_PREC_MIN ? MPFR_PREC_MIN : prec); mpfr_set_zero(v_, 1); }
  Real(const Real& o) { mpfr_init2(v_, o.prec()); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, o.prec()); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) { mpfr_set_prec(v_, o.prec()); mpfr_set(v_, o.v_, MPFR_RNDN); }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real of(double d, mpfr_prec_t prec = 53) {
    Real r(prec);
    mpfr_set_d(r.v_, d, MPFR_RNDN);
    return r;
  }
  static Real of_int(const Int& z, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(prec);
    mpfr_set_z(r.v_, z.get_mpz_t(), rnd);
    return r;
  }
  static Real of_rat(const Rat& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(prec);
    mpfr_set_q(r.v_, q.get_mpq_t(), rnd);
    return r;
  }
  static Real pi(mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(prec);
    mpfr_const_pi(r.v_, rnd);
    return r;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(v_); }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  std::string str(size_t digits = 30) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

  friend int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Real& a, const Real& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Real& a, const Real& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Real& a, const Real& b) { return cmp(a, b) >= 0; }

 private:
  mpfr_t v_;
};

inline mpfr_prec_t joint_prec(const Real& a, const Real& b) {
  return std::max(a.prec(), b.prec());
}

#define POLYZERO_HP_BINOP(name, mpfr_fn)                                     \
  inline Real name(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN, \
                   mpfr_prec_t prec = 0) {                                   \
    Real r(prec ? prec : joint_prec(a, b));                                  \
    mpfr_fn(r.raw(), a.raw(), b.raw(), rnd);                                 \
    return r;                                                                \
  }

POLYZERO_HP_BINOP(add, mpfr_add)
POLYZERO_HP_BINOP(sub, mpfr_sub)
POLYZERO_HP_BINOP(mul, mpfr_mul)
POLYZERO_HP_BINOP(div, mpfr_div)
#undef POLYZERO_HP_BINOP

#define POLYZERO_HP_UNOP(name, mpfr_fn)                              \
  inline Real name(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN,        \
                   mpfr_prec_t prec = 0) {                           \
    Real r(prec ? prec : a.prec());                                  \
    mpfr_fn(r.raw(), a.raw(), rnd);                                  \
    return r;                                                        \
  }

POLYZERO_HP_UNOP(sqrt, mpfr_sqrt)
POLYZERO_HP_UNOP(exp, mpfr_exp)
POLYZERO_HP_UNOP(log, mpfr_log)
POLYZERO_HP_UNOP(sin, mpfr_sin)
POLYZERO_HP_UNOP(cos, mpfr_cos)
POLYZERO_HP_UNOP(cot, mpfr_cot)
POLYZERO_HP_UNOP(erfc, mpfr_erfc)
POLYZERO_HP_UNOP(neg, mpfr_neg)
POLYZERO_HP_UNOP(abs, mpfr_abs)
#undef POLYZERO_HP_UNOP

inline Real operator+(const Real& a, const Real& b) { return add(a, b); }
inline Real operator-(const Real& a, const Real& b) { return sub(a, b); }
inline Real operator*(const Real& a, const Real& b) { return mul(a, b); }
inline Real operator/(const Real& a, const Real& b) { return div(a, b); }
inline Real operator-(const Real& a) { return neg(a); }

inline Real mul_2si(const Real& a, long e, mpfr_rnd_t rnd = MPFR_RNDN) {
  Real r(a.prec());
  mpfr_mul_2si(r.raw(), a.raw(), e, rnd);
  return r;
}

inline Real pow_ui(const Real& a, unsigned long e, mpfr_rnd_t rnd = MPFR_RNDN) {
  Real r(a.prec());
  mpfr_pow_ui(r.raw(), a.raw(), e, rnd);
  return r;
}

// --- directed-rounding enclosures ---------------------------------------

struct Interval {
  Real lo, hi;

  Interval() = default;
  Interval(Real l, Real h) : lo(std::move(l)), hi(std::move(h)) {}

  static Interval of_rat(const Rat& q, mpfr_prec_t prec) {
    return {Real::of_rat(q, prec, MPFR_RNDD), Real::of_rat(q, prec, MPFR_RNDU)};
  }
  static Interval of_int(const Int& z, mpfr_prec_t prec) {
    return {Real::of_int(z, prec, MPFR_RNDD), Real::of_int(z, prec, MPFR_RNDU)};
  }
  static Interval of_ui(unsigned long u, mpfr_prec_t prec) {
    return of_int(Int(static_cast<long>(u)), prec);
  }
  static Interval pi(mpfr_prec_t prec) {
    return {Real::pi(prec, MPFR_RNDD), Real::pi(prec, MPFR_RNDU)};
  }

  double mid() const { return 0.5 * (lo.to_double() + hi.to_double()); }
  double wid() const { return sub(hi, lo, MPFR_RNDU).to_double(); }
  bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
};

inline Interval operator+(const Interval& a, const Interval& b) {
  return {add(a.lo, b.lo, MPFR_RNDD), add(a.hi, b.hi, MPFR_RNDU)};
}

inline Interval operator-(const Interval& a, const Interval& b) {
  return {sub(a.lo, b.hi, MPFR_RNDD), sub(a.hi, b.lo, MPFR_RNDU)};
}

inline Interval operator*(const Interval& a, const Interval& b) {
  const Real* as[2] = {&a.lo, &a.hi};
  const Real* bs[2] = {&b.lo, &b.hi};
  Real lo = mul(a.lo, b.lo, MPFR_RNDD), hi = mul(a.lo, b.lo, MPFR_RNDU);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Real d = mul(*as[i], *bs[j], MPFR_RNDD);
      Real u = mul(*as[i], *bs[j], MPFR_RNDU);
      if (d < lo) lo = d;
      if (u > hi) hi = u;
    }
  return {std::move(lo), std::move(hi)};
}

// Requires 0 not in b.
inline Interval operator/(const Interval& a, const Interval& b) {
  const Real* as[2] = {&a.lo, &a.hi};
  const Real* bs[2] = {&b.lo, &b.hi};
  Real lo = div(a.lo, b.lo, MPFR_RNDD), hi = div(a.lo, b.lo, MPFR_RNDU);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Real d = div(*as[i], *bs[j], MPFR_RNDD);
      Real u = div(*as[i], *bs[j], MPFR_RNDU);
      if (d < lo) lo = d;
      if (u > hi) hi = u;
    }
  return {std::move(lo), std::move(hi)};
}

// Requires lo >= 0.
inline Interval sqrt(const Interval& a) {
  return {sqrt(a.lo, MPFR_RNDD), sqrt(a.hi, MPFR_RNDU)};
}

inline Interval pow_ui(const Interval& a, unsigned long e) {
  Interval r = Interval::of_ui(1, a.lo.prec());
  Interval base = a;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

// a.hi < b.lo: every value of a is below every value of b.
inline bool certainly_less(const Interval& a, const Interval& b) {
  return a.hi < b.lo;
}

inline bool certainly_less(const Interval& a, const Rat& q) {
  return a.hi < Real::of_rat(q, a.hi.prec(), MPFR_RNDD);
}

inline bool certainly_less(const Rat& q, const Interval& b) {
  return Real::of_rat(q, b.lo.prec(), MPFR_RNDU) < b.lo;
}

// --- round-to-nearest complex --------------------------------------------

struct Complex {
  Real re, im;

  Complex() = default;
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(mpfr_prec_t prec) : re(prec), im(prec) {}

  static Complex of(double r, double i, mpfr_prec_t prec) {
    return {Real::of(r, prec), Real::of(i, prec)};
  }
  std::pair<double, double> to_doubles() const {
    return {re.to_double(), im.to_double()};
  }
};

inline Complex operator+(const Complex& a, const Complex& b) {
  return {a.re + b.re, a.im + b.im};
}
inline Complex operator-(const Complex& a, const Complex& b) {
  return {a.re - b.re, a.im - b.im};
}
inline Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Complex operator/(const Complex& a, const Complex& b) {
  Real d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

inline Real abs(const Complex& a) {
  Real r(joint_prec(a.re, a.im));
  mpfr_hypot(r.raw(), a.re.raw(), a.im.raw(), MPFR_RNDN);
  return r;
}

}  // namespace polyzero::hp
