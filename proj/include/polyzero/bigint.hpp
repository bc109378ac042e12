#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polyzero {

using Int = mpz_class;
using Rat = mpq_class;

// Error taxonomy shared by all modules. `kind` is the stable, testable part;
// the message carries context for humans.
struct error : std::runtime_error {
  enum class code {
    invalid_spec,
    not_a_polynomial,
    negative_coefficient,
    degenerate_variance,
    unsupported_range,
    too_large,
    not_product_form,
    no_reference,
    invalid_rank,
    negative_multiplicity,
    non_convergence,
    tail_underflow,
    underflow,
    incompatible_statistic,
    parse,
  };
  code kind;
  error(code k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

inline const char* error_code_name(error::code k) {
  switch (k) {
    case error::code::invalid_spec: return "InvalidSpec";
    case error::code::not_a_polynomial: return "NotAPolynomial";
    case error::code::negative_coefficient: return "NegativeCoefficient";
    case error::code::degenerate_variance: return "DegenerateVariance";
    case error::code::unsupported_range: return "UnsupportedRange";
    case error::code::too_large: return "TooLarge";
    case error::code::not_product_form: return "NotProductForm";
    case error::code::no_reference: return "NoReference";
    case error::code::invalid_rank: return "InvalidRank";
    case error::code::negative_multiplicity: return "NegativeMultiplicity";
    case error::code::non_convergence: return "NonConvergence";
    case error::code::tail_underflow: return "TailUnderflow";
    case error::code::underflow: return "Underflow";
    case error::code::incompatible_statistic: return "IncompatibleStatistic";
    case error::code::parse: return "ParseError";
  }
  return "Unknown";
}

inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Int factorial(unsigned long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat pow_rat(const Rat& base, unsigned long e) {
  Rat r;
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), e);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), e);
  return r;  // base canonical => powers canonical
}

inline Rat rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "p" or "p/q".
inline Rat rat_from_string(const std::string& s) {
  try {
    Rat r(s);
    r.canonicalize();
    if (sgn(r.get_den()) == 0) throw std::invalid_argument("zero denominator");
    return r;
  } catch (const std::exception&) {
    throw error(error::code::parse, "not a rational: '" + s + "'");
  }
}

inline std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rat& r) { return mpq_get_d(r.get_mpq_t()); }
inline double to_double(const Int& z) { return mpz_get_d(z.get_mpz_t()); }

}  // namespace polyzero
