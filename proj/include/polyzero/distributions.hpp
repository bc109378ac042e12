#pragma once

// Laws on {0,...,n} kept exact as integer weight vectors with a common
// normalizer, plus the moment/cumulant machinery and a binary64 backend for
// sizes where exact coefficients are out of the question.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <string>
#include <vector>

#include "polyzero/bigint.hpp"
#include "polyzero/exactpoly.hpp"
#include "polyzero/hp.hpp"

namespace polyzero {

// probs[k] = weights[k] / total, all exact.
struct DiscretePMF {
  std::vector<Int> weights;
  Int total;

  std::size_t n() const { return weights.size() - 1; }
  Rat prob(std::size_t k) const { return rat(weights[k], total); }

  static DiscretePMF from_weights(std::vector<Int> w) {
    Int t(0);
    for (const Int& x : w) {
      if (x < 0) throw error(error::code::negative_coefficient, "negative weight");
      t += x;
    }
    if (t == 0) throw error(error::code::negative_coefficient, "all weights zero");
    return {std::move(w), std::move(t)};
  }

  Rat mean() const {
    Int s(0);
    for (std::size_t k = 0; k < weights.size(); ++k) s += weights[k] * static_cast<long>(k);
    return rat(s, total);
  }
};

inline DiscretePMF pmf_from_polynomial(const ExactPolynomial& p) {
  return DiscretePMF::from_weights(p.coeffs);
}

// E[X^m] for m = 1..M; powers of k accumulated by repeated multiplication.
inline std::vector<Rat> raw_moments(const DiscretePMF& pmf, unsigned M) {
  std::vector<Int> sums(M + 1, Int(0));
  for (std::size_t k = 0; k < pmf.weights.size(); ++k) {
    if (pmf.weights[k] == 0) continue;
    Int kp(1);
    for (unsigned m = 1; m <= M; ++m) {
      kp *= static_cast<long>(k);
      sums[m] += pmf.weights[k] * kp;
    }
  }
  std::vector<Rat> mom(M);
  for (unsigned m = 1; m <= M; ++m) mom[m - 1] = rat(sums[m], pmf.total);
  return mom;
}

struct CumulantSequence {
  std::vector<Rat> raw;  // raw[i] = cumulant of order i+1

  const Rat& kappa(unsigned m) const { return raw.at(m - 1); }
  const Rat& sigma2() const { return raw.at(1); }

  // kappa_m / sigma^m for even m, where sigma^m = (sigma^2)^{m/2} is rational.
  Rat kappa_star_even(unsigned m) const {
    if (m % 2 != 0) throw error(error::code::invalid_spec, "even order required");
    if (sigma2() == 0)
      throw error(error::code::degenerate_variance, "standardization needs sigma^2 > 0");
    return kappa(m) / pow_rat(sigma2(), m / 2);
  }

  // Signed square kappa_m^2 / sigma^{2m} (sign of kappa_m), exact for any m.
  Rat kappa_star_signed_sq(unsigned m) const {
    if (sigma2() == 0)
      throw error(error::code::degenerate_variance, "standardization needs sigma^2 > 0");
    Rat s = kappa(m) * kappa(m) / pow_rat(sigma2(), m);
    return sgn(kappa(m)) < 0 ? Rat(-s) : s;
  }

  double kappa_star_double(unsigned m) const {
    return to_double(kappa(m)) / std::pow(std::sqrt(to_double(sigma2())), m);
  }
};

// Classical recursion kappa_m = mu'_m - sum_{j<m} C(m-1,j-1) kappa_j mu'_{m-j}.
inline CumulantSequence cumulants_from_moments(const std::vector<Rat>& moments) {
  if (moments.size() < 2)
    throw error(error::code::invalid_spec, "need at least two moments");
  std::vector<Rat> kap(moments.size());
  for (std::size_t m = 1; m <= moments.size(); ++m) {
    Rat acc = moments[m - 1];
    for (std::size_t j = 1; j < m; ++j)
      acc -= Rat(binomial(m - 1, j - 1)) * kap[j - 1] * moments[m - j - 1];
    kap[m - 1] = acc;
  }
  return {std::move(kap)};
}

inline CumulantSequence cumulants_of(const DiscretePMF& pmf, unsigned M) {
  return cumulants_from_moments(raw_moments(pmf, M));
}

// Exact (P(X <= x), P(X >= x)).
inline std::pair<Rat, Rat> cdf_and_tail(const DiscretePMF& pmf, const Rat& x) {
  Int below(0), above(0);
  for (std::size_t k = 0; k < pmf.weights.size(); ++k) {
    Rat kk(static_cast<long>(k));
    if (kk <= x) below += pmf.weights[k];
    if (kk >= x) above += pmf.weights[k];
  }
  return {rat(below, pmf.total), rat(above, pmf.total)};
}

// sum p_k e^{tk} at the precision of t.
inline hp::Real mgf_at(const DiscretePMF& pmf, const hp::Real& t) {
  mpfr_prec_t prec = t.prec();
  hp::Real et = hp::exp(t);
  hp::Real pw = hp::Real::of(1.0, prec);
  hp::Real acc(prec);
  for (std::size_t k = 0; k < pmf.weights.size(); ++k) {
    if (pmf.weights[k] != 0)
      acc = acc + hp::Real::of_int(pmf.weights[k], prec) * pw;
    pw = pw * et;
  }
  return acc / hp::Real::of_int(pmf.total, prec);
}

inline hp::Complex mgf_at(const DiscretePMF& pmf, const hp::Complex& t) {
  mpfr_prec_t prec = hp::joint_prec(t.re, t.im);
  hp::Real mod = hp::exp(t.re);
  hp::Complex et{mod * hp::cos(t.im), mod * hp::sin(t.im)};
  hp::Complex pw = hp::Complex::of(1.0, 0.0, prec);
  hp::Complex acc(prec);
  for (std::size_t k = 0; k < pmf.weights.size(); ++k) {
    if (pmf.weights[k] != 0) {
      hp::Real w = hp::Real::of_int(pmf.weights[k], prec);
      acc = acc + hp::Complex{w * pw.re, w * pw.im};
    }
    pw = pw * et;
  }
  hp::Real total = hp::Real::of_int(pmf.total, prec);
  return {acc.re / total, acc.im / total};
}

// --- binary64 backend -----------------------------------------------------

struct FloatPMF {
  std::vector<double> probs;
  long renormalization_count = 0;

  std::size_t n() const { return probs.size() - 1; }
};

// Expands the quotient product directly in binary64 on the fixed window
// [0..n]: per factor, one stride-b difference pass and one stride-a prefix
// pass (every intermediate is the power series of the partial product
// truncated at the final degree, which later upward-only passes never
// contaminate), then an L1 renormalization so the running mass stays O(1)
// (raw coefficients overflow near N ~ 500).
inline FloatPMF float_pmf_from_factors(const FactorSpec& spec) {
  spec.validate();
  std::size_t n = static_cast<std::size_t>(spec.degree());
  std::vector<double> c(n + 1, 0.0);
  c[0] = 1.0;
  long renorms = 0;
  for (auto [a, b] : spec.pairs) {
    std::size_t bb = static_cast<std::size_t>(b), aa = static_cast<std::size_t>(a);
    for (std::size_t i = n + 1; i-- > bb;) c[i] -= c[i - bb];
    for (std::size_t i = aa; i <= n; ++i) c[i] += c[i - aa];
    double s = 0.0;
    for (double x : c) s += std::fabs(x);
    if (!std::isfinite(s) || s <= 0.0)
      throw error(error::code::underflow, "renormalization factor not representable");
    for (double& x : c) x /= s;
    ++renorms;
  }
  // clamp sub-rounding negative dust; the exact coefficients are nonnegative
  for (double& x : c)
    if (x < 0.0 && x > -1e-14) x = 0.0;
  double s = 0.0;
  for (double x : c) s += x;
  if (!std::isfinite(s) || s <= 0.0)
    throw error(error::code::underflow, "final mass not representable");
  for (double& x : c) x /= s;
  return {std::move(c), renorms};
}

inline FloatPMF float_pmf_from_exact(const DiscretePMF& pmf) {
  std::vector<double> p(pmf.weights.size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = to_double(pmf.prob(k));
  return {std::move(p), 0};
}

// Kahan-compensated mean and variance.
inline std::pair<double, double> float_mean_var(const FloatPMF& pmf) {
  double mean = 0.0, comp = 0.0;
  for (std::size_t k = 0; k < pmf.probs.size(); ++k) {
    double term = pmf.probs[k] * static_cast<double>(k) - comp;
    double t = mean + term;
    comp = (t - mean) - term;
    mean = t;
  }
  double var = 0.0;
  comp = 0.0;
  for (std::size_t k = 0; k < pmf.probs.size(); ++k) {
    double d = static_cast<double>(k) - mean;
    double term = pmf.probs[k] * d * d - comp;
    double t = var + term;
    comp = (t - var) - term;
    var = t;
  }
  return {mean, var};
}

// Two columns `k,probability`, probabilities as exact fraction strings.
inline std::string pmf_to_csv(const DiscretePMF& pmf) {
  std::string out = "k,probability\n";
  for (std::size_t k = 0; k < pmf.weights.size(); ++k)
    out += std::to_string(k) + "," + rat_str(pmf.prob(k)) + "\n";
  return out;
}

inline std::string pmf_to_csv(const FloatPMF& pmf) {
  std::string out = "k,probability\n";
  char buf[64];
  for (std::size_t k = 0; k < pmf.probs.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", pmf.probs[k]);
    out += std::to_string(k) + "," + buf + "\n";
  }
  return out;
}

}  // namespace polyzero
