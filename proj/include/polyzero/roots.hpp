#pragma once

// Root bookkeeping: exact cyclotomic angle multisets for quotient-product
// polynomials, closed-form conditional-binomial roots, a simultaneous
// (Ehrlich/Aberth) finder in MPFR arithmetic with derivative-polish for
// clustered roots, and the geometric predicates built on top.

#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "polyzero/bigint.hpp"
#include "polyzero/exactpoly.hpp"
#include "polyzero/hp.hpp"

namespace polyzero {

struct NumericRoot {
  double re = 0, im = 0;
  double residual = 0;  // |p(z)| / ||p||_1
  long multiplicity = 1;
};

// Angles as reduced fractions k/d (the root is exp(2*pi*i*k/d)); angle 0 is
// never present since 1 is never a root of a valid spec's polynomial.
struct RootMultiset {
  std::map<std::pair<long, long>, long> exact_angles;
  std::vector<NumericRoot> numeric;

  long total_exact_multiplicity() const {
    long t = 0;
    for (const auto& [angle, m] : exact_angles) t += m;
    return t;
  }
  long total_numeric_multiplicity() const {
    long t = 0;
    for (const auto& r : numeric) t += r.multiplicity;
    return t;
  }
};

namespace detail {
inline long euler_phi(long d) {
  long result = d, n = d;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  if (n > 1) result -= result / n;
  return result;
}
}  // namespace detail

// Multiplicity of every primitive d-th root angle is
// #{j : d | b_j} - #{j : d | a_j}; a negative count certifies that the spec
// does not define a polynomial.
inline RootMultiset product_form_roots(const FactorSpec& spec) {
  spec.validate();
  RootMultiset out;
  long M = spec.max_b();
  long total = 0;
  for (long d = 2; d <= M; ++d) {
    long mult = 0;
    for (auto [a, b] : spec.pairs) mult += (b % d == 0) - (a % d == 0);
    if (mult < 0)
      throw error(error::code::negative_multiplicity,
                  "angle with denominator " + std::to_string(d) + " has negative count");
    if (mult == 0) continue;
    for (long k = 1; k < d; ++k)
      if (std::gcd(k, d) == 1) out.exact_angles[{k, d}] = mult;
    total += mult * detail::euler_phi(d);
  }
  if (total != spec.degree())
    throw error(error::code::negative_multiplicity, "angle multiset does not sum to the degree");
  return out;
}

struct SectorReport {
  hp::Interval delta;               // 2*pi / M
  bool zero_free = false;
  std::pair<long, long> witness{0, 1};  // closest root angle as a fraction of a turn
};

inline SectorReport zero_free_sector(const FactorSpec& spec, mpfr_prec_t prec = 128) {
  RootMultiset roots = product_form_roots(spec);
  long M = spec.max_b();
  if (M < 1) throw error(error::code::invalid_spec, "empty spec has no sector");
  SectorReport rep;
  rep.delta = hp::Interval::of_rat(rat(2, 1), prec) * hp::Interval::pi(prec) /
              hp::Interval::of_ui(static_cast<unsigned long>(M), prec);
  // Arguments live at 2*pi*k/d; zero-free in (-2*pi/M, 2*pi/M) iff every
  // angle satisfies min(k/d, 1-k/d) >= 1/M, an exact rational comparison.
  Rat closest(1);
  rep.zero_free = true;
  for (const auto& [angle, mult] : roots.exact_angles) {
    (void)mult;
    Rat frac = rat(angle.first, angle.second);
    Rat mirror = Rat(1) - frac;
    Rat dist = frac < mirror ? frac : mirror;
    if (dist < closest) {
      closest = dist;
      rep.witness = angle;
    }
    if (dist < rat(1, M)) rep.zero_free = false;
  }
  return rep;
}

// z_k = (1/p - 1)/2 * (-1 - i cot(pi k / N)), k = 1..N-1.
inline std::vector<hp::Complex> cobin_roots(long N, const Rat& p, mpfr_prec_t prec = 128) {
  if (N < 2) throw error(error::code::unsupported_range, "need N >= 2 for roots");
  if (p <= 0 || p >= 1) throw error(error::code::invalid_spec, "p must lie in (0,1)");
  Rat scale_q = (Rat(1) / p - 1) / 2;
  hp::Real scale = hp::Real::of_rat(scale_q, prec);
  hp::Real pi = hp::Real::pi(prec);
  std::vector<hp::Complex> roots;
  roots.reserve(N - 1);
  for (long k = 1; k < N; ++k) {
    hp::Real angle = pi * hp::Real::of_rat(rat(k, N), prec);
    hp::Real c = hp::cot(angle);
    roots.push_back({hp::neg(scale), hp::neg(scale * c)});
  }
  return roots;
}

namespace detail {

// Contiguous mpfr storage for the finder's hot loop.
class MpArray {
 public:
  MpArray(std::size_t n, mpfr_prec_t prec) : a_(n) {
    for (auto& x : a_) mpfr_init2(&x, prec);
  }
  MpArray(const MpArray&) = delete;
  MpArray& operator=(const MpArray&) = delete;
  ~MpArray() {
    for (auto& x : a_) mpfr_clear(&x);
  }
  mpfr_ptr operator[](std::size_t i) { return &a_[i]; }

 private:
  std::vector<__mpfr_struct> a_;
};

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

// |p(z)| / sum_i |c_i| |z|^i at the working precision.
inline double relative_residual(const ExactPolynomial& p, const hp::Complex& z,
                                mpfr_prec_t prec = 128) {
  hp::Real value = hp::abs(eval_complex(p, z, prec).value);
  hp::Real mag = hp::abs(z);
  hp::Real scale(prec);
  for (std::size_t i = p.coeffs.size(); i-- > 0;)
    scale = scale * mag + hp::Real::of_int(abs(p.coeffs[i]), prec);
  if (scale.sign() == 0) return 0.0;
  return (value / scale).to_double();
}

struct RootFinderOptions {
  int max_sweeps = 200;
  double step_tolerance = 1e-7;   // relative update size that ends the sweeps
  double cluster_radius = 3e-4;   // relative distance under which roots merge
};

// Simultaneous iteration from golden-angle guesses on the Newton-polygon
// radii of the coefficient magnitudes, followed by cluster detection (radius
// relative to the root magnitude) and a Newton polish of each cluster on the
// exact (m-1)-th derivative, which carries the root simply. Residuals are
// |p(z)| / sum_i |c_i| |z|^i at the working precision, so they are
// magnitude-free.
inline std::vector<NumericRoot> numeric_roots(const ExactPolynomial& p,
                                              mpfr_prec_t prec = 256,
                                              RootFinderOptions opt = {}) {
  if (prec < 53) prec = 53;
  if (p.is_zero() || p.degree() < 1)
    throw error(error::code::invalid_spec, "need degree >= 1");
  const std::size_t n = p.degree();

  // roots at the origin come off first
  std::size_t zeros_at_origin = 0;
  while (zeros_at_origin <= n && p.coeffs[zeros_at_origin] == 0) ++zeros_at_origin;
  std::vector<Int> cs(p.coeffs.begin() + zeros_at_origin, p.coeffs.end());
  const std::size_t deg = cs.size() - 1;

  std::vector<NumericRoot> out;
  if (zeros_at_origin > 0)
    out.push_back({0.0, 0.0, 0.0, static_cast<long>(zeros_at_origin)});
  if (deg == 0) return out;

  detail::MpArray coeff(deg + 1, prec);
  for (std::size_t i = 0; i <= deg; ++i) mpfr_set_z(coeff[i], cs[i].get_mpz_t(), MPFR_RNDN);

  // Newton-polygon initial radii: upper convex hull of (i, log|c_i|); each
  // hull edge of horizontal span w contributes w guesses at the radius given
  // by its slope, so widely scaled root magnitudes start in the right decade.
  std::vector<double> logmag(deg + 1, -1e300);
  for (std::size_t i = 0; i <= deg; ++i)
    if (cs[i] != 0) {
      long e = 0;
      double m = mpz_get_d_2exp(&e, cs[i].get_mpz_t());
      logmag[i] = std::log(std::fabs(m)) + static_cast<double>(e) * M_LN2;
    }
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i <= deg; ++i) {
    if (logmag[i] == -1e300) continue;
    while (hull.size() >= 2) {
      std::size_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
      double cross = (logmag[b] - logmag[a]) * static_cast<double>(i - a) -
                     (logmag[i] - logmag[a]) * static_cast<double>(b - a);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(i);
  }
  std::vector<double> radii(deg, 1.0);
  {
    std::size_t filled = 0;
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
      std::size_t i1 = hull[h], i2 = hull[h + 1];
      double logr = (logmag[i1] - logmag[i2]) / static_cast<double>(i2 - i1);
      double r = std::exp(std::clamp(logr, -300.0, 300.0));
      for (std::size_t j = i1; j < i2 && filled < deg; ++j) radii[filled++] = r;
    }
    while (filled < deg) radii[filled++] = 1.0;
  }

  detail::MpArray zr(deg, prec), zi(deg, prec);
  const double golden = 2.0 * M_PI * 0.3819660112501051;
  for (std::size_t i = 0; i < deg; ++i) {
    double th = golden * static_cast<double>(i + 1) + 0.2137;
    mpfr_set_d(zr[i], radii[i] * std::cos(th), MPFR_RNDN);
    mpfr_set_d(zi[i], radii[i] * std::sin(th), MPFR_RNDN);
  }

  detail::MpArray w(14, prec);
  mpfr_ptr br = w[0], bi = w[1], dr = w[2], di = w[3], t1 = w[4], t2 = w[5],
           sr = w[6], si = w[7], wr = w[8], wi = w[9], den = w[10], ur = w[11],
           ui = w[12], t3 = w[13];

  auto horner_both = [&](std::size_t i) {
    // b = p(z_i), d = p'(z_i); coefficients are real
    mpfr_set_ui(br, 0, MPFR_RNDN);
    mpfr_set_ui(bi, 0, MPFR_RNDN);
    mpfr_set_ui(dr, 0, MPFR_RNDN);
    mpfr_set_ui(di, 0, MPFR_RNDN);
    for (std::size_t k = deg + 1; k-- > 0;) {
      // d = d*z + b
      mpfr_mul(t1, dr, zr[i], MPFR_RNDN);
      mpfr_mul(t2, di, zi[i], MPFR_RNDN);
      mpfr_sub(t1, t1, t2, MPFR_RNDN);
      mpfr_mul(t2, dr, zi[i], MPFR_RNDN);
      mpfr_mul(t3, di, zr[i], MPFR_RNDN);
      mpfr_add(t2, t2, t3, MPFR_RNDN);
      mpfr_add(dr, t1, br, MPFR_RNDN);
      mpfr_add(di, t2, bi, MPFR_RNDN);
      // b = b*z + c_k
      mpfr_mul(t1, br, zr[i], MPFR_RNDN);
      mpfr_mul(t2, bi, zi[i], MPFR_RNDN);
      mpfr_sub(t1, t1, t2, MPFR_RNDN);
      mpfr_mul(t2, br, zi[i], MPFR_RNDN);
      mpfr_mul(t3, bi, zr[i], MPFR_RNDN);
      mpfr_add(t2, t2, t3, MPFR_RNDN);
      mpfr_add(br, t1, coeff[k], MPFR_RNDN);
      mpfr_set(bi, t2, MPFR_RNDN);
    }
  };

  for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
    double max_step = 0;
    for (std::size_t i = 0; i < deg; ++i) {
      horner_both(i);
      if (mpfr_zero_p(br) && mpfr_zero_p(bi)) continue;
      if (mpfr_zero_p(dr) && mpfr_zero_p(di)) {
        mpfr_add_d(zr[i], zr[i], 1e-3, MPFR_RNDN);
        max_step = std::max(max_step, 1e-3);
        continue;
      }
      // w = p/p'
      mpfr_mul(den, dr, dr, MPFR_RNDN);
      mpfr_mul(t1, di, di, MPFR_RNDN);
      mpfr_add(den, den, t1, MPFR_RNDN);
      mpfr_mul(t1, br, dr, MPFR_RNDN);
      mpfr_mul(t2, bi, di, MPFR_RNDN);
      mpfr_add(t1, t1, t2, MPFR_RNDN);
      mpfr_div(wr, t1, den, MPFR_RNDN);
      mpfr_mul(t1, bi, dr, MPFR_RNDN);
      mpfr_mul(t2, br, di, MPFR_RNDN);
      mpfr_sub(t1, t1, t2, MPFR_RNDN);
      mpfr_div(wi, t1, den, MPFR_RNDN);
      // s = sum_{j != i} 1/(z_i - z_j)
      mpfr_set_ui(sr, 0, MPFR_RNDN);
      mpfr_set_ui(si, 0, MPFR_RNDN);
      for (std::size_t j = 0; j < deg; ++j) {
        if (j == i) continue;
        mpfr_sub(t1, zr[i], zr[j], MPFR_RNDN);
        mpfr_sub(t2, zi[i], zi[j], MPFR_RNDN);
        mpfr_mul(den, t1, t1, MPFR_RNDN);
        mpfr_mul(t3, t2, t2, MPFR_RNDN);
        mpfr_add(den, den, t3, MPFR_RNDN);
        if (mpfr_zero_p(den)) {
          mpfr_add_d(zr[i], zr[i], 7e-4, MPFR_RNDN);
          continue;
        }
        mpfr_div(t1, t1, den, MPFR_RNDN);
        mpfr_add(sr, sr, t1, MPFR_RNDN);
        mpfr_div(t2, t2, den, MPFR_RNDN);
        mpfr_sub(si, si, t2, MPFR_RNDN);
      }
      // step = w / (1 - w*s)
      mpfr_mul(t1, wr, sr, MPFR_RNDN);
      mpfr_mul(t2, wi, si, MPFR_RNDN);
      mpfr_sub(t1, t1, t2, MPFR_RNDN);
      mpfr_ui_sub(ur, 1, t1, MPFR_RNDN);
      mpfr_mul(t1, wr, si, MPFR_RNDN);
      mpfr_mul(t2, wi, sr, MPFR_RNDN);
      mpfr_add(t1, t1, t2, MPFR_RNDN);
      mpfr_neg(ui, t1, MPFR_RNDN);
      mpfr_mul(den, ur, ur, MPFR_RNDN);
      mpfr_mul(t1, ui, ui, MPFR_RNDN);
      mpfr_add(den, den, t1, MPFR_RNDN);
      if (mpfr_zero_p(den)) {
        mpfr_set(ur, wr, MPFR_RNDN);
        mpfr_set(ui, wi, MPFR_RNDN);
      } else {
        mpfr_mul(t1, wr, ur, MPFR_RNDN);
        mpfr_mul(t2, wi, ui, MPFR_RNDN);
        mpfr_add(t1, t1, t2, MPFR_RNDN);
        mpfr_div(t3, t1, den, MPFR_RNDN);
        mpfr_mul(t1, wi, ur, MPFR_RNDN);
        mpfr_mul(t2, wr, ui, MPFR_RNDN);
        mpfr_sub(t1, t1, t2, MPFR_RNDN);
        mpfr_div(ui, t1, den, MPFR_RNDN);
        mpfr_set(ur, t3, MPFR_RNDN);
      }
      mpfr_sub(zr[i], zr[i], ur, MPFR_RNDN);
      mpfr_sub(zi[i], zi[i], ui, MPFR_RNDN);
      double sr_d = std::fabs(mpfr_get_d(ur, MPFR_RNDN));
      double si_d = std::fabs(mpfr_get_d(ui, MPFR_RNDN));
      double mag = std::hypot(mpfr_get_d(zr[i], MPFR_RNDN), mpfr_get_d(zi[i], MPFR_RNDN));
      max_step = std::max(max_step, std::hypot(sr_d, si_d) / std::max(mag, 1e-30));
    }
    if (max_step < opt.step_tolerance) break;
  }

  // cluster in double coordinates, radius relative to the root magnitude
  std::vector<double> xr(deg), xi(deg);
  for (std::size_t i = 0; i < deg; ++i) {
    xr[i] = mpfr_get_d(zr[i], MPFR_RNDN);
    xi[i] = mpfr_get_d(zi[i], MPFR_RNDN);
  }
  detail::UnionFind uf(deg);
  for (std::size_t i = 0; i < deg; ++i)
    for (std::size_t j = i + 1; j < deg; ++j) {
      double scale = std::max(std::hypot(xr[i], xi[i]), std::hypot(xr[j], xi[j]));
      if (std::hypot(xr[i] - xr[j], xi[i] - xi[j]) < opt.cluster_radius * scale)
        uf.unite(i, j);
    }
  std::map<std::size_t, std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < deg; ++i) clusters[uf.find(i)].push_back(i);

  ExactPolynomial reduced{cs};
  double residual_target = std::pow(2.0, -0.5 * static_cast<double>(prec));
  for (const auto& [rep, members] : clusters) {
    (void)rep;
    long mult = static_cast<long>(members.size());
    double cr = 0, ci = 0;
    for (std::size_t i : members) {
      cr += xr[i];
      ci += xi[i];
    }
    cr /= static_cast<double>(mult);
    ci /= static_cast<double>(mult);

    // Newton on the (m-1)-th derivative, where the root is simple.
    ExactPolynomial q = (mult > 1) ? derivative(reduced, static_cast<unsigned>(mult - 1)) : reduced;
    ExactPolynomial qd = derivative(q, 1);
    hp::Complex z = hp::Complex::of(cr, ci, prec);
    for (int it = 0; it < 80; ++it) {
      hp::Complex qv = eval_complex(q, z, prec).value;
      hp::Complex qdv = eval_complex(qd, z, prec).value;
      hp::Real qd_abs = hp::abs(qdv);
      if (qd_abs.sign() == 0) break;
      hp::Complex step = qv / qdv;
      z = z - step;
      double sd = hp::abs(step).to_double();
      double zd = std::max(hp::abs(z).to_double(), 1e-30);
      if (sd < zd * std::pow(2.0, -static_cast<double>(prec) + 6)) break;
    }
    double resid = relative_residual(reduced, z, prec);
    if (!(resid <= residual_target))
      throw error(error::code::non_convergence,
                  "residual target unmet near (" + std::to_string(cr) + "," +
                      std::to_string(ci) + ")");
    auto [zr_d, zi_d] = z.to_doubles();
    out.push_back({zr_d, zi_d, resid, mult});
  }
  return out;
}

struct GeometryPredicates {
  bool root_unitary = true;          // every |z| within tol of 1
  bool hurwitz = true;               // every Re(z) < -tol
  bool real_rooted_negative = true;  // |Im| <= tol and Re < -tol throughout
  double boundary_margin = 1e300;    // smallest distance to any predicate edge
};

inline GeometryPredicates geometry_predicates(const std::vector<NumericRoot>& roots,
                                              double tol = 1e-8) {
  GeometryPredicates g;
  for (const auto& r : roots) {
    double modulus_err = std::fabs(std::hypot(r.re, r.im) - 1.0);
    if (modulus_err > tol) g.root_unitary = false;
    if (!(r.re < -tol)) g.hurwitz = false;
    if (std::fabs(r.im) > tol || !(r.re < -tol)) g.real_rooted_negative = false;
    g.boundary_margin = std::min({g.boundary_margin,
                                  std::fabs(modulus_err - tol),
                                  std::fabs(std::fabs(r.re) - tol),
                                  std::fabs(std::fabs(r.im) - tol)});
  }
  return g;
}

// Predicates with the escalation rule: when a root sits within a decade of
// the tolerance boundary, double the working precision and recompute.
inline GeometryPredicates geometry_predicates_checked(const ExactPolynomial& p,
                                                      double tol,
                                                      mpfr_prec_t prec = 256) {
  for (int attempt = 0; attempt < 3; ++attempt) {
    auto roots = numeric_roots(p, prec);
    GeometryPredicates g = geometry_predicates(roots, tol);
    if (g.boundary_margin > 9.0 * tol || attempt == 2) return g;
    prec *= 2;
  }
  return {};
}

// Bidirectional matching between the exact angle multiset and a numeric root
// list: every exact angle hosts the right number of numeric roots within
// `tol`, and every numeric root lies within `tol` of its exact angle.
inline bool roots_match_exact_angles(const RootMultiset& exact,
                                     const std::vector<NumericRoot>& numeric,
                                     double tol = 1e-8) {
  long assigned = 0;
  for (const auto& [angle, mult] : exact.exact_angles) {
    double theta = 2.0 * M_PI * static_cast<double>(angle.first) /
                   static_cast<double>(angle.second);
    double ex = std::cos(theta), ey = std::sin(theta);
    long found = 0;
    for (const auto& r : numeric)
      if (std::hypot(r.re - ex, r.im - ey) <= tol) found += r.multiplicity;
    if (found != mult) return false;
    assigned += mult;
  }
  long numeric_total = 0;
  for (const auto& r : numeric) numeric_total += r.multiplicity;
  return assigned == numeric_total;
}

}  // namespace polyzero
