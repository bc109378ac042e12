#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polyzero/distributions.hpp"
#include "polyzero/exactpoly.hpp"

using namespace polyzero;

namespace {
ExactPolynomial poly(std::initializer_list<long> cs) {
  std::vector<Int> v;
  for (long c : cs) v.emplace_back(c);
  return ExactPolynomial(std::move(v));
}
}  // namespace

TEST_CASE("pmf_from_polynomial") {
  DiscretePMF mah = pmf_from_polynomial(poly({1, 2, 2, 1}));
  CHECK(mah.prob(0) == rat(1, 6));
  CHECK(mah.prob(1) == rat(2, 6));
  CHECK(mah.total == 6);
  DiscretePMF point = pmf_from_polynomial(poly({5}));
  CHECK(point.prob(0) == 1);
  CHECK(point.n() == 0);
  // conditioned two-trial coin: weights (1,2), mass 3
  DiscretePMF cobin = pmf_from_polynomial(poly({1, 2}));
  CHECK(cobin.prob(0) == rat(1, 3));
  CHECK(cobin.prob(1) == rat(2, 3));
  CHECK_THROWS_AS(pmf_from_polynomial(poly({1, -1, 1})), error);
  CHECK_THROWS_AS(pmf_from_polynomial(poly({0})), error);
}

TEST_CASE("raw moments against direct sums") {
  DiscretePMF point3 = DiscretePMF::from_weights({Int(0), Int(0), Int(0), Int(1)});
  auto m1 = raw_moments(point3, 2);
  CHECK(m1[0] == 3);
  CHECK(m1[1] == 9);
  DiscretePMF uni = DiscretePMF::from_weights({Int(1), Int(1)});
  auto m2 = raw_moments(uni, 2);
  CHECK(m2[0] == rat(1, 2));
  CHECK(m2[1] == rat(1, 2));
  // 4-point inversion law of S_3: E X = 3/2, E X^2 = 19/6 by direct sum
  // (0*1 + 1*2 + 4*2 + 9*1)/6
  auto m3 = raw_moments(pmf_from_polynomial(poly({1, 2, 2, 1})), 2);
  CHECK(m3[0] == rat(3, 2));
  CHECK(m3[1] == rat(19, 6));
}

TEST_CASE("cumulants from moments") {
  // S_3 inversion law: kappa2 = (1/12)((2^2-1)+(3^2-1)) = 11/12
  auto mah = cumulants_of(pmf_from_polynomial(poly({1, 2, 2, 1})), 4);
  CHECK(mah.kappa(1) == rat(3, 2));
  CHECK(mah.kappa(2) == rat(11, 12));
  auto point = cumulants_of(DiscretePMF::from_weights({Int(0), Int(0), Int(1)}), 6);
  for (unsigned m = 2; m <= 6; ++m) CHECK(point.kappa(m) == 0);
  // descents of S_4 (counts 1,11,11,1): kappa4 = 5 B_4 / 4 = -1/24 by
  // enumeration; mu4 = 23/48, mu2 = 5/12, kappa4 = mu4 - 3 mu2^2
  auto eul = cumulants_of(pmf_from_polynomial(poly({1, 11, 11, 1})), 4);
  CHECK(eul.kappa(2) == rat(5, 12));
  CHECK(eul.kappa(4) == rat(-1, 24));
  CHECK_THROWS_AS((void)cumulants_from_moments({rat(1, 2)}), error);
}

TEST_CASE("standardized cumulants stay rational") {
  auto eul = cumulants_of(pmf_from_polynomial(poly({1, 11, 11, 1})), 4);
  CHECK(eul.kappa_star_even(4) == rat(-1, 24) / (rat(5, 12) * rat(5, 12)));
  CHECK(eul.kappa_star_signed_sq(3) == 0);
  auto point = cumulants_of(DiscretePMF::from_weights({Int(1)}), 4);
  CHECK_THROWS_AS((void)point.kappa_star_even(4), error);
}

TEST_CASE("translation invariance: z^s * P(z) shifts kappa1 only") {
  ExactPolynomial p = poly({1, 3, 1, 2});
  auto base = cumulants_of(pmf_from_polynomial(p), 6);
  auto shifted = cumulants_of(pmf_from_polynomial(shift_up(p, 3)), 6);
  CHECK(shifted.kappa(1) == base.kappa(1) + 3);
  for (unsigned m = 2; m <= 6; ++m) CHECK(shifted.kappa(m) == base.kappa(m));
}

TEST_CASE("cdf and tail") {
  DiscretePMF mah = pmf_from_polynomial(poly({1, 2, 2, 1}));
  auto [le, ge] = cdf_and_tail(mah, Rat(1));
  CHECK(le == rat(1, 2));
  CHECK(ge == rat(5, 6));
  auto below = cdf_and_tail(mah, rat(-1, 2));
  CHECK(below.first == 0);
  CHECK(below.second == 1);
  auto top = cdf_and_tail(mah, Rat(3));
  CHECK(top.first == 1);
  CHECK(top.second == rat(1, 6));
  auto half = cdf_and_tail(mah, rat(3, 2));
  CHECK(half.first == rat(1, 2));
  CHECK(half.second == rat(1, 2));
}

TEST_CASE("mgf values") {
  DiscretePMF mah = pmf_from_polynomial(poly({1, 2, 2, 1}));
  CHECK(mgf_at(mah, hp::Real::of(0.0, 128)).to_double() == doctest::Approx(1.0).epsilon(1e-30));
  DiscretePMF point2 = DiscretePMF::from_weights({Int(0), Int(0), Int(1)});
  CHECK(mgf_at(point2, hp::Real::of(1.0, 128)).to_double() ==
        doctest::Approx(std::exp(2.0)).epsilon(1e-15));
  DiscretePMF uni = DiscretePMF::from_weights({Int(1), Int(1)});
  CHECK(mgf_at(uni, hp::log(hp::Real::of(2.0, 128))).to_double() ==
        doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("mgf at complex arguments: characteristic-function values") {
  // E e^{itX} of the fair coin on {0,1} at t = pi is (1 + e^{i pi})/2 = 0
  DiscretePMF uni = DiscretePMF::from_weights({Int(1), Int(1)});
  hp::Complex at_pi = mgf_at(uni, hp::Complex(hp::Real(128), hp::Real::pi(128)));
  CHECK(std::fabs(at_pi.re.to_double()) < 1e-30);
  CHECK(std::fabs(at_pi.im.to_double()) < 1e-30);
  // |E e^{itX}| <= 1 on the imaginary axis
  DiscretePMF mah = pmf_from_polynomial(poly({1, 2, 2, 1}));
  for (double t : {0.3, 1.1, 2.9}) {
    hp::Complex v = mgf_at(mah, hp::Complex::of(0.0, t, 128));
    CHECK(hp::abs(v).to_double() <= 1.0 + 1e-15);
  }
}

TEST_CASE("mgf(t) * mgf(-t) >= 1 at real t") {
  DiscretePMF mah = pmf_from_polynomial(poly({3, 1, 4, 1, 5}));
  for (double t : {-2.0, -0.5, 0.3, 1.7}) {
    double prod = mgf_at(mah, hp::Real::of(t, 128)).to_double() *
                  mgf_at(mah, hp::Real::of(-t, 128)).to_double();
    CHECK(prod >= 1.0 - 1e-12);
  }
}

TEST_CASE("float backend basics") {
  FloatPMF half = float_pmf_from_factors({{{1, 2}}});
  CHECK(half.probs[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(half.probs[1] == doctest::Approx(0.5).epsilon(1e-15));
  // rank-2 inversion law (1,2,2,1)/6
  FloatPMF a2 = float_pmf_from_factors({{{1, 2}, {1, 3}}});
  CHECK(a2.probs[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // q-Catalan N=3: (1,0,1,1,1,0,1)/5
  FloatPMF qc3 = float_pmf_from_factors({{{2, 5}, {3, 6}}});
  const double expect[] = {0.2, 0.0, 0.2, 0.2, 0.2, 0.0, 0.2};
  for (int k = 0; k < 7; ++k) CHECK(std::fabs(qc3.probs[k] - expect[k]) < 1e-15);
  CHECK(qc3.renormalization_count == 2);
  double sum = 0;
  for (double p : qc3.probs) sum += p;
  CHECK(std::fabs(sum - 1.0) < 1e-12);
}

TEST_CASE("float backend tracks exact law at larger sizes") {
  FactorSpec spec{{{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {1, 7}, {1, 8}, {1, 9}}};
  FloatPMF fl = float_pmf_from_factors(spec);
  DiscretePMF ex = pmf_from_polynomial(build_product_form(spec));
  REQUIRE(fl.probs.size() == ex.weights.size());
  for (std::size_t k = 0; k < fl.probs.size(); ++k)
    CHECK(std::fabs(fl.probs[k] - to_double(ex.prob(k))) < 1e-12);
  auto [mu, var] = float_mean_var(fl);
  auto cum = cumulants_of(ex, 2);
  CHECK(mu == doctest::Approx(to_double(cum.kappa(1))).epsilon(1e-12));
  CHECK(var == doctest::Approx(to_double(cum.sigma2())).epsilon(1e-10));
}

TEST_CASE("csv export formats") {
  DiscretePMF mah = pmf_from_polynomial(poly({1, 2, 2, 1}));
  std::string csv = pmf_to_csv(mah);
  CHECK(csv.find("k,probability\n") == 0);
  CHECK(csv.find("0,1/6") != std::string::npos);
  CHECK(csv.find("3,1/6") != std::string::npos);
  FloatPMF half = float_pmf_from_factors({{{1, 2}}});
  CHECK(pmf_to_csv(half).find("0,0.5") != std::string::npos);
}
