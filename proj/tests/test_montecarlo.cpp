#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "polyzero/montecarlo.hpp"

using namespace polyzero;

TEST_CASE("statistic counters on hand-worked elements") {
  CHECK(inversions({1, 2, 3}, CoxeterType::A) == 0);
  CHECK(inversions({2, 1}, CoxeterType::A) == 1);
  CHECK(inversions({3, 2, 1}, CoxeterType::A) == 3);
  // [-2, 1]: inv+ = 0, inv- = 1, inv o = 1
  CHECK(inv_plus({-2, 1}) == 0);
  CHECK(inv_minus({-2, 1}) == 1);
  CHECK(inv_circ({-2, 1}) == 1);
  CHECK(inversions({-2, 1}, CoxeterType::B) == 2);
  CHECK(inversions({-2, 1}, CoxeterType::D) == 1);
  CHECK(descents({1, 2, 3}, CoxeterType::A) == 0);
  CHECK(descents({-1, 2}, CoxeterType::B) == 1);  // pi(0) = 0 > -1
  CHECK(descents({-1, -2}, CoxeterType::D) == 2); // pi(0) = 2 > -1 > -2
  CHECK(alternating_descents({2, 1, 3}) == 2);
  CHECK(alternating_descents({1, 3, 2}) == 0);
  CHECK(three_descents({1, 3, 2, 4}) == 2);  // patterns 132 and 213
  CHECK_THROWS_AS(count_statistic({1, 2}, Statistic::alternating_descents, CoxeterType::B),
                  error);
}

TEST_CASE("merge counting equals the quadratic count on random elements") {
  rng::Xoshiro256pp gen(99);
  for (int t = 0; t < 300; ++t) {
    Element e = sample_element(CoxeterType::B, 12, gen);
    long slow = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = i + 1; j < e.size(); ++j)
        if (e[i] > e[j]) ++slow;
    CHECK(inv_plus(e) == slow);
  }
}

TEST_CASE("samplers produce valid, exhaustively-reachable elements") {
  rng::Xoshiro256pp gen(7);
  // type A with one letter is always the identity
  for (int t = 0; t < 10; ++t) {
    Element e = sample_element(CoxeterType::A, 1, gen);
    CHECK(e == Element{1});
  }
  // type D: every draw has an even number of negatives
  for (int t = 0; t < 20000; ++t) {
    Element e = sample_element(CoxeterType::D, 3, gen);
    CHECK(element_valid(e, CoxeterType::D));
  }
  // type B rank 3: all 48 elements appear and the uniformity chi-square is sane
  std::map<Element, long> freq;
  const int draws = 96000;
  for (int t = 0; t < draws; ++t) ++freq[sample_element(CoxeterType::B, 3, gen)];
  CHECK(freq.size() == 48);
  double chi2 = 0, expect = draws / 48.0;
  for (const auto& [e, c] : freq) chi2 += (c - expect) * (c - expect) / expect;
  CHECK(gamma_q(47.0 / 2.0, chi2 / 2.0) > 1e-3);
}

TEST_CASE("generator is deterministic and shard merge is thread-count stable") {
  rng::Xoshiro256pp a(123), b(123);
  for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());
  FamilyDescriptor f = parse_family("coxeter-inv:A:5");
  auto h1 = sample_histogram(f, 20000, 42, pmf(f).weights.size(), 64, 1);
  auto h2 = sample_histogram(f, 20000, 42, pmf(f).weights.size(), 64, 4);
  CHECK(h1.counts == h2.counts);
  auto h3 = sample_histogram(f, 20000, 43, pmf(f).weights.size(), 64, 1);
  CHECK(h1.counts != h3.counts);
}

TEST_CASE("empirical histograms track the exact law") {
  auto cmp = empirical_vs_exact(parse_family("coxeter-inv:A:6"), 200000, 11);
  CHECK(cmp.tv_distance < 0.01);
  CHECK(cmp.chi2_p > 1e-3);
  // empirical mean within 4 standard errors of n/2
  FamilyDescriptor f = parse_family("coxeter-inv:A:6");
  FactorSpec spec = factor_spec(f);
  double n_half = 0.5 * spec.degree();
  double sigma = std::sqrt(to_double(closed_form_cumulant(spec, 2)));
  double mean = 0;
  for (std::size_t k = 0; k < cmp.histogram.counts.size(); ++k)
    mean += static_cast<double>(k) * cmp.histogram.counts[k];
  mean /= 200000.0;
  CHECK(std::fabs(mean - n_half) < 4.0 * sigma / std::sqrt(200000.0));
  CHECK_THROWS_AS(empirical_vs_exact(f, 0, 1), error);
}

TEST_CASE("descent and tuple samplers") {
  auto desc = empirical_vs_exact(parse_family("coxeter-desc:B:4"), 100000, 5);
  CHECK(desc.tv_distance < 0.01);
  CHECK(desc.chi2_p > 1e-3);
  auto dpp = empirical_vs_exact(parse_family("dpp:7"), 100000, 5);
  CHECK(dpp.tv_distance < 0.02);
  CHECK(dpp.chi2_p > 1e-3);
  auto alt = empirical_vs_exact(parse_family("altdesc:6"), 100000, 5);
  CHECK(alt.tv_distance < 0.01);
  CHECK_THROWS_AS(empirical_vs_exact(parse_family("cobin:6:1/2"), 100, 5), error);
}

TEST_CASE("chi-square tail function") {
  CHECK(gamma_q(0.5, 0.0) == doctest::Approx(1.0));
  // Q(1/2, x/2) for 1 dof at x = 3.841: p = 0.05
  CHECK(gamma_q(0.5, 3.841 / 2.0) == doctest::Approx(0.05).epsilon(1e-3));
  // 10 dof at its mean: p around 0.44
  CHECK(gamma_q(5.0, 5.0) == doctest::Approx(0.4405).epsilon(1e-3));
}

TEST_CASE("histogram csv carries overlay columns") {
  FamilyDescriptor f = parse_family("coxeter-desc:A:1");
  auto cmp = empirical_vs_exact(f, 1000, 9);
  DiscretePMF law = pmf(f);
  std::string csv = histogram_to_csv(cmp.histogram, law, 0.5, 0.5);
  CHECK(csv.find("value,count,exact_probability,normal_density\n") == 0);
  CHECK(csv.find("0,") != std::string::npos);
  CHECK(csv.find("1/2") != std::string::npos);
}
