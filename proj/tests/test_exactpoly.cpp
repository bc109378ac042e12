#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "polyzero/exactpoly.hpp"

using namespace polyzero;

namespace {

ExactPolynomial poly(std::initializer_list<long> cs) {
  std::vector<Int> v;
  for (long c : cs) v.emplace_back(c);
  return ExactPolynomial(std::move(v));
}

// inversion counts of all 6 permutations of {1,2,3}, tallied directly
std::vector<Int> s3_inversion_counts() {
  std::vector<int> perm{1, 2, 3};
  std::vector<Int> counts(4, Int(0));
  do {
    int inv = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (perm[i] > perm[j]) ++inv;
    counts[inv] += 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return counts;
}

// weights of sum(j * c_j), c_j in {0..j-1}, j <= 3 -- the tuple model behind
// the N = 3 plane-partition polynomial
std::vector<Int> dpp3_tuple_counts() {
  std::vector<Int> counts(9, Int(0));
  for (int c2 = 0; c2 < 2; ++c2)
    for (int c3 = 0; c3 < 3; ++c3) counts[2 * c2 + 3 * c3] += 1;
  return counts;
}

}  // namespace

TEST_CASE("multiply matches hand and enumeration oracles") {
  CHECK(multiply(poly({1, 1}), poly({1, 1, 1})) == ExactPolynomial(s3_inversion_counts()));
  CHECK(multiply(poly({1, 1}), poly({1, 1, 1})) == poly({1, 2, 2, 1}));
  ExactPolynomial p = poly({3, 0, -2, 7});
  CHECK(multiply(p, poly({1})) == p);
  CHECK(multiply(poly({1, 0, 1}), poly({1, 0, 0, 1, 0, 0, 1})) ==
        ExactPolynomial(dpp3_tuple_counts()));
}

TEST_CASE("multiply by zero and degree bookkeeping") {
  CHECK(multiply(poly({0}), poly({1, 2})).is_zero());
  CHECK(multiply(poly({1, 2}), poly({3, 4, 5})).degree() == 3);
}

TEST_CASE("multiply is associative and commutative on random polynomials") {
  std::mt19937 gen(42);
  std::uniform_int_distribution<int> deg(0, 6), coef(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    auto rand_poly = [&] {
      std::vector<Int> v(deg(gen) + 1);
      for (auto& c : v) c = coef(gen);
      return ExactPolynomial(std::move(v));
    };
    ExactPolynomial a = rand_poly(), b = rand_poly(), c = rand_poly();
    CHECK(multiply(a, b) == multiply(b, a));
    CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
  }
}

TEST_CASE("build_product_form basic expansions") {
  CHECK(build_product_form({{{1, 2}}}) == poly({1, 1}));
  // rank-2 symmetric group inversion law via its degree pair (2,3)
  CHECK(build_product_form({{{1, 2}, {1, 3}}}) == ExactPolynomial(s3_inversion_counts()));
  // q-Catalan N=3 after dropping the trivial pair
  ExactPolynomial qc3 = build_product_form({{{2, 5}, {3, 6}}});
  CHECK(qc3 == poly({1, 0, 1, 1, 1, 0, 1}));
  CHECK(eval_rational(qc3, Rat(1)) == 5);
}

TEST_CASE("build_product_form verifies exactness and rejects bad specs") {
  CHECK_THROWS_WITH_AS(build_product_form({{{2, 1}}}), doctest::Contains("b >= a"), error);
  CHECK_THROWS_AS(build_product_form({{{3, 4}}}), error);  // (1-z^4)/(1-z^3) not a polynomial
  CHECK_THROWS_AS(build_product_form({{{2, 5}, {2, 6}}}), error);  // double pole at -1
  // telescoping quotients are fine: (1-z^3)(1-z^2)/((1-z^2)(1-z)) = 1+z+z^2
  CHECK(build_product_form({{{2, 3}, {1, 2}}}) == poly({1, 1, 1}));
  // all-trivial spec is the constant 1
  CHECK(build_product_form({{{2, 2}, {5, 5}}}) == poly({1}));
  CHECK(build_product_form({}) == poly({1}));
}

TEST_CASE("product-form invariants: degree, coefficient sum, symmetry") {
  std::vector<FactorSpec> specs = {
      {{{1, 2}, {1, 3}, {1, 4}}},          // inversion law, rank 3
      {{{1, 2}, {1, 4}, {1, 6}}},          // signed-permutation degrees
      {{{2, 6}, {3, 7}, {4, 8}}},          // q-Catalan N=4
      {{{1, 1}, {2, 4}, {3, 9}, {4, 16}}}, // plane-partition weights
      {{{1, 4}, {2, 5}, {3, 6}}},          // partition-lattice box
  };
  for (const FactorSpec& spec : specs) {
    ExactPolynomial p = build_product_form(spec);
    CHECK(static_cast<long>(p.degree()) == spec.degree());
    CHECK(p.nonnegative());
    CHECK(Rat(eval_int(p, Int(1))) == spec.value_at_one());
    CHECK(p.palindromic());
  }
}

TEST_CASE("eval_rational and eval_int") {
  ExactPolynomial mah = poly({1, 2, 2, 1});
  CHECK(eval_rational(mah, Rat(1)) == 6);  // 3!
  CHECK(eval_rational(mah, Rat(0)) == 1);
  CHECK(eval_rational(mah, rat(1, 2)) == rat(1 * 8 + 2 * 4 + 2 * 2 + 1, 8));
  CHECK(eval_int(poly({5}), Int(100)) == 5);
}

TEST_CASE("eval_complex finds exact roots within the residual bound") {
  auto at = [](const ExactPolynomial& p, double re, double im) {
    return eval_complex(p, hp::Complex::of(re, im, 192), 192);
  };
  auto r1 = at(poly({1, 1}), -1.0, 0.0);
  CHECK(hp::abs(r1.value).to_double() <= r1.residual_bound);
  auto r2 = at(poly({1, 0, 1}), 0.0, 1.0);
  CHECK(hp::abs(r2.value).to_double() <= r2.residual_bound);
  // primitive cube root of unity kills 1 + z + z^2; the input is accurate to
  // 192 bits so the value must be far below double-precision noise
  ExactPolynomial p = build_product_form({{{1, 3}}});
  hp::Real theta = hp::Real::pi(192) * hp::Real::of_rat(rat(2, 3), 192);
  auto r3 = eval_complex(p, hp::Complex(hp::cos(theta), hp::sin(theta)), 192);
  CHECK(hp::abs(r3.value).to_double() < 1e-40);
}

TEST_CASE("derivative and shift") {
  // d/dz (1 + 2z + 2z^2 + z^3) = 2 + 4z + 3z^2
  CHECK(derivative(poly({1, 2, 2, 1}), 1) == poly({2, 4, 3}));
  CHECK(derivative(poly({1, 2, 2, 1}), 2) == poly({4, 6}));
  CHECK(shift_up(poly({1, 2}), 2) == poly({0, 0, 1, 2}));
}

TEST_CASE("FactorSpec validation and accessors") {
  FactorSpec qc{{{2, 5}, {3, 6}}};
  qc.validate();
  CHECK(qc.degree() == 6);
  CHECK(qc.max_b() == 6);
  CHECK(qc.value_at_one() == 5);
  FactorSpec bad{{{0, 1}}};
  CHECK_THROWS_AS(bad.validate(), error);
}
