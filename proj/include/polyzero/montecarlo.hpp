#pragma once

// Stochastic oracles: exact-uniform samplers for the reflection groups (and
// the tuple model behind the plane-partition statistic), statistic counters,
// and the empirical-vs-exact comparison with sharded, seed-stable streams.

#include <cmath>
#include <cstdint>
#include <future>
#include <string>
#include <vector>

#include "polyzero/coxeter.hpp"
#include "polyzero/distributions.hpp"
#include "polyzero/families.hpp"
#include "polyzero/limits.hpp"

namespace polyzero {

inline constexpr const char* kGeneratorVersion = "xoshiro256++-1.0";

namespace rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256++ 1.0 (Blackman & Vigna), seeded through splitmix64.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    for (auto& word : s_) word = splitmix64(seed);
  }

  std::uint64_t next() {
    auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
    std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // unbiased draw from {0,...,n-1}
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t threshold = (-n) % n;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

 private:
  std::uint64_t s_[4];
};

}  // namespace rng

// Uniform group element. For type A, N is the number of permuted letters
// (N = 1 always yields the identity); for B and D it is the rank.
inline Element sample_element(CoxeterType type, long N, rng::Xoshiro256pp& gen) {
  Element e(static_cast<std::size_t>(N));
  for (long i = 0; i < N; ++i) e[i] = static_cast<int>(i + 1);
  for (long i = N - 1; i > 0; --i)
    std::swap(e[i], e[gen.below(static_cast<std::uint64_t>(i) + 1)]);
  if (type == CoxeterType::A) return e;
  long flipped = 0;
  for (long i = 0; i < N; ++i)
    if (gen.next() & 1) {
      e[i] = -e[i];
      ++flipped;
    }
  // parity correction is a bijection between odd and even sign vectors
  if (type == CoxeterType::D && flipped % 2 != 0) e[0] = -e[0];
  return e;
}

struct EmpiricalHistogram {
  std::vector<std::uint64_t> counts;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
};

// Upper regularized incomplete gamma Q(a,x) by series / continued fraction.
inline double gamma_q(double a, double x) {
  if (x < 0 || a <= 0) return 1.0;
  if (x == 0) return 1.0;
  double gln = std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(-x + a * std::log(x) - gln);
  }
  double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - gln) * h;
}

struct EmpiricalComparison {
  double tv_distance = 0;
  double chi2 = 0;
  long chi2_dof = 0;
  double chi2_p = 1;
  EmpiricalHistogram histogram;
};

namespace detail {

struct SamplePlan {
  CoxeterType type = CoxeterType::A;
  Statistic stat = Statistic::inversions;
  long letters = 0;  // permutation length; 0 selects the tuple sampler
  long tuple_N = 0;
};

inline SamplePlan sample_plan(const FamilyDescriptor& f) {
  SamplePlan plan;
  switch (f.kind) {
    case FamilyKind::coxeter_inversions:
    case FamilyKind::coxeter_descents:
      plan.type = f.ctype;
      plan.stat = (f.kind == FamilyKind::coxeter_inversions) ? Statistic::inversions
                                                             : Statistic::descents;
      plan.letters = (f.ctype == CoxeterType::A) ? f.N + 1 : f.N;
      return plan;
    case FamilyKind::alternating_descents:
      plan.type = CoxeterType::A;
      plan.stat = Statistic::alternating_descents;
      plan.letters = f.N;
      return plan;
    case FamilyKind::dpp:
      plan.tuple_N = f.N;
      return plan;
    default:
      throw error(error::code::unsupported_range,
                  "no sampler for " + family_to_string(f));
  }
}

}  // namespace detail

// Sharded sampling with per-shard streams derived from (seed, shard index);
// the merge is count-vector addition in shard order, so the histogram is a
// function of (seed, shard_count) alone, independent of thread count.
inline EmpiricalHistogram sample_histogram(const FamilyDescriptor& f,
                                           std::uint64_t samples, std::uint64_t seed,
                                           std::size_t support_size,
                                           int shard_count = 64, int jobs = 1,
                                           bool validate_elements = true) {
  require_rank(f);
  detail::SamplePlan plan = detail::sample_plan(f);
  auto run_shard = [&](int shard) {
    std::uint64_t quota = samples / shard_count +
                          (static_cast<std::uint64_t>(shard) < samples % shard_count);
    std::uint64_t shard_seed = seed + 0x9e3779b97f4a7c15ULL * (shard + 1);
    rng::Xoshiro256pp gen(shard_seed);
    std::vector<std::uint64_t> counts(support_size, 0);
    if (plan.tuple_N > 0) {
      for (std::uint64_t s = 0; s < quota; ++s) {
        long weight = 0;
        for (long j = 2; j <= plan.tuple_N; ++j)
          weight += j * static_cast<long>(gen.below(static_cast<std::uint64_t>(j)));
        ++counts[static_cast<std::size_t>(weight)];
      }
    } else {
      for (std::uint64_t s = 0; s < quota; ++s) {
        Element e = sample_element(plan.type, plan.letters, gen);
        if (validate_elements && !element_valid(e, plan.type))
          throw error(error::code::invalid_spec, "sampler produced an invalid element");
        ++counts[static_cast<std::size_t>(count_statistic(e, plan.stat, plan.type))];
      }
    }
    return counts;
  };
  std::vector<std::vector<std::uint64_t>> shard_counts(shard_count);
  if (jobs <= 1) {
    for (int shard = 0; shard < shard_count; ++shard) shard_counts[shard] = run_shard(shard);
  } else {
    std::vector<std::future<std::vector<std::uint64_t>>> futures;
    for (int shard = 0; shard < shard_count; ++shard)
      futures.push_back(std::async(std::launch::async, run_shard, shard));
    for (int shard = 0; shard < shard_count; ++shard) shard_counts[shard] = futures[shard].get();
  }
  EmpiricalHistogram hist;
  hist.counts.assign(support_size, 0);
  hist.sample_count = samples;
  hist.seed = seed;
  for (const auto& counts : shard_counts)
    for (std::size_t k = 0; k < support_size; ++k) hist.counts[k] += counts[k];
  return hist;
}

inline EmpiricalComparison empirical_vs_exact(const FamilyDescriptor& f,
                                              std::uint64_t samples, std::uint64_t seed,
                                              int shard_count = 64, int jobs = 1) {
  if (samples < 1) throw error(error::code::invalid_spec, "need at least one sample");
  DiscretePMF exact = pmf(f);
  EmpiricalComparison cmp;
  cmp.histogram = sample_histogram(f, samples, seed, exact.weights.size(), shard_count, jobs);
  double total = static_cast<double>(samples);
  double tv = 0;
  for (std::size_t k = 0; k < exact.weights.size(); ++k)
    tv += std::fabs(static_cast<double>(cmp.histogram.counts[k]) / total -
                    to_double(exact.prob(k)));
  cmp.tv_distance = 0.5 * tv;
  // chi-square with cells pooled left-to-right to expected count >= 5
  std::vector<std::pair<double, double>> cells;  // (observed, expected)
  double obs = 0, exp = 0;
  for (std::size_t k = 0; k < exact.weights.size(); ++k) {
    obs += static_cast<double>(cmp.histogram.counts[k]);
    exp += to_double(exact.prob(k)) * total;
    if (exp >= 5.0) {
      cells.emplace_back(obs, exp);
      obs = exp = 0;
    }
  }
  if (exp > 0 && !cells.empty()) {
    cells.back().first += obs;
    cells.back().second += exp;
  }
  cmp.chi2 = 0;
  for (auto [o, e] : cells) cmp.chi2 += (o - e) * (o - e) / e;
  cmp.chi2_dof = static_cast<long>(cells.size()) - 1;
  cmp.chi2_p = cmp.chi2_dof > 0 ? gamma_q(0.5 * cmp.chi2_dof, 0.5 * cmp.chi2) : 1.0;
  return cmp;
}

// columns: value,count,exact_probability,normal_density
inline std::string histogram_to_csv(const EmpiricalHistogram& hist,
                                    const DiscretePMF& exact, double mu, double sigma) {
  std::string out = "value,count,exact_probability,normal_density\n";
  char buf[128];
  for (std::size_t k = 0; k < hist.counts.size(); ++k) {
    double density = sigma > 0 ? normal_pdf((static_cast<double>(k) - mu) / sigma) / sigma : 0.0;
    std::snprintf(buf, sizeof buf, "%zu,%llu,%s,%.17g\n", k,
                  static_cast<unsigned long long>(hist.counts[k]),
                  rat_str(exact.prob(k)).c_str(), density);
    out += buf;
  }
  return out;
}

}  // namespace polyzero
