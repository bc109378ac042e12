// Acceptance gate: one line per criterion, measured numbers inline.
//
// Four sub-criteria target values that are mathematically unattainable and
// are marked EXPECTED FAIL, with the measured numbers inline: the order4
// Delta scale over-claims for bound orders 2m >= 6 (4a, refuted by a
// Rademacher law), the -35 pi^4/576 mod-Gaussian constant for the ell = N
// box-partition family carries an inverted 6/5 factor (5b), the standardized
// inversion law's Kolmogorov distance decays at the lattice rate N^{-3/2}
// rather than the N^{-1/2} envelope (6b), and at N = 800 the scaled
// moderate-deviation logarithm cannot sit within 25% of -1/2 because even a
// perfect Gaussian tail gives -0.651 at a_N = 3.88 (10b). Each such line is
// paired with the corrected or complementary check, which must pass. The
// process exits nonzero only on unexpected outcomes.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "polyzero/bernoulli.hpp"
#include "polyzero/families.hpp"
#include "polyzero/limits.hpp"
#include "polyzero/montecarlo.hpp"
#include "polyzero/roots.hpp"

using namespace polyzero;

namespace {

int unexpected = 0;

void report(const std::string& id, bool pass, bool expected_pass, const std::string& note) {
  const char* tag = pass ? "PASS" : (expected_pass ? "FAIL" : "FAIL (expected, documented)");
  if (pass != expected_pass && expected_pass) ++unexpected;
  std::printf("criterion %-4s %-28s %s\n", id.c_str(), tag, note.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

FamilyDescriptor fam(const std::string& s) { return parse_family(s); }

// --- criterion 1: exact oracle equivalence --------------------------------

void criterion_1() {
  long cells = 0;
  bool ok = true;
  auto check = [&](const FamilyDescriptor& f) {
    ++cells;
    if (!(polynomial(f, 5e8).poly == brute_force_polynomial(f, 5e8))) {
      ok = false;
      std::printf("  mismatch at %s\n", family_to_string(f).c_str());
    }
  };
  for (long N = 1; N <= 8; ++N) check(fam("coxeter-inv:A").with_rank(N));
  for (long N = 1; N <= 6; ++N) check(fam("coxeter-inv:B").with_rank(N));
  for (long N = 2; N <= 6; ++N) check(fam("coxeter-inv:D").with_rank(N));
  for (long N = 1; N <= 8; ++N) check(fam("coxeter-desc:A").with_rank(N));
  for (long N = 1; N <= 6; ++N) check(fam("coxeter-desc:B").with_rank(N));
  for (long N = 2; N <= 6; ++N) check(fam("coxeter-desc:D").with_rank(N));
  for (long N = 1; N <= 8; ++N)
    for (long ell = 1; ell <= 8; ++ell)
      check(FamilyDescriptor{FamilyKind::gaussian, N, CoxeterType::A, ell, -1, Rat()});
  for (long N = 1; N <= 10; ++N) check(fam("qcatalan").with_rank(N));
  for (long N = 1; N <= 8; ++N) check(fam("dpp").with_rank(N));
  for (long N = 1; N <= 10; ++N) check(fam("altdesc").with_rank(N));
  // q-Catalan partition-style expansion cross-check: C_N(q) [N+1]_q = G(N,N;q)
  for (long N = 2; N <= 10; ++N) {
    ExactPolynomial cn = polynomial(fam("qcatalan").with_rank(N)).poly;
    std::vector<Int> ones(N + 1, Int(1));
    ExactPolynomial gauss =
        polynomial(FamilyDescriptor{FamilyKind::gaussian, N, CoxeterType::A, N, -1, Rat()}).poly;
    ++cells;
    if (!(multiply(cn, ExactPolynomial(ones)) == gauss)) ok = false;
  }
  const long catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796};
  for (long N = 1; N <= 10; ++N) {
    ++cells;
    if (eval_int(polynomial(fam("qcatalan").with_rank(N)).poly, Int(1)) != catalan[N]) ok = false;
  }
  report("1", ok, true, fmt("oracle equivalence, %ld cells, exact equality", cells));
}

// --- criterion 2: cumulant double derivation --------------------------------

void criterion_2() {
  long cells = 0;
  bool ok = true;
  auto check = [&](const FamilyDescriptor& f) {
    FactorSpec spec = factor_spec(f);
    auto via_moments = cumulants_of(pmf_from_polynomial(build_product_form(spec)), 8);
    for (unsigned m = 1; m <= 8; ++m) {
      ++cells;
      if (!(closed_form_cumulant(spec, m) == via_moments.kappa(m))) ok = false;
    }
    if (!(via_moments.kappa(1) == rat(spec.degree(), 2))) ok = false;
    if (!(via_moments.kappa(3) == 0 && via_moments.kappa(5) == 0 && via_moments.kappa(7) == 0))
      ok = false;
  };
  for (long N = 1; N <= 10; ++N) {
    check(fam("coxeter-inv:A").with_rank(N));
    check(fam("coxeter-inv:B").with_rank(N));
    if (N >= 2) check(fam("coxeter-inv:D").with_rank(N));
    check(fam("qcatalan").with_rank(N));
    check(fam("dpp").with_rank(N));
    check(fam("kcatalan:N:3").with_rank(N));
    for (long ell = 1; ell <= 10; ++ell)
      check(FamilyDescriptor{FamilyKind::gaussian, N, CoxeterType::A, ell, -1, Rat()});
  }
  report("2", ok, true, fmt("closed forms == moment route, %ld comparisons, zero tolerance", cells));
}

// --- criterion 3: published table regression -------------------------------

void criterion_3() {
  long cells = 0;
  bool ok = true;
  auto check = [&](const FamilyDescriptor& f) {
    ReferenceValues rv = reference_values(f);
    FactorSpec spec = factor_spec(f);
    ++cells;
    if (!(*rv.sigma2 == closed_form_cumulant(spec, 2))) ok = false;
    if (rv.kappa4_star) {
      Rat k4s = closed_form_cumulant(spec, 4) / pow_rat(closed_form_cumulant(spec, 2), 2);
      if (!(*rv.kappa4_star == k4s)) ok = false;
    }
    if (!(*rv.M == spec.max_b())) ok = false;
  };
  for (long N = 2; N <= 50; ++N) {
    check(fam("coxeter-inv:A").with_rank(N));
    check(fam("coxeter-inv:B").with_rank(N));
    check(fam("coxeter-inv:D").with_rank(N));
    check(fam("qcatalan").with_rank(N));
    check(fam("dpp").with_rank(N));
    for (long ell = 2; ell <= 20; ++ell)
      check(FamilyDescriptor{FamilyKind::gaussian, N, CoxeterType::A, ell, -1, Rat()});
  }
  report("3", ok, true,
         fmt("sigma^2 / kappa4* tables == cumulant formula, %ld cells (plane-partition "
             "variance uses the self-consistent quintic)", cells));
}

// --- criterion 4: cumulant bound sweep --------------------------------------

void criterion_4() {
  auto t0 = std::chrono::steady_clock::now();
  const char* names[] = {"coxeter-inv:A", "coxeter-inv:B", "coxeter-inv:D",
                         "qcatalan", "dpp", "gaussian", "kcatalan:N:3"};
  long stated_viol = 0, cells = 0;
  std::string first;
  bool corrected_ok = true;
  double min_margin = 1e300;
  for (const char* name : names)
    for (long N = 2; N <= 40; ++N) {
      FamilyDescriptor f = fam(name).with_rank(N);
      FactorSpec spec = factor_spec(f);
      if (closed_form_cumulant(spec, 2) == 0) continue;
      for (unsigned m = 2; m <= 8; ++m) {
        ++cells;
        if (!verify_cumulant_bound(spec, m, 128, DeltaScale::order4).holds) {
          if (++stated_viol == 1) first = fmt("%s 2m=%u", family_to_string(f).c_str(), 2 * m);
        }
        auto cert = verify_cumulant_bound(spec, m, 128, DeltaScale::all_orders);
        if (!cert.holds || !(cert.margin > 0)) corrected_ok = false;
        min_margin = std::min(min_margin, cert.margin / cert.rhs.lo.to_double());
      }
    }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report("4a", stated_viol == 0, false,
         fmt("stated scale pi^2 sqrt(7/6): %ld/%ld cells violate, first %s "
             "(counterexample: Rademacher kappa*_10 = 7936 > 1425.8)",
             stated_viol, cells, first.c_str()));
  bool order4_ok = true;
  for (const char* name : names)
    for (long N = 2; N <= 40; ++N) {
      FactorSpec spec = factor_spec(fam(name).with_rank(N));
      if (closed_form_cumulant(spec, 2) == 0) continue;
      if (!verify_cumulant_bound(spec, 2, 128, DeltaScale::order4).holds) order4_ok = false;
    }
  report("4b", order4_ok, true, "stated scale at 2m=4 holds everywhere (it is the sharp order)");
  report("4c", corrected_ok, true,
         fmt("corrected scale pi sqrt(2): all %ld cells hold, min relative margin %.3f, %.1f s",
             cells, min_margin, secs));
}

// --- criterion 5: kappa4* Delta^2 limits ------------------------------------

void criterion_5() {
  auto rel = [](const Rat& coeff, const Rat& limit) -> Rat {
    return abs(Rat(coeff / limit - 1));
  };
  struct Row { const char* name; Rat limit; };
  std::vector<Row> rows = {{"coxeter-inv:A", rat(-7, 100)},
                           {"coxeter-inv:B", rat(-7, 100)},
                           {"coxeter-inv:D", rat(-7, 100)},
                           {"qcatalan", rat(-7, 80)},
                           {"dpp", rat(-7, 108)}};
  bool ok = true;
  std::string detail;
  for (const auto& row : rows) {
    Rat r = rel(k4d2_pi4_coefficient(fam(row.name).with_rank(2000)), row.limit);
    if (!(r < rat(1, 50))) ok = false;
    detail += fmt("%s %.4f%% ", row.name, 100 * to_double(r));
  }
  report("5a", ok, true, "k4d2 at N=2000 within 2%: " + detail);
  FamilyDescriptor gnn{FamilyKind::gaussian, 2000, CoxeterType::A, 2000, -1, Rat()};
  Rat coeff = k4d2_pi4_coefficient(gnn);
  Rat stated_rel = rel(coeff, rat(-35, 576));
  report("5b", stated_rel < rat(1, 50), false,
         fmt("gaussian ell=N against -35 pi^4/576: %.1f%% off (that constant "
             "carries an inverted 6/5 factor; the consistent limit is -7 pi^4/80)", 100 * to_double(stated_rel)));
  Rat true_rel = rel(coeff, rat(-7, 80));
  report("5c", true_rel < rat(1, 50), true,
         fmt("gaussian ell=N against the self-consistent -7 pi^4/80: %.4f%%",
             100 * to_double(true_rel)));
}

// --- criterion 6: Berry-Esseen shape ----------------------------------------

void criterion_6() {
  std::vector<long> grid{20, 30, 45, 67, 100, 140, 200};
  LimitReport inv = berry_esseen_report(fam("coxeter-inv:A"), grid);
  LimitReport cob = berry_esseen_report(fam("cobin:N:1/2"), grid);
  double slope_inv = inv.extra[0].second, ratio_inv = inv.extra[1].second;
  double slope_cob = cob.extra[0].second, ratio_cob = cob.extra[1].second;
  report("6a", slope_cob > -0.65 && slope_cob < -0.35, true,
         fmt("cobin(N,1/2) log-log d_K slope %.3f in [-0.65,-0.35]", slope_cob));
  report("6b", slope_inv > -0.65 && slope_inv < -0.35, false,
         fmt("inversions A slope %.3f (the distance itself decays at the lattice "
             "rate ~N^{-3/2}; only the c/(delta sigma) envelope is ~N^{-1/2})", slope_inv));
  report("6c", ratio_inv < 10.0 && ratio_cob < 10.0, true,
         fmt("d_K * delta * sigma max/min: inversions %.2f, cobin %.2f (< 10)", ratio_inv,
             ratio_cob));
}

// --- criterion 7: root geometry ---------------------------------------------

void criterion_7() {
  auto t0 = std::chrono::steady_clock::now();
  bool match_ok = true, modulus_ok = true;
  struct Cell { const char* name; long N; mpfr_prec_t prec; };
  std::vector<Cell> cells = {{"coxeter-inv:A", 19, 512}, {"coxeter-inv:B", 9, 448},
                             {"coxeter-inv:D", 9, 448},  {"qcatalan", 14, 384},
                             {"gaussian:N:10", 10, 384}, {"dpp", 6, 384},
                             {"kcatalan:N:3", 8, 384}};
  long degsum = 0;
  for (const auto& cell : cells) {
    FamilyDescriptor f = fam(cell.name).with_rank(cell.N);
    ExactPolynomial p = polynomial(f).poly;
    degsum += p.degree();
    auto roots = numeric_roots(p, cell.prec);
    if (!roots_match_exact_angles(product_form_roots(factor_spec(f)), roots, 1e-8))
      match_ok = false;
    for (const auto& r : roots)
      if (std::fabs(std::hypot(r.re, r.im) - 1.0) > 1e-8) modulus_ok = false;
  }
  report("7a", match_ok && modulus_ok,
         true, fmt("product-form roots (total degree %ld, max 190): unit modulus to 1e-8 "
                   "and bidirectional angle-multiset match", degsum));

  bool cobin_ok = true;
  for (long N : {10L, 25L, 50L})
    for (const char* ps : {"1/4", "1/3", "1/2", "2/3", "3/4"}) {
      Rat p = rat_from_string(ps);
      FamilyDescriptor f{FamilyKind::cobin, N, CoxeterType::A, -1, -1, p};
      ExactPolynomial poly = polynomial(f).poly;
      double expect_re = to_double((Rat(1) - Rat(1) / p) / 2);
      for (const auto& z : cobin_roots(N, p, 128)) {
        if (std::fabs(z.re.to_double() - expect_re) > 1e-10) cobin_ok = false;
        if (relative_residual(poly, z, 128) > 1e-8) cobin_ok = false;
      }
    }
  report("7b", cobin_ok, true,
         "cobin closed-form roots: common real part (1-1/p)/2 to 1e-10, residual < 1e-8");

  bool eulerian_ok = true;
  for (long N = 2; N <= 12; ++N)
    for (const char* t : {"coxeter-desc:A", "coxeter-desc:B", "coxeter-desc:D"}) {
      ExactPolynomial p = polynomial(fam(t).with_rank(N)).poly;
      if (p.degree() < 1) continue;
      if (!geometry_predicates(numeric_roots(p, 256), 1e-6).real_rooted_negative)
        eulerian_ok = false;
    }
  report("7c", eulerian_ok, true, "descent polynomials rank <= 12: real-rooted negative to 1e-6");

  bool alt_ok = true;
  for (long N = 2; N <= 10; ++N) {
    auto g = geometry_predicates(
        numeric_roots(polynomial(fam("altdesc").with_rank(N)).poly, 256), 1e-6);
    if (!g.root_unitary || !g.hurwitz) alt_ok = false;
  }
  report("7d", alt_ok, true, "alternating-descent polynomials N <= 10: unit-modulus Hurwitz to 1e-6");

  bool ehrhart_ok = true;
  for (long N = 2; N <= 30; ++N)
    for (const char* t : {"ehrhart-dualA", "ehrhart-dualC"}) {
      auto roots = numeric_roots(polynomial(fam(t).with_rank(N)).poly, 256);
      for (const auto& r : roots)
        if (std::fabs(r.re + 0.5) > 1e-8) ehrhart_ok = false;
    }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report("7e", ehrhart_ok, true,
         fmt("dual lattice polytopes N <= 30: all roots on Re = -1/2 to 1e-8 (%.1f s total)", secs));
}

// --- criterion 8: backend consistency ----------------------------------------

void criterion_8() {
  double worst = 0;
  long cells = 0;
  auto check = [&](const FamilyDescriptor& f) {
    FloatPMF fl = float_pmf(f);
    DiscretePMF ex = pmf(f);
    ++cells;
    for (std::size_t k = 0; k < fl.probs.size(); ++k)
      worst = std::max(worst, std::fabs(fl.probs[k] - to_double(ex.prob(k))));
  };
  for (long N = 1; N <= 12; ++N) {
    check(fam("coxeter-inv:A").with_rank(N));
    check(fam("coxeter-inv:B").with_rank(N));
    if (N >= 2) check(fam("coxeter-inv:D").with_rank(N));
    check(fam("coxeter-desc:A").with_rank(N));
    check(fam("coxeter-desc:B").with_rank(N));
    if (N >= 2) check(fam("coxeter-desc:D").with_rank(N));
    check(FamilyDescriptor{FamilyKind::gaussian, N, CoxeterType::A, N, -1, Rat()});
    check(FamilyDescriptor{FamilyKind::gaussian, N, CoxeterType::A, 4, -1, Rat()});
    check(fam("qcatalan").with_rank(N));
    check(fam("kcatalan:N:3").with_rank(N));
    check(fam("dpp").with_rank(N));
    check(FamilyDescriptor{FamilyKind::cobin, N, CoxeterType::A, -1, -1, rat(1, 2)});
    check(FamilyDescriptor{FamilyKind::cobin, N, CoxeterType::A, -1, -1, rat(1, 3)});
    check(fam("ehrhart-cube").with_rank(N));
    check(fam("ehrhart-dualA").with_rank(N));
    check(fam("ehrhart-dualC").with_rank(N));
    if (N <= 10) check(fam("altdesc").with_rank(N));
  }
  report("8", worst < 1e-12, true,
         fmt("float vs exact over %ld laws (N <= 12): max |diff| = %.2e", cells, worst));
}

// --- criterion 9: Monte Carlo -------------------------------------------------

void criterion_9() {
  auto cmp = empirical_vs_exact(fam("coxeter-inv:A:8"), 1000000, 7);
  bool tv_ok = cmp.tv_distance < 5e-3;
  bool chi_ok = cmp.chi2_p > 1e-3;
  bool parity_ok = true;
  try {
    (void)sample_histogram(fam("coxeter-inv:D:6"), 100000, 99,
                           pmf(fam("coxeter-inv:D:6")).weights.size(), 64, 1, true);
  } catch (const error&) {
    parity_ok = false;
  }
  report("9", tv_ok && chi_ok && parity_ok,
         true, fmt("inversions A rank 8, 1e6 draws, seed 7: tv = %.5f (< 5e-3), chi2 p = %.3f "
                   "(> 1e-3); type-D parity asserted on 1e5 draws", cmp.tv_distance, cmp.chi2_p));
}

// --- criterion 10: moderate deviation trend -----------------------------------

void criterion_10() {
  auto t0 = std::chrono::steady_clock::now();
  double v200 = moderate_deviation_point(fam("coxeter-inv:A").with_rank(200), 1.0).value;
  double v400 = moderate_deviation_point(fam("coxeter-inv:A").with_rank(400), 1.0).value;
  double v800 = moderate_deviation_point(fam("coxeter-inv:A").with_rank(800), 1.0).value;
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto gap = [](double v) { return std::fabs(v + 0.5); };
  report("10a", gap(v800) < gap(v400) && gap(v400) < gap(v200), true,
         fmt("(1/a^2) log P(X* > a) strictly tightens: %.4f -> %.4f -> %.4f (%.1f s)",
             v200, v400, v800, secs));
  report("10b", gap(v800) / 0.5 < 0.25, false,
         fmt("N=800 value %.4f is %.1f%% from -0.5 (> 25%%; a_N = 3.88 makes even a perfect "
             "Gaussian tail sit at -0.651)", v800, 100 * gap(v800) / 0.5));
}

// --- criterion 11: pointwise mod-Gaussian --------------------------------------

void criterion_11() {
  double L = -7.0 * std::pow(hp::Real::pi(128).to_double(), 4) / 80.0;
  std::vector<std::complex<double>> zs{{0.5, 0}, {-0.5, 0}, {1, 0}, {-1, 0}};
  double d50 = mod_gaussian_distance(fam("qcatalan").with_rank(50), L, zs);
  double d100 = mod_gaussian_distance(fam("qcatalan").with_rank(100), L, zs);
  double d200 = mod_gaussian_distance(fam("qcatalan").with_rank(200), L, zs);
  report("11", d100 < d50 && d200 < d100, true,
         fmt("max_z |phi_N - e^{Lz^4/24}| decreases: %.5f -> %.5f -> %.5f", d50, d100, d200));
}

// --- criterion 12: inequality suite ---------------------------------------------

void criterion_12() {
  std::mt19937_64 gen(31415926);
  std::uniform_int_distribution<long> val(0, 1000000);
  std::uniform_int_distribution<unsigned> order(2, 30);
  long failures = 0;
  for (long t = 0; t < 100000; ++t) {
    long a = val(gen), b = val(gen);
    if (a > b) std::swap(a, b);
    if (!lemma_inequality(Int(a), Int(b), order(gen))) ++failures;
  }
  bool bern_ok = true;
  for (unsigned m = 1; m <= 64; ++m)
    if (!bernoulli_bound(m)) bern_ok = false;
  bool cm_ok = true;
  for (unsigned m = 2; m < 64; ++m)
    if (!c_m_strictly_decreasing_step(m)) cm_ok = false;
  // C_0 = 2^{5/2} 3^4 = 324 sqrt(2)
  hp::Interval c0 = hp::sqrt(hp::Interval::of_ui(32, 128)) * hp::Interval::of_ui(81, 128);
  hp::Interval alt = hp::sqrt(hp::Interval::of_ui(2, 128)) * hp::Interval::of_ui(324, 128);
  bool c0_ok = !(c0.hi < alt.lo) && !(alt.hi < c0.lo) && c0.wid() < 1e-30;
  report("12", failures == 0 && bern_ok && cm_ok && c0_ok,
         true, fmt("power-difference inequality 1e5 exact triples, 0 failures; Bernoulli "
                   "growth bound and c_m decrease to m = 64; C_0 = 2^{5/2} 3^4 = %.10f",
                   c0.mid()));
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("acceptance finished in %.1f s; unexpected outcomes: %d\n", secs, unexpected);
  return unexpected == 0 ? 0 : 1;
}
