// polyzero: probability laws from coefficient polynomials -- exact PMFs and
// cumulants, cumulant-bound certificates, root geometry, limit-theorem
// checks, and samplers, with CSV/JSON emission.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <complex>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include "polyzero/bernoulli.hpp"
#include "polyzero/families.hpp"
#include "polyzero/limits.hpp"
#include "polyzero/montecarlo.hpp"
#include "polyzero/roots.hpp"

using nlohmann::ordered_json;
using namespace polyzero;

namespace {

struct RunConfig {
  std::string family;
  double budget = 2e7;  // enumeration budget; raise to unlock altdesc N=11,12
  std::string n_spec;
  std::string orders = "2..8";
  long precision = 128;
  std::uint64_t seed = 12345;
  int jobs = 1;
  std::string out = ".";
  std::string format = "json";
  std::string backend = "exact";
};

std::string timestamp_utc() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::vector<long> parse_grid(const std::string& s) {
  std::vector<long> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos
                                                                : comma - pos);
    std::size_t dots = item.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stol(item));
      } else {
        long a = std::stol(item.substr(0, dots));
        long b = std::stol(item.substr(dots + 2));
        if (b < a) throw std::invalid_argument("descending range");
        for (long v = a; v <= b; ++v) out.push_back(v);
      }
    } catch (const std::exception&) {
      throw error(error::code::parse, "bad grid item '" + item + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw error(error::code::parse, "empty grid");
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1]) throw error(error::code::parse, "grid must increase strictly");
  return out;
}

void write_file(const std::string& dir, const std::string& name, const std::string& body) {
  std::string path = dir + "/" + name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw error(error::code::parse, "cannot open output file " + path);
  f << body;
}

ordered_json base_metadata(const RunConfig& cfg) {
  ordered_json meta;
  meta["precision_bits"] = cfg.precision;
  meta["generator"] = kGeneratorVersion;
  meta["timestamp"] = timestamp_utc();
  return meta;
}

ordered_json report_json(const LimitReport& rep, const RunConfig& cfg) {
  ordered_json j;
  j["family"] = rep.family;
  j["check"] = rep.check;
  j["N_grid"] = rep.N_grid;
  j["values"] = rep.values;
  if (rep.has_target) j["target"] = rep.target;
  else j["target"] = nullptr;
  j["verdict"] = rep.verdict ? "pass" : "fail";
  ordered_json meta = base_metadata(cfg);
  meta["delta_rule"] = rep.delta_rule;
  if (!rep.a_rule.empty()) meta["a_rule"] = rep.a_rule;
  j["metadata"] = meta;
  for (const auto& [key, value] : rep.extra) j["extras"][key] = value;
  return j;
}

void emit(const ordered_json& j, const RunConfig& cfg) {
  if (cfg.format == "csv") {
    for (auto it = j.begin(); it != j.end(); ++it)
      std::cout << it.key() << "," << it.value().dump() << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

// ---------------------------------------------------------------- pmf ----

int cmd_pmf(const RunConfig& cfg) {
  FamilyDescriptor fam = parse_family(cfg.family);
  if (fam.N < 0 && !cfg.n_spec.empty()) fam = fam.with_rank(parse_grid(cfg.n_spec).front());
  require_rank(fam);
  ordered_json j;
  j["family"] = family_to_string(fam);
  std::string csv;
  if (cfg.backend == "float") {
    FloatPMF pmf = float_pmf(fam);
    csv = pmf_to_csv(pmf);
    auto [mu, var] = float_mean_var(pmf);
    j["backend"] = "float";
    j["support"] = pmf.n();
    j["mean"] = mu;
    j["variance"] = var;
    j["renormalizations"] = pmf.renormalization_count;
  } else {
    DiscretePMF law = pmf(fam, cfg.budget);
    csv = pmf_to_csv(law);
    auto cum = cumulants_of(law, 2);
    j["backend"] = "exact";
    j["support"] = law.n();
    j["mean"] = rat_str(cum.kappa(1));
    j["variance"] = rat_str(cum.sigma2());
    j["mean_double"] = to_double(cum.kappa(1));
    j["variance_double"] = to_double(cum.sigma2());
  }
  j["metadata"] = base_metadata(cfg);
  write_file(cfg.out, "pmf.csv", csv);
  write_file(cfg.out, "pmf_summary.json", j.dump(2) + "\n");
  emit(j, cfg);
  return 0;
}

// ---------------------------------------------------------- cumulants ----

int cmd_cumulants(const RunConfig& cfg) {
  FamilyDescriptor fam = parse_family(cfg.family);
  if (fam.N < 0 && !cfg.n_spec.empty()) fam = fam.with_rank(parse_grid(cfg.n_spec).front());
  require_rank(fam);
  auto orders = parse_grid(cfg.orders);
  unsigned maxm = static_cast<unsigned>(orders.back());
  ordered_json j;
  j["family"] = family_to_string(fam);
  CumulantSequence cum = is_product_form(fam)
                             ? closed_form_cumulants(factor_spec(fam), maxm)
                             : cumulants_of(pmf(fam, cfg.budget), maxm);
  for (long m : orders) {
    ordered_json row;
    row["m"] = m;
    row["kappa"] = rat_str(cum.kappa(m));
    row["kappa_double"] = to_double(cum.kappa(m));
    if (m >= 3 && cum.sigma2() > 0) row["kappa_star_double"] = cum.kappa_star_double(m);
    j["cumulants"].push_back(row);
  }
  j["sigma2"] = rat_str(cum.sigma2());
  if (is_product_form(fam)) {
    FactorSpec spec = factor_spec(fam);
    j["degree"] = spec.degree();
    j["M"] = spec.max_b();
    if (closed_form_cumulant(spec, 2) > 0) {
      hp::Interval d = delta_N(spec, cfg.precision);
      j["delta"]["lo"] = d.lo.str(25);
      j["delta"]["hi"] = d.hi.str(25);
      j["delta"]["double"] = d.mid();
    }
  }
  j["metadata"] = base_metadata(cfg);
  write_file(cfg.out, "cumulants.json", j.dump(2) + "\n");
  emit(j, cfg);
  return 0;
}

// ------------------------------------------------------------- verify ----

int cmd_verify(const RunConfig& cfg, const std::string& scale_name) {
  DeltaScale scale;
  if (scale_name == "order4") scale = DeltaScale::order4;
  else if (scale_name == "all-orders") scale = DeltaScale::all_orders;
  else throw error(error::code::parse, "scale must be order4 or all-orders");
  FamilyDescriptor tmpl = parse_family(cfg.family);
  std::vector<long> grid = cfg.n_spec.empty()
                               ? std::vector<long>{tmpl.N}
                               : parse_grid(cfg.n_spec);
  if (!cfg.n_spec.empty() && tmpl.N >= 1)
    grid = {tmpl.N};  // explicit rank in the family string wins
  auto orders = parse_grid(cfg.orders);
  ordered_json j;
  j["family"] = cfg.family;
  j["check"] = "verify";
  j["delta_scale"] = scale_name;
  ordered_json results = ordered_json::array();
  bool all_hold = true;
  ordered_json first_failure;
  for (long N : grid) {
    FamilyDescriptor fam = tmpl.with_rank(N);
    ordered_json cell;
    cell["N"] = N;
    if (is_product_form(fam)) {
      FactorSpec spec = factor_spec(fam);
      Rat sigma2 = closed_form_cumulant(spec, 2);
      if (sigma2 == 0) {
        cell["degenerate"] = true;
        results.push_back(cell);
        continue;
      }
      SectorReport sector = zero_free_sector(spec, cfg.precision);
      cell["zero_free_sector"] = sector.zero_free;
      if (!sector.zero_free) all_hold = false;
      for (long m : orders) {
        if (m < 2) continue;
        BoundCertificate cert = verify_cumulant_bound(spec, static_cast<unsigned>(m),
                                                      cfg.precision, scale);
        ordered_json c;
        c["order"] = 2 * m;
        c["kappa_star_abs"] = rat_str(cert.lhs);
        c["bound_lo"] = cert.rhs.lo.str(20);
        c["holds"] = cert.holds;
        c["margin"] = cert.margin;
        cell["certificates"].push_back(c);
        if (!cert.holds) {
          all_hold = false;
          if (first_failure.is_null()) {
            first_failure = c;
            first_failure["family"] = family_to_string(fam);
          }
        }
      }
    } else {
      ExactPolynomial p = polynomial(fam).poly;
      GeometryPredicates g = geometry_predicates_checked(p, 1e-8, cfg.precision);
      bool ok = false;
      switch (delta_rule(fam)) {
        case DeltaRule::negative_real: ok = g.real_rooted_negative; break;
        case DeltaRule::hurwitz: ok = g.hurwitz; break;
        case DeltaRule::product: ok = true; break;
      }
      cell["root_predicate"] = ok;
      if (!ok) {
        all_hold = false;
        if (first_failure.is_null()) {
          first_failure["family"] = family_to_string(fam);
          first_failure["root_predicate"] = false;
        }
      }
    }
    results.push_back(cell);
  }
  j["results"] = results;
  j["verdict"] = all_hold ? "pass" : "fail";
  if (!all_hold) j["first_failure"] = first_failure;
  j["metadata"] = base_metadata(cfg);
  write_file(cfg.out, "verify.json", j.dump(2) + "\n");
  emit(j, cfg);
  return all_hold ? 0 : 1;
}

// -------------------------------------------------------------- roots ----

int cmd_roots(const RunConfig& cfg) {
  FamilyDescriptor fam = parse_family(cfg.family);
  if (fam.N < 0 && !cfg.n_spec.empty()) fam = fam.with_rank(parse_grid(cfg.n_spec).front());
  require_rank(fam);
  ExactPolynomial p = polynomial(fam, cfg.budget).poly;
  std::vector<NumericRoot> roots = numeric_roots(p, cfg.precision);
  std::string csv = "re,im,multiplicity,family,N\n";
  char buf[160];
  for (const auto& r : roots) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%ld,%s,%ld\n", r.re, r.im,
                  r.multiplicity, family_to_string(fam).c_str(), fam.N);
    csv += buf;
  }
  write_file(cfg.out, "roots.csv", csv);
  GeometryPredicates g = geometry_predicates(roots, 1e-8);
  ordered_json j;
  j["family"] = family_to_string(fam);
  j["degree"] = p.degree();
  j["roots"] = roots.size();
  j["root_unitary"] = g.root_unitary;
  j["hurwitz"] = g.hurwitz;
  j["real_rooted_negative"] = g.real_rooted_negative;
  if (is_product_form(fam)) {
    RootMultiset exact = product_form_roots(factor_spec(fam));
    j["matches_exact_angles"] = roots_match_exact_angles(exact, roots, 1e-8);
  }
  j["metadata"] = base_metadata(cfg);
  write_file(cfg.out, "roots_summary.json", j.dump(2) + "\n");
  emit(j, cfg);
  return 0;
}

// ------------------------------------------------------------- limits ----

std::string csv_from_columns(const std::vector<std::string>& header,
                             const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i)
    out += header[i] + (i + 1 < header.size() ? "," : "\n");
  char buf[64];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out += buf;
      out += (i + 1 < row.size() ? "," : "\n");
    }
  }
  return out;
}

int cmd_limits(const RunConfig& cfg, const std::string& check, bool ell_eq_n) {
  FamilyDescriptor tmpl = parse_family(cfg.family);
  if (ell_eq_n && tmpl.kind == FamilyKind::gaussian) tmpl.ell = -1;  // track N
  std::vector<long> grid = cfg.n_spec.empty() ? std::vector<long>{tmpl.N}
                                              : parse_grid(cfg.n_spec);
  LimitReport rep;
  if (check == "k4d2" || check == "k3d1") {
    rep = mod_gaussian_trajectory(tmpl, grid, check == "k4d2" ? 4 : 3, cfg.precision);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < grid.size(); ++i)
      rows.push_back({static_cast<double>(grid[i]), rep.values[i],
                      rep.has_target ? rep.target : 0.0});
    write_file(cfg.out, "k4d2_trajectory.csv",
               csv_from_columns({"N", "k4d2", "target"}, rows));
    if (rep.has_target && !rep.values.empty())
      rep.verdict = std::fabs(rep.values.back() - rep.target) <
                    0.02 * std::fabs(rep.target);
  } else if (check == "berry-esseen") {
    rep = berry_esseen_report(tmpl, grid, cfg.jobs);
    // CDF overlay for the largest grid point
    FamilyDescriptor fam = tmpl.with_rank(grid.back());
    auto [mu, sigma] = family_mu_sigma(fam);
    FloatPMF pmf = family_float_pmf(fam);
    std::vector<std::vector<double>> rows;
    double cum = 0;
    for (std::size_t k = 0; k < pmf.probs.size(); ++k) {
      cum += pmf.probs[k];
      double x = (static_cast<double>(k) - mu) / sigma;
      rows.push_back({x, cum, normal_cdf(x)});
    }
    write_file(cfg.out, "cdf_vs_normal.csv",
               csv_from_columns({"x", "F_star", "Phi"}, rows));
  } else if (check == "md") {
    rep = moderate_deviation_curve(tmpl, grid.back(), {0.5, 1.0, 1.5});
    std::vector<std::vector<double>> rows;
    std::vector<double> xs{0.5, 1.0, 1.5};
    for (std::size_t i = 0; i < xs.size(); ++i)
      rows.push_back({xs[i], rep.values[i], -0.5 * xs[i] * xs[i]});
    write_file(cfg.out, "md_curve.csv", csv_from_columns({"x", "value", "target"}, rows));
  } else if (check == "concentration") {
    rep.family = family_to_string(tmpl.with_rank(grid.front()));
    rep.check = "concentration";
    rep.N_grid = grid;
    rep.delta_rule = delta_rule_name(tmpl.with_rank(grid.front()));
    for (long N : grid)
      rep.values.push_back(concentration_envelope_constant(tmpl.with_rank(N)));
  } else if (check == "mod-gaussian") {
    rep.family = family_to_string(tmpl);
    rep.check = "mod-gaussian";
    rep.N_grid = grid;
    rep.delta_rule = delta_rule_name(tmpl.with_rank(grid.front()));
    ReferenceValues rv = reference_values(tmpl.with_rank(grid.front()));
    if (!rv.k4d2_limit_pi4)
      throw error(error::code::no_reference, "no mod-Gaussian limit recorded");
    double L = to_double(*rv.k4d2_limit_pi4) * pi4();
    rep.has_target = true;
    rep.target = L;
    for (long N : grid)
      rep.values.push_back(mod_gaussian_distance(
          tmpl.with_rank(N), L, {{0.5, 0}, {-0.5, 0}, {1, 0}, {-1, 0}}));
    rep.verdict = std::is_sorted(rep.values.rbegin(), rep.values.rend());
  } else if (check == "moment4") {
    rep = fourth_moment_diagnostic(tmpl, grid);
  } else {
    throw error(error::code::parse, "unknown check '" + check + "'");
  }
  rep.precision_bits = cfg.precision;
  ordered_json j = report_json(rep, cfg);
  write_file(cfg.out, "limits_" + check + ".json", j.dump(2) + "\n");
  emit(j, cfg);
  return 0;
}

// ----------------------------------------------------------- simulate ----

int cmd_simulate(const RunConfig& cfg, std::uint64_t samples) {
  FamilyDescriptor fam = parse_family(cfg.family);
  if (fam.N < 0 && !cfg.n_spec.empty()) fam = fam.with_rank(parse_grid(cfg.n_spec).front());
  require_rank(fam);
  EmpiricalComparison cmp = empirical_vs_exact(fam, samples, cfg.seed, 64, cfg.jobs);
  DiscretePMF law = pmf(fam);
  auto cum = cumulants_of(law, 2);
  double mu = to_double(cum.kappa(1));
  double sigma = std::sqrt(std::max(to_double(cum.sigma2()), 0.0));
  write_file(cfg.out, "histogram.csv", histogram_to_csv(cmp.histogram, law, mu, sigma));
  ordered_json j;
  j["family"] = family_to_string(fam);
  j["samples"] = samples;
  j["seed"] = cfg.seed;
  j["tv_distance"] = cmp.tv_distance;
  j["chi2"] = cmp.chi2;
  j["chi2_dof"] = cmp.chi2_dof;
  j["chi2_p"] = cmp.chi2_p;
  j["metadata"] = base_metadata(cfg);
  write_file(cfg.out, "simulate.json", j.dump(2) + "\n");
  emit(j, cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"probability laws from coefficient polynomials"};
  app.require_subcommand(1);
  RunConfig cfg;
  if (const char* env = std::getenv("POLYZERO_PRECISION")) cfg.precision = std::atol(env);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--N", cfg.n_spec, "rank grid, e.g. 2..40 or 100,500,2000");
    sub->add_option("--budget", cfg.budget, "enumeration budget in elements (default 2e7)");
    sub->add_option("--precision", cfg.precision, "working precision in bits (>= 53)");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--jobs", cfg.jobs, "worker threads for sharded work");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--format", cfg.format, "stdout format: json or csv");
  };

  auto* pmf_cmd = app.add_subcommand("pmf", "write the exact or float PMF as CSV + summary JSON");
  pmf_cmd->add_option("family", cfg.family, "family identifier, e.g. coxeter-inv:A:10")->required();
  pmf_cmd->add_option("--backend", cfg.backend, "exact or float");
  add_common(pmf_cmd);

  auto* cum_cmd = app.add_subcommand("cumulants", "exact cumulants and the bound scale Delta");
  cum_cmd->add_option("family", cfg.family)->required();
  cum_cmd->add_option("--orders", cfg.orders, "order grid, e.g. 1..8");
  add_common(cum_cmd);

  std::string scale_name = "order4";
  auto* ver_cmd = app.add_subcommand("verify", "cumulant-bound certificates and root predicates");
  ver_cmd->add_option("--family", cfg.family)->required();
  ver_cmd->add_option("--orders", cfg.orders, "m grid: bound order 2m");
  ver_cmd->add_option("--scale", scale_name, "bound scale: order4 (stated) or all-orders (pi*sqrt(2))");
  add_common(ver_cmd);

  auto* roots_cmd = app.add_subcommand("roots", "numeric roots, exact angles, predicates");
  roots_cmd->add_option("family", cfg.family)->required();
  add_common(roots_cmd);

  std::string check = "k4d2";
  bool ell_eq_n = false;
  auto* lim_cmd = app.add_subcommand("limits", "limit-theorem checks and plot data");
  lim_cmd->add_option("--check", check, "k4d2 | k3d1 | berry-esseen | md | concentration | mod-gaussian | moment4");
  lim_cmd->add_option("--family", cfg.family)->required();
  lim_cmd->add_flag("--ell-eq-N", ell_eq_n, "gaussian family with ell tracking N");
  add_common(lim_cmd);

  std::uint64_t samples = 100000;
  auto* sim_cmd = app.add_subcommand("simulate", "sampler histogram vs exact law");
  sim_cmd->add_option("family", cfg.family)->required();
  sim_cmd->add_option("--samples", samples, "number of draws");
  add_common(sim_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    if (pmf_cmd->parsed()) return cmd_pmf(cfg);
    if (cum_cmd->parsed()) return cmd_cumulants(cfg);
    if (ver_cmd->parsed()) return cmd_verify(cfg, scale_name);
    if (roots_cmd->parsed()) return cmd_roots(cfg);
    if (lim_cmd->parsed()) return cmd_limits(cfg, check, ell_eq_n);
    if (sim_cmd->parsed()) return cmd_simulate(cfg, samples);
  } catch (const error& e) {
    ordered_json err;
    err["error"] = error_code_name(e.kind);
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return e.kind == error::code::parse ? 2 : 3;
  } catch (const std::exception& e) {
    ordered_json err;
    err["error"] = "exception";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 3;
  }
  return 2;
}
