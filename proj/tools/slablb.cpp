// slablb: exact-algebra verification pipeline.
//
// Subcommands:
//   verify-lemmas     interpolation tweaking, agreement intervals, slicing,
//                     and the determinant lower-bound identity
//   verify-reduction  closed forms, normalization, membership equivalence
//   build             materialize a construction instance from a config
//   check             Monte-Carlo framework-condition report on an instance
//   bounds            print the space-time exponent table
//   all               full pipeline into one output directory
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 configuration error.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "slablb/construction.hpp"
#include "slablb/json_io.hpp"
#include "slablb/runners.hpp"
#include "slablb/volume_check.hpp"

namespace {

using slablb::Json;

int thread_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("SLABLB_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
  }
  return n;
}

Json load_config(const std::string& path) {
  if (path.empty()) return Json::object();
  return slablb::load_json_file(path);
}

void write_report(const std::string& out_dir, const std::string& name,
                  const Json& body) {
  if (out_dir.empty()) return;
  slablb::write_file_atomic(out_dir + "/" + name, body.dump(2) + "\n");
}

struct LemmaArgs {
  int trials = 100;
  std::uint64_t seed = 1;
};

bool run_verify_lemmas(const LemmaArgs& a, const std::string& out_dir) {
  slablb::VerificationReport report;
  for (auto& suite :
       {slablb::run_algebra_suite(a.seed),
        slablb::run_tweak_suite(a.seed, a.trials),
        slablb::run_agreement_suite(a.seed, a.trials, a.trials),
        slablb::run_detx_suite(a.seed, a.trials, a.trials / 2),
        slablb::run_slicing_suite(a.seed)})
    for (auto& c : suite.checks) report.add(std::move(c));
  Json body = report.to_json();
  body["seed"] = a.seed;
  write_report(out_dir, "lemmas.json", body);
  std::cout << "lemma checks: " << report.checks.size() - report.failures()
            << "/" << report.checks.size() << " passed\n";
  return report.all_pass();
}

struct ReductionArgs {
  int per_family = 100;
  int equivalence = 2000;
  std::uint64_t seed = 1;
};

bool run_verify_reduction(const ReductionArgs& a, const std::string& out_dir) {
  slablb::VerificationReport report;
  for (auto& suite : {slablb::run_structure_suite(a.seed, a.per_family),
                      slablb::run_equivalence_suite(a.seed, a.equivalence)})
    for (auto& c : suite.checks) report.add(std::move(c));
  Json body = report.to_json();
  body["seed"] = a.seed;
  write_report(out_dir, "reduction.json", body);
  std::cout << "reduction checks: " << report.checks.size() - report.failures()
            << "/" << report.checks.size() << " passed\n";
  return report.all_pass();
}

struct CheckArgs {
  long long samples = 200000;
  int pairs = 64;
  double kappa = 4.0;
  std::uint64_t seed = 7;
};

bool run_check(const slablb::ConstructionInstance& inst, const CheckArgs& a,
               const std::string& out_dir) {
  slablb::ConditionReport rep = slablb::condition_report(
      inst, a.pairs, a.samples, a.seed, a.kappa, thread_count());
  // geometric side checks on the base query
  rep.report.add(slablb::derivative_bound_check(inst.base_query, inst, 1000,
                                                a.seed));
  {
    const auto center = slablb::detail::cube_center(inst);
    const double half = inst.config.eps_p / 2.0;
    rep.report.add(slablb::projected_volume_check(
        inst.base_query, inst, 0, center[0] - half, center[0] + half,
        a.samples, a.seed));
  }
  Json body = rep.report.to_json();
  body["seed"] = a.seed;
  body["samples"] = a.samples;
  write_report(out_dir, "conditions.json", body);
  if (!out_dir.empty())
    slablb::write_file_atomic(out_dir + "/conditions.csv", rep.csv);
  std::cout << "condition 1: " << (rep.cond1_all_pass ? "pass" : "FAIL")
            << "; condition 2: " << rep.cond2_pass << "/" << rep.cond2_total
            << " pairs within threshold\n";
  return rep.report.all_pass();
}

void run_bounds(const std::string& out_dir) {
  std::cout << slablb::bounds_table_string();
  if (!out_dir.empty()) {
    Json rows = Json::array();
    for (const auto& [d, t] : {std::pair{3, 1}, {4, 1}, {4, 2}}) {
      slablb::ConstructionConfig cfg;
      cfg.d = d;
      cfg.t = t;
      const slablb::BoundTable b = slablb::bound_formulas(cfg);
      rows.push_back(Json{{"d", d},
                          {"t", t},
                          {"beta", cfg.beta()},
                          {"m", b.m},
                          {"S_lower", b.S_lower},
                          {"derived_exponent", b.exponent},
                          {"stated_exponent", b.stated_exponent},
                          {"discrepancy", b.discrepancy}});
    }
    write_report(out_dir, "bounds.json", Json{{"table", rows}});
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification of the flat-hyperslab lower-bound construction"};
  app.require_subcommand(1);
  app.fallthrough();  // --config/--out-dir/--seed may follow the subcommand

  std::string config_path, out_dir, inst_path, inst_out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out-dir", out_dir, "directory for report files");
  app.add_option_function<std::uint64_t>(
         "--seed", [&](std::uint64_t s) { seed = s; seed_set = true; },
         "master seed (overrides config)");

  auto* lemmas = app.add_subcommand("verify-lemmas", "run the lemma verifiers");
  int opt_trials = -1;
  lemmas->add_option("--trials", opt_trials, "trials per randomized batch");

  auto* reduction =
      app.add_subcommand("verify-reduction", "run the reduction verifiers");
  int opt_per_family = -1, opt_equiv = -1;
  reduction->add_option("--per-family", opt_per_family,
                        "structure checks per (t,d) family");
  reduction->add_option("--equivalence", opt_equiv,
                        "membership-equivalence instances per family");

  auto* build = app.add_subcommand("build", "materialize an instance");
  build->add_option("--out", inst_out, "instance output path");

  auto* check = app.add_subcommand("check", "Monte-Carlo condition report");
  check->add_option("--inst", inst_path, "instance JSON (from build)");
  long long opt_samples = -1;
  int opt_pairs = -1;
  double opt_kappa = -1.0;
  check->add_option("--samples", opt_samples, "samples per estimate");
  check->add_option("--pairs", opt_pairs, "sampled query pairs");
  check->add_option("--kappa", opt_kappa, "pair-volume threshold constant");

  auto* bounds = app.add_subcommand("bounds", "print the exponent table");
  auto* all = app.add_subcommand("all", "full pipeline");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const Json cfg = load_config(config_path);
    if (!seed_set) seed = cfg.value("seed", std::uint64_t{1});

    LemmaArgs la;
    la.seed = seed;
    la.trials = cfg.contains("lemmas")
                    ? cfg["lemmas"].value("trials", la.trials)
                    : la.trials;
    if (opt_trials > 0) la.trials = opt_trials;

    ReductionArgs ra;
    ra.seed = seed;
    if (cfg.contains("reduction")) {
      ra.per_family = cfg["reduction"].value("per_family", ra.per_family);
      ra.equivalence = cfg["reduction"].value("equivalence", ra.equivalence);
    }
    if (opt_per_family > 0) ra.per_family = opt_per_family;
    if (opt_equiv > 0) ra.equivalence = opt_equiv;

    slablb::ConstructionConfig cc;
    if (cfg.contains("construction"))
      cc = slablb::config_from_json(cfg["construction"]);
    // --seed / a top-level seed overrides; construction.seed otherwise stands
    if (seed_set || cfg.contains("seed")) cc.seed = seed;

    CheckArgs ca;
    ca.seed = seed;
    if (cfg.contains("check")) {
      ca.samples = cfg["check"].value("samples", ca.samples);
      ca.pairs = cfg["check"].value("pairs", ca.pairs);
      ca.kappa = cfg["check"].value("kappa", ca.kappa);
    }
    if (opt_samples > 0) ca.samples = opt_samples;
    if (opt_pairs > 0) ca.pairs = opt_pairs;
    if (opt_kappa > 0) ca.kappa = opt_kappa;

    bool ok = true;
    if (lemmas->parsed()) ok = run_verify_lemmas(la, out_dir);
    if (reduction->parsed()) ok = run_verify_reduction(ra, out_dir) && ok;
    if (build->parsed()) {
      const slablb::ConstructionInstance inst = slablb::build_instance(cc);
      const std::string path =
          inst_out.empty() ? (out_dir.empty() ? "inst.json"
                                              : out_dir + "/inst.json")
                           : inst_out;
      slablb::write_file_atomic(path, slablb::to_json(inst).dump(2) + "\n");
      std::cout << "instance written to " << path << " (" << inst.queries.size()
                << " queries, " << inst.inputs.size() << " inputs)\n";
    }
    if (check->parsed()) {
      if (inst_path.empty())
        throw std::invalid_argument("check requires --inst");
      const slablb::ConstructionInstance inst =
          slablb::instance_from_json(slablb::load_json_file(inst_path));
      ok = run_check(inst, ca, out_dir) && ok;
    }
    if (bounds->parsed()) run_bounds(out_dir);
    if (all->parsed()) {
      ok = run_verify_lemmas(la, out_dir);
      ok = run_verify_reduction(ra, out_dir) && ok;
      const slablb::ConstructionInstance inst = slablb::build_instance(cc);
      const std::string path =
          out_dir.empty() ? "inst.json" : out_dir + "/inst.json";
      slablb::write_file_atomic(path, slablb::to_json(inst).dump(2) + "\n");
      ok = run_check(inst, ca, out_dir) && ok;
      run_bounds(out_dir);
    }
    return ok ? 0 : 1;
  } catch (const slablb::BasePairSearchError& e) {
    std::cerr << "error: " << e.what() << "\n"
              << e.diagnostics.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
