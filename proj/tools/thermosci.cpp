// thermosci: budgeted measure-update-erase simulation, bound evaluation, toy
// strategy sweeps and verification suites.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "thermosci/io.hpp"
#include "thermosci/thermosci.hpp"
#include "thermosci/verify.hpp"

namespace {

using nlohmann::json;
using namespace thermosci;

Units parse_units(const std::string& s) {
  if (s == "nats") return Units::Nats;
  if (s == "bits") return Units::Bits;
  throw Error(ErrorKind::InvalidConfig, "units must be 'nats' or 'bits'");
}

std::vector<std::size_t> parse_index_list(const std::string& s, const char* what) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidConfig, std::string(what) + ": bad index '" + item + "'");
    }
  }
  if (out.empty()) throw Error(ErrorKind::InvalidConfig, std::string(what) + ": empty list");
  return out;
}

/// fixed:0,1,1 | roundrobin | random | greedy
Policy parse_policy(const std::string& s, std::uint64_t seed) {
  if (s == "roundrobin") return policy::RoundRobin{};
  if (s == "random") return policy::Random{seed};
  if (s == "greedy") return policy::GreedyInfoMax{};
  if (s.rfind("fixed:", 0) == 0) return policy::FixedSequence{parse_index_list(s.substr(6), "--policy")};
  throw Error(ErrorKind::InvalidConfig, "unknown policy '" + s + "'");
}

/// expected | sampled:N
RunMode parse_mode(const std::string& s, std::uint64_t seed) {
  if (s == "expected") return ExpectedMode{};
  if (s.rfind("sampled:", 0) == 0) {
    try {
      const long n = std::stol(s.substr(8));
      if (n >= 1) return SampledMode{seed, static_cast<std::size_t>(n)};
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorKind::InvalidConfig, "mode must be 'expected' or 'sampled:N' with N >= 1");
}

void emit(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
  } else {
    io::write_file(path, contents);
  }
}

void print_checks(const std::vector<BoundCheck>& checks) {
  for (const auto& c : checks) {
    std::printf("[%s] %-24s observed=%.9g bound=%.9g (%s)\n", c.passed ? "PASS" : "FAIL",
                c.name.c_str(), c.observed, c.bound, c.relation.c_str());
  }
}

json checks_to_json(const std::vector<BoundCheck>& checks, Units units) {
  json arr = json::array();
  for (const auto& c : checks) {
    // The efficiency cap is dimensionless; everything else is information or work.
    const bool ratio = c.name == "efficiency_cap";
    arr.push_back({{"name", c.name},
                   {"observed", ratio ? c.observed : convert(c.observed, units)},
                   {"bound", ratio ? c.bound : convert(c.bound, units)},
                   {"relation", c.relation},
                   {"passed", c.passed}});
  }
  return arr;
}

bool all_passed(const std::vector<BoundCheck>& checks) {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

struct SimulateArgs {
  std::string env;
  std::string policy = "greedy";
  double budget = 0.0;
  double kappa_meas = 1.0;
  double kappa_erase = 1.0;
  double delta_f = 0.0;
  std::string mode = "expected";
  std::uint64_t seed = 0;
  std::string compress;
  std::size_t max_rounds = 32;
  std::size_t node_cap = 1'000'000;
  std::string units = "nats";
  std::string out;
  std::string report;
};

int cmd_simulate(const SimulateArgs& a) {
  const Units units = parse_units(a.units);
  const auto env = io::load_environment(a.env);
  const auto pol = parse_policy(a.policy, a.seed);
  const auto mode = parse_mode(a.mode, a.seed);
  const CostModel cost{a.kappa_meas, a.kappa_erase, to_nats(a.delta_f, units)};
  cost.validate();
  std::optional<CompressionMap> compression;
  if (!a.compress.empty()) compression = CompressionMap(parse_index_list(a.compress, "--compress"));
  EpisodeLimits limits;
  limits.max_rounds = a.max_rounds;
  limits.node_cap = a.node_cap;
  limits.threads = default_thread_count();

  const auto result = run_episode(env, pol, cost, to_nats(a.budget, units), mode, compression, limits);
  const std::string mode_name = std::holds_alternative<ExpectedMode>(mode) ? "expected" : "sampled";
  const auto ledger_json = io::ledger_to_json(result, mode_name, units);
  if (!a.out.empty()) io::write_file(a.out, ledger_json.dump(2) + "\n");

  const auto checks = check_ledger(result.ledger, result.summary.initial_entropy);
  std::printf("rounds=%zu spent=%.9g of %.9g %s, I=%.9g %s, status=%s\n", result.ledger.rounds_completed,
              convert(result.ledger.budget_spent, units), convert(result.ledger.budget_total, units),
              to_string(units).c_str(), convert(cumulative_information(result.ledger).value, units),
              to_string(units).c_str(), to_string(result.ledger.status).c_str());
  if (result.ledger.budget_spent > 0.0) {
    const double sum_bound = cumulative_information(result.ledger).value + total_stored_entropy(result.ledger);
    std::printf("eta=%.9g cap=%.9g\n", efficiency(result.ledger),
                sum_bound > 0.0 ? cumulative_information(result.ledger).value / sum_bound : 0.0);
  }
  print_checks(checks);
  if (!a.report.empty()) {
    json rep{{"units", to_string(units)}, {"checks", checks_to_json(checks, units)},
             {"passed", all_passed(checks)}};
    io::write_file(a.report, rep.dump(2) + "\n");
  }
  return all_passed(checks) ? 0 : 1;
}

struct BoundsArgs {
  std::string scenario;
  std::optional<double> h0, beta_w, sum_hy;
  double threshold_lo = 0.1;
  double threshold_hi = 10.0;
  std::string units = "nats";
  std::string out;
};

int cmd_bounds(const BoundsArgs& a) {
  const Units units = parse_units(a.units);
  BudgetScenario s;
  if (!a.scenario.empty()) {
    s = io::scenario_from_json(io::parse_json(io::read_file(a.scenario), "scenario"));
  } else {
    if (!a.h0 || !a.beta_w || !a.sum_hy) {
      throw Error(ErrorKind::InvalidConfig, "give --scenario or all of --h0, --beta-w, --sum-hy");
    }
    s.h0 = to_nats(*a.h0, units);
    s.beta_w = to_nats(*a.beta_w, units);
    s.sum_hy = to_nats(*a.sum_hy, units);
  }
  s.validate();
  json out{{"units", to_string(units)}, {"scenario", io::scenario_to_json(s)}};
  const Cap info = unpartitioned_info_cap(s);
  out["unpartitioned_info_cap"] = {{"value", convert(info.value, units)}, {"floored", info.floored}};
  std::printf("unpartitioned info cap: %.9g %s%s\n", convert(info.value, units), to_string(units).c_str(),
              info.floored ? " (floored: vacuous)" : "");
  if (s.beta_w > 0.0) {
    const Cap eta = unpartitioned_eta_cap(s);
    out["unpartitioned_eta_cap"] = {{"value", eta.value}, {"floored", eta.floored}};
    std::printf("unpartitioned eta cap:  %.9g\n", eta.value);
  }
  if (s.subdomains) {
    const Cap fi = federated_info_cap(s);
    out["federated_info_cap"] = {{"value", convert(fi.value, units)}, {"floored", fi.floored}};
    std::printf("federated info cap:     %.9g %s\n", convert(fi.value, units), to_string(units).c_str());
    if (s.beta_w > 0.0) {
      const Cap fe = federated_eta_cap(s);
      out["federated_eta_cap"] = {{"value", fe.value}, {"floored", fe.floored}};
      std::printf("federated eta cap:      %.9g\n", fe.value);
    }
  }
  if (s.h0 > 0.0) {
    const auto r = regime_classify(s.beta_w, s.h0, {a.threshold_lo, a.threshold_hi});
    out["regime"] = {{"regime", to_string(r.regime)}, {"ratio", r.ratio}};
    std::printf("regime: %s (beta_w / h0 = %.9g)\n", to_string(r.regime).c_str(), r.ratio);
  }
  if (!a.out.empty()) io::write_file(a.out, out.dump(2) + "\n");
  return 0;
}

struct PartitionArgs {
  std::string file;
  std::string sum_hy;
  std::string out;
};

std::vector<double> parse_double_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidConfig, std::string(what) + ": bad number '" + item + "'");
    }
  }
  return out;
}

int cmd_partition(const PartitionArgs& a) {
  const auto part = io::partition_from_json(io::parse_json(io::read_file(a.file), "partition"));
  json out{{"units", "nats"}, {"n", part.n()}, {"h_fed", h_fed(part)}, {"total_budget", part.total_budget()}};
  std::printf("N=%zu h_fed=%.9g total_budget=%.9g\n", part.n(), h_fed(part), part.total_budget());
  if (part.conditional_priors()) {
    const double hg = h_gen(part);
    const double gap = partition_entropy_gap(hg, h_fed(part));
    out["h_gen"] = hg;
    out["entropy_gap"] = gap;
    std::printf("h_gen=%.9g I(Theta0;K)=%.9g\n", hg, gap);
    if (!a.sum_hy.empty() && part.total_budget() > 0.0) {
      const auto s = to_scenario(part, parse_double_list(a.sum_hy, "--sum-hy"), hg);
      out["scenario"] = io::scenario_to_json(s);
      out["federated_info_cap"] = federated_info_cap(s).value;
      out["federated_eta_cap"] = federated_eta_cap(s).value;
      std::printf("federated info cap=%.9g eta cap=%.9g\n", federated_info_cap(s).value,
                  federated_eta_cap(s).value);
    }
  }
  if (!a.out.empty()) io::write_file(a.out, out.dump(2) + "\n");
  return 0;
}

struct SweepArgs {
  std::string pair;
  std::string panel;
  std::string regime = "symmetric";
  std::optional<double> alpha_gen, alpha_fed, alpha_spec, cmin, gamma, cspec;
  std::optional<double> omega_min, omega_max, n_min, n_max, cspec_min, cspec_max;
  std::optional<std::size_t> omega_steps, n_steps, cspec_steps;
  bool integer_n = false;
  std::string out;
  std::string svg;
  std::string contours;
};

int cmd_sweep(const SweepArgs& a) {
  toy::Pair pair{};
  toy::ToyParams params;
  std::string label;
  if (!a.panel.empty()) {
    if (a.panel.size() != 1) throw Error(ErrorKind::InvalidConfig, "--panel takes one letter A..F");
    const auto preset = toy::panel_preset(a.panel[0]);
    pair = preset.pair;
    params = preset.params;
    if (!a.pair.empty() && toy::parse_pair(a.pair) != pair) {
      throw Error(ErrorKind::InvalidConfig, "--pair contradicts --panel " + a.panel);
    }
    label = "panel " + a.panel + " (" + preset.regime + ")";
  } else {
    if (a.pair.empty()) throw Error(ErrorKind::InvalidConfig, "give --pair or --panel");
    pair = toy::parse_pair(a.pair);
    if (a.regime == "symmetric") {
      params = toy::ToyParams::symmetric();
    } else if (a.regime == "asymmetric") {
      params = toy::ToyParams::asymmetric();
    } else if (a.regime != "custom") {
      throw Error(ErrorKind::InvalidConfig, "--regime must be symmetric, asymmetric or custom");
    }
    label = a.regime;
  }
  if (a.cmin) params.c_min = *a.cmin;
  if (a.gamma) params.gamma = *a.gamma;
  if (a.alpha_gen) params.alpha_gen = *a.alpha_gen;
  if (a.alpha_fed) params.alpha_fed = *a.alpha_fed;
  if (a.alpha_spec) params.alpha_spec = *a.alpha_spec;
  params.c_spec = a.cspec ? *a.cspec : params.c_min;

  auto axes = toy::SweepAxes::default_for(pair, params);
  if (a.omega_min) axes.omega.min = *a.omega_min;
  if (a.omega_max) axes.omega.max = *a.omega_max;
  if (a.omega_steps) axes.omega.steps = *a.omega_steps;
  const bool n_axis = axes.second_kind == toy::SecondAxisKind::N;
  if (n_axis) {
    if (a.cspec_min || a.cspec_max || a.cspec_steps) {
      throw Error(ErrorKind::InvalidConfig, toy::to_string(pair) + " is swept against N, not c_spec");
    }
    if (a.n_min) axes.second.min = *a.n_min;
    if (a.n_max) axes.second.max = *a.n_max;
    if (a.n_steps) axes.second.steps = *a.n_steps;
    axes.integer_n = a.integer_n;
  } else {
    if (a.n_min || a.n_max || a.n_steps || a.integer_n) {
      throw Error(ErrorKind::InvalidConfig, "spec-gen is swept against c_spec, not N");
    }
    if (a.cspec_min) axes.second.min = *a.cspec_min;
    if (a.cspec_max) axes.second.max = *a.cspec_max;
    if (a.cspec_steps) axes.second.steps = *a.cspec_steps;
  }

  const auto grid = toy::sweep(pair, params, axes, default_thread_count());
  emit(a.out, io::grid_to_csv(grid));
  if (!a.svg.empty()) {
    io::write_file(a.svg, io::grid_to_svg(grid, "delta eta " + toy::to_string(pair) + ", " + label));
  }
  if (!a.contours.empty()) {
    io::write_file(a.contours, io::contours_to_json(toy::to_string(pair), grid.contours,
                                                    io::params_to_json(params))
                                       .dump(2) +
                                   "\n");
  }
  std::fprintf(stderr, "%s: %zu x %zu grid, %zu zero-contour component(s)\n", toy::to_string(pair).c_str(),
               grid.nx(), grid.ny(), grid.contours.size());
  return 0;
}

struct ContourArgs {
  std::string in;
  std::string out;
  std::string pair = "unspecified";
};

int cmd_contour(const ContourArgs& a) {
  const auto table = io::grid_from_csv(io::read_file(a.in));
  const auto lines = io::zero_contours(table);
  emit(a.out, io::contours_to_json(a.pair, lines, json::object()).dump(2) + "\n");
  std::fprintf(stderr, "%zu contour component(s)\n", lines.size());
  return 0;
}

struct VerifyArgs {
  std::string scope = "all";
  std::uint64_t seed = 42;
  std::string out;
  std::string ledger;
  std::string scenario;
};

int cmd_verify(const VerifyArgs& a) {
  if (!a.ledger.empty()) {
    const auto result = io::ledger_from_json(io::parse_json(io::read_file(a.ledger), "ledger"));
    auto checks = check_ledger(result.ledger, result.summary.initial_entropy);
    if (!a.scenario.empty()) {
      const auto s = io::scenario_from_json(io::parse_json(io::read_file(a.scenario), "scenario"));
      const double info = cumulative_information(result.ledger).value;
      const double cap = s.subdomains ? federated_info_cap(s).value : unpartitioned_info_cap(s).value;
      checks.push_back({"scenario_info_cap", info, cap, info <= cap + 1e-10, "<="});
    }
    print_checks(checks);
    if (!a.out.empty()) {
      io::write_file(a.out, json{{"checks", checks_to_json(checks, Units::Nats)},
                                 {"passed", all_passed(checks)}}
                                    .dump(2) +
                                "\n");
    }
    return all_passed(checks) ? 0 : 1;
  }

  const auto report = verify::run(verify::parse_scope(a.scope), a.seed);
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"scope", c.scope},
                      {"name", c.name},
                      {"passed", c.passed},
                      {"cases", c.cases},
                      {"max_error", c.max_error},
                      {"detail", c.detail}});
    std::printf("[%s] %s/%s cases=%zu max_error=%.3g%s%s\n", c.passed ? "PASS" : "FAIL", c.scope.c_str(),
                c.name.c_str(), c.cases, c.max_error, c.detail.empty() ? "" : " : ", c.detail.c_str());
  }
  const json out{{"scope", a.scope}, {"seed", a.seed}, {"passed", report.passed()}, {"checks", checks}};
  if (!a.out.empty()) io::write_file(a.out, out.dump(2) + "\n");
  if (const auto* f = report.first_failure()) {
    std::fprintf(stderr, "first failure: %s/%s: %s\n", f->scope.c_str(), f->name.c_str(), f->detail.c_str());
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budgeted Bayesian learning: simulation, bounds, strategy sweeps, verification"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "run a budgeted episode and check its ledger against the bounds");
  s->add_option("--env", sim.env, "environment JSON")->required()->check(CLI::ExistingFile);
  s->add_option("--policy", sim.policy, "fixed:u1,u2,... | roundrobin | random | greedy");
  s->add_option("--budget", sim.budget, "total beta-normalized work budget")->required();
  s->add_option("--kappa-meas", sim.kappa_meas, "measurement irreversibility factor (>= 1)");
  s->add_option("--kappa-erase", sim.kappa_erase, "erasure irreversibility factor (>= 1)");
  s->add_option("--delta-f", sim.delta_f, "memory free-energy change per round (>= 0)");
  s->add_option("--mode", sim.mode, "expected | sampled:N");
  s->add_option("--seed", sim.seed, "seed for random policies and sampled mode");
  s->add_option("--compress", sim.compress, "outcome->statistic map, e.g. 0,0,1,1");
  s->add_option("--max-rounds", sim.max_rounds, "round limit");
  s->add_option("--node-cap", sim.node_cap, "expected-mode outcome tree node cap");
  s->add_option("--units", sim.units, "nats | bits (I/O only)");
  s->add_option("--out", sim.out, "ledger JSON output path");
  s->add_option("--report", sim.report, "bound-check report JSON output path");

  BoundsArgs bnd;
  auto* b = app.add_subcommand("bounds", "evaluate information and efficiency caps for a scenario");
  b->add_option("--scenario", bnd.scenario, "scenario JSON")->check(CLI::ExistingFile);
  b->add_option("--h0", bnd.h0, "prior entropy");
  b->add_option("--beta-w", bnd.beta_w, "beta-normalized total work");
  b->add_option("--sum-hy", bnd.sum_hy, "summed outcome entropy");
  b->add_option("--threshold-lo", bnd.threshold_lo, "budget-limited below this beta_w/h0");
  b->add_option("--threshold-hi", bnd.threshold_hi, "prior-limited above this beta_w/h0");
  b->add_option("--units", bnd.units, "nats | bits");
  b->add_option("--out", bnd.out, "JSON output path");

  PartitionArgs prt;
  auto* p = app.add_subcommand("partition", "entropies and caps of a partition JSON");
  p->add_option("--file", prt.file, "partition JSON")->required()->check(CLI::ExistingFile);
  p->add_option("--sum-hy", prt.sum_hy, "per-subdomain summed outcome entropy, comma separated");
  p->add_option("--out", prt.out, "JSON output path");

  SweepArgs sw;
  auto* w = app.add_subcommand("sweep", "delta-eta grid of the toy efficiency model");
  w->add_option("--pair", sw.pair, "spec-gen | fed-gen | fed-spec");
  w->add_option("--panel", sw.panel, "preset A..F");
  w->add_option("--regime", sw.regime, "symmetric | asymmetric | custom");
  w->add_option("--alpha-gen", sw.alpha_gen);
  w->add_option("--alpha-fed", sw.alpha_fed);
  w->add_option("--alpha-spec", sw.alpha_spec);
  w->add_option("--cmin", sw.cmin);
  w->add_option("--gamma", sw.gamma);
  w->add_option("--cspec", sw.cspec, "specialist c (spec-gen uses the axis instead)");
  w->add_option("--omega-min", sw.omega_min);
  w->add_option("--omega-max", sw.omega_max);
  w->add_option("--omega-steps", sw.omega_steps);
  w->add_option("--n-min", sw.n_min);
  w->add_option("--n-max", sw.n_max);
  w->add_option("--n-steps", sw.n_steps);
  w->add_flag("--integer-n", sw.integer_n, "round N nodes to integers");
  w->add_option("--cspec-min", sw.cspec_min);
  w->add_option("--cspec-max", sw.cspec_max);
  w->add_option("--cspec-steps", sw.cspec_steps);
  w->add_option("--out", sw.out, "grid CSV path (stdout if omitted)");
  w->add_option("--svg", sw.svg, "SVG heatmap path");
  w->add_option("--contours", sw.contours, "zero-contour JSON path");

  ContourArgs ct;
  auto* c = app.add_subcommand("contour", "extract delta-eta = 0 contours from a grid CSV");
  c->add_option("--in", ct.in, "grid CSV")->required()->check(CLI::ExistingFile);
  c->add_option("--out", ct.out, "contour JSON path (stdout if omitted)");
  c->add_option("--pair", ct.pair, "pair label recorded in the output");

  VerifyArgs vf;
  auto* v = app.add_subcommand("verify", "run property suites, or check a ledger file");
  v->add_option("scope", vf.scope, "info | cycle | bounds | toy | all");
  v->add_option("--seed", vf.seed, "suite seed");
  v->add_option("--out", vf.out, "JSON report path");
  v->add_option("--ledger", vf.ledger, "ledger JSON to check")->check(CLI::ExistingFile);
  v->add_option("--scenario", vf.scenario, "scenario JSON whose cap the ledger must respect")
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*s) return cmd_simulate(sim);
    if (*b) return cmd_bounds(bnd);
    if (*p) return cmd_partition(prt);
    if (*w) return cmd_sweep(sw);
    if (*c) return cmd_contour(ct);
    if (*v) return cmd_verify(vf);
  } catch (const Error& e) {
    std::cerr << json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 3;
  }
  return 0;
}
