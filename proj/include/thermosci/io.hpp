#pragma once

// File formats: environment / scenario / partition / ledger / contour JSON,
// the sweep-grid CSV, and a minimal SVG heatmap.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "thermosci/bounds.hpp"
#include "thermosci/cycle_sim.hpp"
#include "thermosci/error.hpp"
#include "thermosci/strategies.hpp"
#include "thermosci/toy_model.hpp"

namespace thermosci::io {

using nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MalformedInput, "cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::MalformedInput, "cannot write '" + path + "'");
  out << contents;
}

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedInput, what + ": " + e.what());
  }
}

namespace detail {

template <typename T>
T get_field(const json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::MalformedInput, what + ": missing field '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedInput, what + ": field '" + key + "' has the wrong type");
  }
}

inline bool has_value(const json& j, const char* key) {
  return j.contains(key) && !j.at(key).is_null();
}

}  // namespace detail

// ---------------------------------------------------------------- environment

/// {"prior": [...], "interventions": k, "likelihood": [[[p(y|theta,u)]]]}
/// with the likelihood indexed [u][theta][y].
inline EnvironmentModel environment_from_json(const json& j) {
  const std::string what = "environment";
  auto prior = detail::get_field<std::vector<double>>(j, "prior", what);
  auto k = detail::get_field<std::size_t>(j, "interventions", what);
  auto table = detail::get_field<std::vector<std::vector<std::vector<double>>>>(j, "likelihood", what);
  return EnvironmentModel(DiscreteDistribution(std::move(prior)), LikelihoodModel(table), k);
}

inline json environment_to_json(const EnvironmentModel& env) {
  json lik = json::array();
  const auto& l = env.likelihood();
  for (std::size_t u = 0; u < l.interventions(); ++u) {
    json per_u = json::array();
    for (std::size_t th = 0; th < l.states(); ++th) {
      const auto row = l.slice(u, th);
      per_u.push_back(std::vector<double>(row.begin(), row.end()));
    }
    lik.push_back(per_u);
  }
  const auto p = env.prior().probs();
  return json{{"prior", std::vector<double>(p.begin(), p.end())},
              {"interventions", env.intervention_count()},
              {"likelihood", lik}};
}

inline EnvironmentModel load_environment(const std::string& path) {
  return environment_from_json(parse_json(read_file(path), "environment file '" + path + "'"));
}

// --------------------------------------------------------------------- ledger

inline json ledger_to_json(const EpisodeResult& result, const std::string& mode,
                           Units units = Units::Nats) {
  const auto& ledger = result.ledger;
  auto u = [&](double nats) { return convert(nats, units); };
  json records = json::array();
  for (const auto& r : ledger.records) {
    records.push_back({{"round_index", r.round_index},
                       {"intervention", r.intervention},
                       {"info_gain", u(r.info_gain)},
                       {"outcome_entropy", u(r.outcome_entropy)},
                       {"stored_entropy", u(r.stored_entropy)},
                       {"work_meas", u(r.work_meas)},
                       {"work_erase", u(r.work_erase)},
                       {"belief_entropy_before", u(r.belief_entropy_before)},
                       {"belief_entropy_after", u(r.belief_entropy_after)}});
  }
  const double info = cumulative_information(ledger).value;
  json j{{"units", to_string(units)},
         {"mode", mode},
         {"status", to_string(ledger.status)},
         {"stop_reason", to_string(ledger.stop_reason)},
         {"budget_total", u(ledger.budget_total)},
         {"budget_spent", u(ledger.budget_spent)},
         {"rounds_completed", ledger.rounds_completed},
         {"cumulative_information", u(info)},
         {"total_outcome_entropy", u(total_outcome_entropy(ledger))},
         {"total_stored_entropy", u(total_stored_entropy(ledger))},
         {"initial_entropy", u(result.summary.initial_entropy)},
         {"final_expected_entropy", u(result.summary.final_expected_entropy)},
         {"mean_final_belief", result.summary.mean_belief},
         {"branches", result.summary.branches},
         {"trials", result.summary.trials},
         {"cumulative_info_std_error", u(result.summary.cumulative_info_std_error)},
         {"records", records}};
  j["efficiency"] = ledger.budget_spent > 0.0 ? json(info / ledger.budget_spent) : json(nullptr);
  return j;
}

/// Reads a ledger back into nats, whatever units it was written in.
inline EpisodeResult ledger_from_json(const json& j) {
  const std::string what = "ledger";
  const auto units_name = detail::get_field<std::string>(j, "units", what);
  if (units_name != "nats" && units_name != "bits") {
    throw Error(ErrorKind::MalformedInput, "ledger: unknown units '" + units_name + "'");
  }
  const Units units = units_name == "nats" ? Units::Nats : Units::Bits;
  auto n = [&](const json& obj, const char* key) {
    return to_nats(detail::get_field<double>(obj, key, what), units);
  };
  EpisodeResult result;
  auto& ledger = result.ledger;
  ledger.budget_total = n(j, "budget_total");
  ledger.budget_spent = n(j, "budget_spent");
  ledger.rounds_completed = detail::get_field<std::size_t>(j, "rounds_completed", what);
  const auto status = detail::get_field<std::string>(j, "status", what);
  ledger.status = status == "completed" ? EpisodeStatus::Completed
                                        : EpisodeStatus::BudgetExhaustedImmediately;
  if (detail::has_value(j, "stop_reason")) {
    const auto reason = detail::get_field<std::string>(j, "stop_reason", what);
    for (auto r : {StopReason::BudgetExhausted, StopReason::MaxRounds, StopReason::PolicyExhausted}) {
      if (to_string(r) == reason) ledger.stop_reason = r;
    }
  }
  if (!j.contains("records") || !j.at("records").is_array()) {
    throw Error(ErrorKind::MalformedInput, "ledger: missing records array");
  }
  for (const auto& rj : j.at("records")) {
    RoundRecord r;
    r.round_index = detail::get_field<std::size_t>(rj, "round_index", what);
    r.intervention = detail::get_field<long>(rj, "intervention", what);
    r.info_gain = n(rj, "info_gain");
    r.outcome_entropy = n(rj, "outcome_entropy");
    r.stored_entropy = n(rj, "stored_entropy");
    r.work_meas = n(rj, "work_meas");
    r.work_erase = n(rj, "work_erase");
    r.belief_entropy_before = n(rj, "belief_entropy_before");
    r.belief_entropy_after = n(rj, "belief_entropy_after");
    ledger.records.push_back(r);
  }
  if (ledger.records.size() != ledger.rounds_completed) {
    throw Error(ErrorKind::MalformedInput, "ledger: rounds_completed disagrees with records");
  }
  result.summary.initial_entropy = n(j, "initial_entropy");
  result.summary.final_expected_entropy = n(j, "final_expected_entropy");
  return result;
}

// ------------------------------------------------------------------- scenario

/// {"h0":..,"beta_w":..,"sum_hy":..,"subdomains":[{"p","h","beta_w","sum_hy"}] | null}
inline BudgetScenario scenario_from_json(const json& j) {
  const std::string what = "scenario";
  BudgetScenario s;
  s.h0 = detail::get_field<double>(j, "h0", what);
  s.beta_w = detail::get_field<double>(j, "beta_w", what);
  s.sum_hy = detail::get_field<double>(j, "sum_hy", what);
  if (detail::has_value(j, "subdomains")) {
    std::vector<SubdomainBudget> subs;
    for (const auto& sj : j.at("subdomains")) {
      subs.push_back({detail::get_field<double>(sj, "p", what), detail::get_field<double>(sj, "h", what),
                      detail::get_field<double>(sj, "beta_w", what),
                      detail::get_field<double>(sj, "sum_hy", what)});
    }
    s.subdomains = std::move(subs);
  }
  s.validate();
  return s;
}

inline json scenario_to_json(const BudgetScenario& s) {
  json j{{"h0", s.h0}, {"beta_w", s.beta_w}, {"sum_hy", s.sum_hy}, {"subdomains", nullptr}};
  if (s.subdomains) {
    json subs = json::array();
    for (const auto& d : *s.subdomains) {
      subs.push_back({{"p", d.p}, {"h", d.h}, {"beta_w", d.beta_w}, {"sum_hy", d.sum_hy}});
    }
    j["subdomains"] = subs;
  }
  return j;
}

// ------------------------------------------------------------------ partition

/// {"masses": [..], "conditional_priors": [[..]] | null, "entropies": [..] | null,
///  "budgets": [..]}
inline PartitionSpec partition_from_json(const json& j) {
  const std::string what = "partition";
  auto masses = detail::get_field<std::vector<double>>(j, "masses", what);
  std::optional<std::vector<DiscreteDistribution>> priors;
  if (detail::has_value(j, "conditional_priors")) {
    priors.emplace();
    for (auto& p : detail::get_field<std::vector<std::vector<double>>>(j, "conditional_priors", what)) {
      priors->push_back(DiscreteDistribution(std::move(p)));
    }
  }
  std::optional<std::vector<double>> entropies;
  if (detail::has_value(j, "entropies")) {
    entropies = detail::get_field<std::vector<double>>(j, "entropies", what);
  }
  auto budgets = detail::get_field<std::vector<double>>(j, "budgets", what);
  std::optional<double> declared;
  if (detail::has_value(j, "budget")) declared = detail::get_field<double>(j, "budget", what);
  return PartitionSpec(DiscreteDistribution(std::move(masses)), std::move(priors),
                       std::move(entropies), std::move(budgets), declared);
}

inline json partition_to_json(const PartitionSpec& part) {
  const auto m = part.masses().probs();
  json j{{"masses", std::vector<double>(m.begin(), m.end())},
         {"conditional_priors", nullptr},
         {"entropies", part.entropies()},
         {"budgets", part.budgets()}};
  if (part.conditional_priors()) {
    json priors = json::array();
    for (const auto& p : *part.conditional_priors()) {
      priors.push_back(std::vector<double>(p.probs().begin(), p.probs().end()));
    }
    j["conditional_priors"] = priors;
  }
  return j;
}

// ------------------------------------------------------------------- grid CSV

inline constexpr const char* kGridCsvHeader = "omega,axis2,eta_first,eta_second,delta_eta";

inline std::string format_g9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string grid_to_csv(const toy::SweepGrid& g) {
  std::string out = kGridCsvHeader;
  out += '\n';
  for (std::size_t j = 0; j < g.ny(); ++j) {
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const std::size_t k = j * g.nx() + i;
      out += format_g9(g.omega[i]) + ',' + format_g9(g.axis2[j]) + ',' + format_g9(g.eta_first[k]) +
             ',' + format_g9(g.eta_second[k]) + ',' + format_g9(g.values[k]) + '\n';
    }
  }
  return out;
}

/// Grid reconstructed from CSV. Log spacing of an axis is inferred from a
/// constant node ratio.
struct GridTable {
  std::vector<double> omega;
  std::vector<double> axis2;
  std::vector<double> eta_first;
  std::vector<double> eta_second;
  std::vector<double> values;
  bool omega_log = false;
  bool axis2_log = false;

  std::size_t nx() const noexcept { return omega.size(); }
  std::size_t ny() const noexcept { return axis2.size(); }
};

namespace detail {

inline bool looks_geometric(const std::vector<double>& v) {
  if (v.size() < 3) return false;
  for (double x : v) {
    if (!(x > 0.0)) return false;
  }
  const double r0 = std::log(v[1] / v[0]);
  const double d0 = v[1] - v[0];
  bool geometric = true;
  bool arithmetic = true;
  for (std::size_t k = 2; k < v.size(); ++k) {
    if (std::abs(std::log(v[k] / v[k - 1]) - r0) > 1e-6 * std::abs(r0)) geometric = false;
    if (std::abs((v[k] - v[k - 1]) - d0) > 1e-6 * std::abs(d0)) arithmetic = false;
  }
  return geometric && !arithmetic;
}

}  // namespace detail

inline GridTable grid_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::MalformedInput, "grid CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kGridCsvHeader) {
    throw Error(ErrorKind::MalformedInput, "grid CSV header must be '" + std::string(kGridCsvHeader) + "'");
  }
  struct Row {
    double c[5];
  };
  std::vector<Row> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Row r{};
    std::istringstream ls(line);
    std::string cell;
    int n = 0;
    while (std::getline(ls, cell, ',')) {
      if (n >= 5) break;
      try {
        std::size_t used = 0;
        r.c[n] = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw Error(ErrorKind::MalformedInput, "grid CSV line " + std::to_string(line_no) +
                                                   ": bad number '" + cell + "'");
      }
      ++n;
    }
    if (n != 5 || ls.rdbuf()->in_avail() > 0) {
      throw Error(ErrorKind::MalformedInput,
                  "grid CSV line " + std::to_string(line_no) + ": expected 5 columns");
    }
    rows.push_back(r);
  }
  if (rows.empty()) throw Error(ErrorKind::MalformedInput, "grid CSV has no data rows");

  GridTable g;
  const double first_axis2 = rows.front().c[1];
  for (const auto& r : rows) {
    if (r.c[1] != first_axis2) break;
    g.omega.push_back(r.c[0]);
  }
  const std::size_t nx = g.omega.size();
  if (rows.size() % nx != 0) throw Error(ErrorKind::MalformedInput, "grid CSV is not rectangular");
  const std::size_t ny = rows.size() / nx;
  for (std::size_t j = 0; j < ny; ++j) {
    g.axis2.push_back(rows[j * nx].c[1]);
    for (std::size_t i = 0; i < nx; ++i) {
      const auto& r = rows[j * nx + i];
      if (r.c[0] != g.omega[i] || r.c[1] != g.axis2[j]) {
        throw Error(ErrorKind::MalformedInput, "grid CSV rows are not in omega-fastest order");
      }
      g.eta_first.push_back(r.c[2]);
      g.eta_second.push_back(r.c[3]);
      g.values.push_back(r.c[4]);
    }
  }
  g.omega_log = detail::looks_geometric(g.omega);
  g.axis2_log = detail::looks_geometric(g.axis2);
  return g;
}

inline std::vector<Polyline> zero_contours(const GridTable& g) {
  return marching_squares(g.values, AxisNodes{g.omega, g.omega_log}, AxisNodes{g.axis2, g.axis2_log});
}

// ------------------------------------------------------------- contours JSON

inline json params_to_json(const toy::ToyParams& p) {
  return json{{"c_min", p.c_min},         {"gamma", p.gamma},         {"alpha_gen", p.alpha_gen},
              {"alpha_fed", p.alpha_fed}, {"alpha_spec", p.alpha_spec}, {"c_spec", p.c_spec}};
}

inline json contours_to_json(const std::string& pair, const std::vector<Polyline>& lines,
                             const json& params) {
  json polylines = json::array();
  for (const auto& line : lines) {
    json pts = json::array();
    for (const auto& p : line) pts.push_back({p.x, p.y});
    polylines.push_back(pts);
  }
  return json{{"pair", pair}, {"polylines", polylines}, {"params", params}};
}

inline std::vector<Polyline> contours_from_json(const json& j) {
  if (!j.contains("polylines") || !j.at("polylines").is_array()) {
    throw Error(ErrorKind::MalformedInput, "contours: missing polylines array");
  }
  std::vector<Polyline> out;
  for (const auto& lj : j.at("polylines")) {
    Polyline line;
    for (const auto& pj : lj) {
      if (!pj.is_array() || pj.size() != 2) {
        throw Error(ErrorKind::MalformedInput, "contours: points must be [omega, axis2]");
      }
      line.push_back({pj.at(0).get<double>(), pj.at(1).get<double>()});
    }
    out.push_back(std::move(line));
  }
  return out;
}

// ------------------------------------------------------------------------ SVG

namespace detail {

inline std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Blue (negative) - white (zero) - red (positive).
inline std::string diverging_color(double v, double scale) {
  const double t = scale > 0.0 ? std::clamp(v / scale, -1.0, 1.0) : 0.0;
  int r = 255, g = 255, b = 255;
  if (t > 0.0) {
    g = b = static_cast<int>(std::lround(255.0 * (1.0 - t)));
  } else if (t < 0.0) {
    r = g = static_cast<int>(std::lround(255.0 * (1.0 + t)));
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace detail

/// Heatmap of delta eta with the zero contours overdrawn in black and a
/// dashed vertical rule at omega = 1.
inline std::string grid_to_svg(const toy::SweepGrid& g, const std::string& title) {
  const double left = 60, top = 30, width = 600, height = 400;
  const std::size_t nx = g.nx(), ny = g.ny();
  const bool xlog = g.axes.omega.scale == toy::Scale::Log;
  auto xpix = [&](double omega) {
    const double a = xlog ? std::log(g.omega.front()) : g.omega.front();
    const double b = xlog ? std::log(g.omega.back()) : g.omega.back();
    const double v = xlog ? std::log(omega) : omega;
    return left + width * (v - a) / (b - a);
  };
  auto ypix = [&](double y) {
    return top + height * (1.0 - (y - g.axis2.front()) / (g.axis2.back() - g.axis2.front()));
  };
  double scale = 0.0;
  for (double v : g.values) scale = std::max(scale, std::abs(v));

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fixed2(left + width + 20) +
       "\" height=\"" + detail::fixed2(top + height + 50) + "\">\n";
  s += "<text x=\"" + detail::fixed2(left) + "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" +
       title + "</text>\n";
  // Cells span the midpoints between neighboring nodes.
  auto edge = [](const std::vector<double>& v, std::size_t k, auto&& to_pix, bool low) {
    if (low) return k == 0 ? to_pix(v.front()) : 0.5 * (to_pix(v[k - 1]) + to_pix(v[k]));
    return k + 1 == v.size() ? to_pix(v.back()) : 0.5 * (to_pix(v[k]) + to_pix(v[k + 1]));
  };
  for (std::size_t j = 0; j < ny; ++j) {
    const double y0 = edge(g.axis2, j, ypix, false);
    const double y1 = edge(g.axis2, j, ypix, true);
    for (std::size_t i = 0; i < nx; ++i) {
      const double x0 = edge(g.omega, i, xpix, true);
      const double x1 = edge(g.omega, i, xpix, false);
      s += "<rect x=\"" + detail::fixed2(x0) + "\" y=\"" + detail::fixed2(y0) + "\" width=\"" +
           detail::fixed2(x1 - x0 + 0.01) + "\" height=\"" + detail::fixed2(y1 - y0 + 0.01) +
           "\" fill=\"" + detail::diverging_color(g.at(i, j), scale) + "\"/>\n";
    }
  }
  for (const auto& line : g.contours) {
    s += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : line) s += detail::fixed2(xpix(p.x)) + "," + detail::fixed2(ypix(p.y)) + " ";
    s += "\"/>\n";
  }
  if (g.regime_marker_omega >= g.omega.front() && g.regime_marker_omega <= g.omega.back()) {
    const auto x = detail::fixed2(xpix(g.regime_marker_omega));
    s += "<line x1=\"" + x + "\" y1=\"" + detail::fixed2(top) + "\" x2=\"" + x + "\" y2=\"" +
         detail::fixed2(top + height) +
         "\" stroke=\"white\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
  }
  s += "<rect x=\"" + detail::fixed2(left) + "\" y=\"" + detail::fixed2(top) + "\" width=\"" +
       detail::fixed2(width) + "\" height=\"" + detail::fixed2(height) +
       "\" fill=\"none\" stroke=\"black\"/>\n";
  const std::string ylabel = g.axes.second_kind == toy::SecondAxisKind::N ? "N" : "c_spec";
  s += "<text x=\"" + detail::fixed2(left + width / 2) + "\" y=\"" + detail::fixed2(top + height + 35) +
       "\" font-family=\"sans-serif\" font-size=\"12\">omega (" +
       (xlog ? std::string("log, ") : std::string()) + detail::fixed2(g.omega.front()) + " .. " +
       detail::fixed2(g.omega.back()) + ")</text>\n";
  s += "<text x=\"5\" y=\"" + detail::fixed2(top + height / 2) +
       "\" font-family=\"sans-serif\" font-size=\"12\">" + ylabel + "</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace thermosci::io
