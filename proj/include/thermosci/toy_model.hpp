#pragma once

// Toy efficiency law eta = min{c / omega, 1 / (1 + alpha)}, the federated
// compression law c_fed(N) = c_min + (1 - c_min) / N^gamma, and pairwise
// efficiency-difference sweeps over (omega, c_spec) and (omega, N).
//
// Units follow the screening convention beta = 1, H_gen = 1, so the
// normalized budget omega equals W_tot.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thermosci/contour.hpp"
#include "thermosci/error.hpp"
#include "thermosci/parallel.hpp"

namespace thermosci::toy {

struct ToyParams {
  double c_min = 0.05;
  double gamma = 1.0;
  double alpha_gen = 0.3;
  double alpha_fed = 0.3;
  double alpha_spec = 0.3;
  double c_spec = 0.05;

  void validate() const {
    if (!(c_min > 0.0 && c_min <= 1.0)) {
      throw Error(ErrorKind::InvalidToyParams, "c_min must lie in (0, 1]");
    }
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
      throw Error(ErrorKind::InvalidToyParams, "gamma must be > 0");
    }
    for (double a : {alpha_gen, alpha_fed, alpha_spec}) {
      if (!(a >= 0.0) || !std::isfinite(a)) {
        throw Error(ErrorKind::InvalidToyParams, "alphas must be >= 0");
      }
    }
    if (!(c_spec >= c_min && c_spec <= 1.0)) {
      throw Error(ErrorKind::InvalidToyParams, "c_spec must lie in [c_min, 1]");
    }
  }

  /// alpha_gen = alpha_fed = alpha_spec = 0.3.
  static ToyParams symmetric() { return ToyParams{}; }

  /// (alpha_gen, alpha_fed, alpha_spec) = (0.8, 0.4, 0.2).
  static ToyParams asymmetric() {
    ToyParams p;
    p.alpha_gen = 0.8;
    p.alpha_fed = 0.4;
    p.alpha_spec = 0.2;
    return p;
  }
};

inline double eta_toy(double omega, double c, double alpha) {
  if (!(omega > 0.0)) throw Error(ErrorKind::NonPositiveOmega, "omega must be > 0");
  if (!(c > 0.0 && c <= 1.0)) throw Error(ErrorKind::InvalidToyParams, "c must lie in (0, 1]");
  if (!(alpha >= 0.0)) throw Error(ErrorKind::InvalidToyParams, "alpha must be >= 0");
  return std::min(c / omega, 1.0 / (1.0 + alpha));
}

inline double c_fed(double n, double c_min, double gamma) {
  if (!(n >= 1.0)) throw Error(ErrorKind::NBelowOne, "partition count must be >= 1");
  return c_min + (1.0 - c_min) / std::pow(n, gamma);
}

/// The omega where c / omega meets 1 / (1 + alpha).
inline double crossover_omega(double c, double alpha) { return c * (1.0 + alpha); }

enum class Pair { SpecGen, FedGen, FedSpec };

inline std::string to_string(Pair p) {
  switch (p) {
    case Pair::SpecGen: return "spec-gen";
    case Pair::FedGen: return "fed-gen";
    case Pair::FedSpec: return "fed-spec";
  }
  return "unknown";
}

inline Pair parse_pair(const std::string& s) {
  if (s == "spec-gen") return Pair::SpecGen;
  if (s == "fed-gen") return Pair::FedGen;
  if (s == "fed-spec") return Pair::FedSpec;
  throw Error(ErrorKind::InvalidConfig, "unknown strategy pair '" + s + "'");
}

enum class SecondAxisKind { CSpec, N };

/// The second axis each pair is swept against.
inline SecondAxisKind axis_kind_for(Pair p) {
  return p == Pair::SpecGen ? SecondAxisKind::CSpec : SecondAxisKind::N;
}

struct PairEtas {
  double first = 0.0;
  double second = 0.0;
  double delta() const { return first - second; }
};

/// Both efficiencies of a pair. `axis2` is c_spec for SpecGen and N for the
/// federated pairs; FedSpec compares against the maximally focused specialist
/// (c_spec = c_min).
inline PairEtas pair_etas(Pair pair, double omega, const ToyParams& params, double axis2) {
  switch (pair) {
    case Pair::SpecGen:
      return {eta_toy(omega, axis2, params.alpha_spec), eta_toy(omega, 1.0, params.alpha_gen)};
    case Pair::FedGen:
      return {eta_toy(omega, c_fed(axis2, params.c_min, params.gamma), params.alpha_fed),
              eta_toy(omega, 1.0, params.alpha_gen)};
    case Pair::FedSpec:
      return {eta_toy(omega, c_fed(axis2, params.c_min, params.gamma), params.alpha_fed),
              eta_toy(omega, params.c_min, params.alpha_spec)};
  }
  throw std::logic_error("unhandled pair");
}

inline double delta_eta(Pair pair, double omega, const ToyParams& params, double axis2) {
  return pair_etas(pair, omega, params, axis2).delta();
}

enum class Scale { Log, Linear };

struct AxisSpec {
  double min = 0.0;
  double max = 1.0;
  std::size_t steps = 2;
  Scale scale = Scale::Linear;

  void validate(const char* name) const {
    if (!(min < max) || !std::isfinite(min) || !std::isfinite(max)) {
      throw Error(ErrorKind::InvalidAxes, std::string(name) + ": need min < max");
    }
    if (steps < 2) throw Error(ErrorKind::InvalidAxes, std::string(name) + ": need >= 2 steps");
    if (scale == Scale::Log && !(min > 0.0)) {
      throw Error(ErrorKind::InvalidAxes, std::string(name) + ": log scale needs positive bounds");
    }
  }

  /// Node coordinates; the endpoints are exactly min and max.
  std::vector<double> nodes() const {
    std::vector<double> v(steps);
    const double denom = static_cast<double>(steps - 1);
    for (std::size_t k = 0; k < steps; ++k) {
      const double f = static_cast<double>(k) / denom;
      v[k] = scale == Scale::Log
                 ? std::exp(std::log(min) + f * (std::log(max) - std::log(min)))
                 : min + f * (max - min);
    }
    v.front() = min;
    v.back() = max;
    return v;
  }
};

struct SweepAxes {
  AxisSpec omega{1e-2, 1e2, 200, Scale::Log};
  SecondAxisKind second_kind = SecondAxisKind::N;
  AxisSpec second{1.0, 20.0, 100, Scale::Linear};
  /// Round N nodes to integers (strategy-construction view); off for plots.
  bool integer_n = false;

  static SweepAxes default_for(Pair pair, const ToyParams& params) {
    SweepAxes a;
    a.second_kind = axis_kind_for(pair);
    if (a.second_kind == SecondAxisKind::CSpec) a.second = AxisSpec{params.c_min, 1.0, 100, Scale::Linear};
    return a;
  }

  void validate(Pair pair, const ToyParams& params) const {
    omega.validate("omega axis");
    second.validate("second axis");
    if (!(omega.min > 0.0)) throw Error(ErrorKind::InvalidAxes, "omega axis must be positive");
    if (second_kind != axis_kind_for(pair)) {
      throw Error(ErrorKind::InvalidAxes, to_string(pair) + " is swept against " +
                                              (axis_kind_for(pair) == SecondAxisKind::CSpec
                                                   ? "c_spec"
                                                   : "N"));
    }
    if (second_kind == SecondAxisKind::CSpec &&
        (second.min < params.c_min - 1e-15 || second.max > 1.0 + 1e-15)) {
      throw Error(ErrorKind::InvalidAxes, "c_spec axis must lie within [c_min, 1]");
    }
    if (second_kind == SecondAxisKind::N && second.min < 1.0) {
      throw Error(ErrorKind::InvalidAxes, "N axis must start at >= 1");
    }
  }

  std::vector<double> second_nodes() const {
    auto v = second.nodes();
    if (integer_n && second_kind == SecondAxisKind::N) {
      for (double& x : v) x = std::round(x);
    }
    return v;
  }
};

struct SweepGrid {
  Pair pair = Pair::FedGen;
  ToyParams params;
  SweepAxes axes;
  std::vector<double> omega;   // nx nodes
  std::vector<double> axis2;   // ny nodes
  // Row-major, omega varying fastest: index = j * nx + i.
  std::vector<double> eta_first;
  std::vector<double> eta_second;
  std::vector<double> values;  // delta eta
  std::vector<Polyline> contours;
  /// Budget-limited / prior-limited divide drawn at omega = 1.
  double regime_marker_omega = 1.0;

  std::size_t nx() const noexcept { return omega.size(); }
  std::size_t ny() const noexcept { return axis2.size(); }
  double at(std::size_t i, std::size_t j) const { return values[j * nx() + i]; }
};

inline std::vector<Polyline> zero_contours(const SweepGrid& grid) {
  const AxisNodes x{grid.omega, grid.axes.omega.scale == Scale::Log};
  const AxisNodes y{grid.axis2, grid.axes.second.scale == Scale::Log};
  return marching_squares(grid.values, x, y, 0.0);
}

/// Evaluates delta eta at every node (optionally in parallel; the result does
/// not depend on `threads`) and attaches the zero contours.
inline SweepGrid sweep(Pair pair, const ToyParams& params, const SweepAxes& axes,
                       unsigned threads = 1) {
  params.validate();
  axes.validate(pair, params);
  SweepGrid g;
  g.pair = pair;
  g.params = params;
  g.axes = axes;
  g.omega = axes.omega.nodes();
  g.axis2 = axes.second_nodes();
  const std::size_t nx = g.nx();
  const std::size_t ny = g.ny();
  g.eta_first.assign(nx * ny, 0.0);
  g.eta_second.assign(nx * ny, 0.0);
  g.values.assign(nx * ny, 0.0);
  parallel_for(ny, threads, [&](std::size_t j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const auto e = pair_etas(pair, g.omega[i], params, g.axis2[j]);
      const std::size_t k = j * nx + i;
      g.eta_first[k] = e.first;
      g.eta_second[k] = e.second;
      g.values[k] = e.delta();
    }
  });
  for (double v : g.values) {
    if (!std::isfinite(v) || std::abs(v) > 1.0) {
      throw std::logic_error("delta eta outside [-1, 1]");
    }
  }
  g.contours = zero_contours(g);
  return g;
}

struct PanelPreset {
  char panel = 'A';
  Pair pair = Pair::SpecGen;
  ToyParams params;
  SweepAxes axes;
  std::string regime;  // "symmetric" or "asymmetric"
};

/// Panels A/C/E are the symmetric regime, B/D/F the asymmetric one; rows are
/// spec-gen, fed-gen, fed-spec.
inline PanelPreset panel_preset(char panel) {
  PanelPreset p;
  p.panel = panel;
  switch (panel) {
    case 'A': case 'B': p.pair = Pair::SpecGen; break;
    case 'C': case 'D': p.pair = Pair::FedGen; break;
    case 'E': case 'F': p.pair = Pair::FedSpec; break;
    default: throw Error(ErrorKind::InvalidConfig, std::string("unknown panel '") + panel + "'");
  }
  const bool symmetric = panel == 'A' || panel == 'C' || panel == 'E';
  p.params = symmetric ? ToyParams::symmetric() : ToyParams::asymmetric();
  p.regime = symmetric ? "symmetric" : "asymmetric";
  p.axes = SweepAxes::default_for(p.pair, p.params);
  return p;
}

}  // namespace thermosci::toy
