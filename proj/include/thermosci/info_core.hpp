#pragma once

// Exact discrete information-theory primitives. All quantities are in nats;
// bits exist only as a display unit (see InfoQuantity).

#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "thermosci/error.hpp"

namespace thermosci {

inline constexpr double kLn2 = std::numbers::ln2;

/// Probabilities below this are treated as exactly zero inside log sums.
inline constexpr double kProbabilityFloor = 1e-15;

/// Inputs whose mass is within this distance of 1 are renormalized on
/// construction; anything further off is rejected.
inline constexpr double kNormalizationSlack = 1e-9;

/// Entropies and informations above -kInfoClampTolerance are clamped to 0.
inline constexpr double kInfoClampTolerance = 1e-12;

enum class Units { Nats, Bits };

inline std::string to_string(Units u) { return u == Units::Nats ? "nats" : "bits"; }

inline double convert(double nats, Units to) { return to == Units::Nats ? nats : nats / kLn2; }

inline double to_nats(double value, Units from) { return from == Units::Nats ? value : value * kLn2; }

struct InfoQuantity {
  double value = 0.0;
  Units units = Units::Nats;

  /// Builds a nonnegative information quantity from a value in nats. Round-off
  /// negatives are clamped; genuinely negative input is a logic error.
  static InfoQuantity nonnegative(double nats) {
    if (nats < 0.0) {
      if (nats < -kInfoClampTolerance) {
        throw Error(ErrorKind::InvalidDistribution,
                    "information quantity is negative beyond tolerance: " + std::to_string(nats));
      }
      nats = 0.0;
    }
    return InfoQuantity{nats, Units::Nats};
  }

  double nats() const { return units == Units::Nats ? value : value * kLn2; }
  double bits() const { return units == Units::Bits ? value : value / kLn2; }
  InfoQuantity in(Units u) const { return InfoQuantity{u == Units::Nats ? nats() : bits(), u}; }
};

namespace detail {

inline double xlogx(double p) { return p < kProbabilityFloor ? 0.0 : p * std::log(p); }

inline double entropy_nats(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) h -= xlogx(p);
  return h < 0.0 ? 0.0 : h;
}

// Validates a nonnegative vector and renormalizes it to unit mass.
inline void normalize_in_place(std::vector<double>& probs, ErrorKind on_error, const char* what) {
  if (probs.empty()) throw Error(on_error, std::string(what) + " has empty support");
  double total = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) {
      throw Error(on_error, std::string(what) + " has a negative or non-finite entry");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kNormalizationSlack) {
    throw Error(on_error, std::string(what) + " sums to " + std::to_string(total) + ", not 1");
  }
  for (double& p : probs) p /= total;
}

}  // namespace detail

/// Finite probability vector. Immutable after construction; the stored mass
/// is within 1e-12 of one.
class DiscreteDistribution {
 public:
  explicit DiscreteDistribution(std::vector<double> probs,
                                std::optional<std::vector<std::string>> labels = std::nullopt)
      : probs_(std::move(probs)), labels_(std::move(labels)) {
    detail::normalize_in_place(probs_, ErrorKind::InvalidDistribution, "distribution");
    if (labels_ && labels_->size() != probs_.size()) {
      throw Error(ErrorKind::InvalidDistribution, "label count does not match support size");
    }
  }

  static DiscreteDistribution uniform(std::size_t n) {
    if (n == 0) throw Error(ErrorKind::InvalidDistribution, "uniform over empty support");
    return DiscreteDistribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  static DiscreteDistribution point_mass(std::size_t n, std::size_t at) {
    if (at >= n) throw Error(ErrorKind::IndexOutOfRange, "point mass index outside support");
    std::vector<double> p(n, 0.0);
    p[at] = 1.0;
    return DiscreteDistribution(std::move(p));
  }

  /// Normalizes arbitrary nonnegative weights (which need not sum to one).
  static DiscreteDistribution from_weights(std::vector<double> weights) {
    double total = 0.0;
    for (double w : weights) {
      if (!std::isfinite(w) || w < 0.0) {
        throw Error(ErrorKind::InvalidDistribution, "weights must be finite and nonnegative");
      }
      total += w;
    }
    if (!(total > 0.0)) throw Error(ErrorKind::InvalidDistribution, "weights have zero mass");
    for (double& w : weights) w /= total;
    return DiscreteDistribution(std::move(weights));
  }

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }
  const std::optional<std::vector<std::string>>& labels() const noexcept { return labels_; }

 private:
  std::vector<double> probs_;
  std::optional<std::vector<std::string>> labels_;
};

/// Conditional outcome probabilities p(y | theta, u), stored densely with the
/// outcome index varying fastest.
class LikelihoodModel {
 public:
  /// `table` is indexed [u][theta][y].
  explicit LikelihoodModel(const std::vector<std::vector<std::vector<double>>>& table) {
    if (table.empty() || table.front().empty() || table.front().front().empty()) {
      throw Error(ErrorKind::InvalidLikelihood, "likelihood table has an empty dimension");
    }
    interventions_ = table.size();
    states_ = table.front().size();
    outcomes_ = table.front().front().size();
    data_.reserve(interventions_ * states_ * outcomes_);
    for (const auto& per_u : table) {
      if (per_u.size() != states_) {
        throw Error(ErrorKind::InvalidLikelihood, "ragged likelihood table (state dimension)");
      }
      for (const auto& row : per_u) {
        if (row.size() != outcomes_) {
          throw Error(ErrorKind::InvalidLikelihood, "ragged likelihood table (outcome dimension)");
        }
        std::vector<double> r = row;
        detail::normalize_in_place(r, ErrorKind::InvalidLikelihood, "likelihood row");
        data_.insert(data_.end(), r.begin(), r.end());
      }
    }
  }

  std::size_t interventions() const noexcept { return interventions_; }
  std::size_t states() const noexcept { return states_; }
  std::size_t outcomes() const noexcept { return outcomes_; }

  double operator()(std::size_t u, std::size_t theta, std::size_t y) const {
    return data_[(u * states_ + theta) * outcomes_ + y];
  }

  std::span<const double> slice(std::size_t u, std::size_t theta) const {
    return std::span<const double>(data_).subspan((u * states_ + theta) * outcomes_, outcomes_);
  }

 private:
  std::size_t interventions_ = 0;
  std::size_t states_ = 0;
  std::size_t outcomes_ = 0;
  std::vector<double> data_;
};

/// Dense 2-D joint probability table p(x, k), row index x, column index k.
class JointTable {
 public:
  explicit JointTable(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows.front().empty()) {
      throw Error(ErrorKind::InvalidJoint, "joint table has an empty dimension");
    }
    rows_ = rows.size();
    cols_ = rows.front().size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorKind::InvalidJoint, "ragged joint table");
      data_.insert(data_.end(), r.begin(), r.end());
    }
    detail::normalize_in_place(data_, ErrorKind::InvalidJoint, "joint table");
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<double> row_marginal() const {
    std::vector<double> m(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m[r] += (*this)(r, c);
    return m;
  }

  std::vector<double> col_marginal() const {
    std::vector<double> m(cols_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m[c] += (*this)(r, c);
    return m;
  }

  JointTable transposed() const {
    std::vector<std::vector<double>> t(cols_, std::vector<double>(rows_));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t[c][r] = (*this)(r, c);
    return JointTable(t);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline InfoQuantity entropy(const DiscreteDistribution& dist) {
  return InfoQuantity::nonnegative(detail::entropy_nats(dist.probs()));
}

inline void check_compatible(const DiscreteDistribution& belief, const LikelihoodModel& lik,
                             std::size_t u) {
  if (belief.size() != lik.states()) {
    throw Error(ErrorKind::DimensionMismatch,
                "belief support " + std::to_string(belief.size()) + " vs likelihood states " +
                    std::to_string(lik.states()));
  }
  if (u >= lik.interventions()) {
    throw Error(ErrorKind::DimensionMismatch, "intervention index " + std::to_string(u) +
                                                  " out of range");
  }
}

/// p(y | u) = sum_theta belief(theta) p(y | theta, u).
inline DiscreteDistribution predictive_outcome_dist(const DiscreteDistribution& belief,
                                                    const LikelihoodModel& lik, std::size_t u) {
  check_compatible(belief, lik, u);
  std::vector<double> py(lik.outcomes(), 0.0);
  for (std::size_t th = 0; th < lik.states(); ++th) {
    const double w = belief[th];
    if (w == 0.0) continue;
    const auto row = lik.slice(u, th);
    for (std::size_t y = 0; y < py.size(); ++y) py[y] += w * row[y];
  }
  return DiscreteDistribution(std::move(py));
}

/// Bayes rule for a single observed outcome. Throws ZeroEvidence when the
/// outcome is impossible under the current belief.
inline DiscreteDistribution posterior_update(const DiscreteDistribution& prior,
                                             const LikelihoodModel& lik, std::size_t u,
                                             std::size_t y) {
  check_compatible(prior, lik, u);
  if (y >= lik.outcomes()) throw Error(ErrorKind::DimensionMismatch, "outcome index out of range");
  std::vector<double> post(prior.size());
  double evidence = 0.0;
  for (std::size_t th = 0; th < prior.size(); ++th) {
    post[th] = prior[th] * lik(u, th, y);
    evidence += post[th];
  }
  if (!(evidence > 0.0)) {
    throw Error(ErrorKind::ZeroEvidence,
                "outcome " + std::to_string(y) + " has zero probability under the belief");
  }
  for (double& p : post) p /= evidence;
  return DiscreteDistribution(std::move(post));
}

/// I(Theta; Y | u) = H(Y | u) - sum_theta belief(theta) H(Y | theta, u).
inline InfoQuantity expected_information_gain(const DiscreteDistribution& belief,
                                              const LikelihoodModel& lik, std::size_t u) {
  const auto py = predictive_outcome_dist(belief, lik, u);
  double conditional = 0.0;
  for (std::size_t th = 0; th < belief.size(); ++th) {
    if (belief[th] == 0.0) continue;
    conditional += belief[th] * detail::entropy_nats(lik.slice(u, th));
  }
  return InfoQuantity::nonnegative(detail::entropy_nats(py.probs()) - conditional);
}

/// Same quantity computed on the belief side: H(belief) - E_y[H(posterior_y)].
inline InfoQuantity expected_information_gain_posterior_side(const DiscreteDistribution& belief,
                                                             const LikelihoodModel& lik,
                                                             std::size_t u) {
  const auto py = predictive_outcome_dist(belief, lik, u);
  double expected_posterior = 0.0;
  for (std::size_t y = 0; y < lik.outcomes(); ++y) {
    if (py[y] == 0.0) continue;
    expected_posterior += py[y] * entropy(posterior_update(belief, lik, u, y)).value;
  }
  return InfoQuantity::nonnegative(entropy(belief).value - expected_posterior);
}

/// sum p(x,k) ln[p(x,k) / (p(x) p(k))], clamped at zero.
inline InfoQuantity mutual_information_of_joint(const JointTable& joint) {
  const auto px = joint.row_marginal();
  const auto pk = joint.col_marginal();
  double mi = 0.0;
  for (std::size_t r = 0; r < joint.rows(); ++r) {
    for (std::size_t c = 0; c < joint.cols(); ++c) {
      const double p = joint(r, c);
      if (p < kProbabilityFloor) continue;
      mi += p * std::log(p / (px[r] * pk[c]));
    }
  }
  return InfoQuantity::nonnegative(mi);
}

}  // namespace thermosci
