#pragma once

#include <cstdint>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nslb {

using ActionId = int;
using StateId = int;

// Smallest index attaining the maximum. Deterministic tie-break shared by
// every selection rule in the library.
inline int argmax_tiebreak(const Eigen::VectorXd& values) {
  if (values.size() == 0) throw std::invalid_argument("argmax_tiebreak: empty vector");
  int best = 0;
  for (int i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  if (!std::isfinite(values[best])) throw std::invalid_argument("argmax_tiebreak: non-finite values");
  return best;
}

// Per-round action features, one row per arm. A context-free problem is a
// K x 0 matrix; agents that need features must reject it at construction.
struct Context {
  Eigen::MatrixXd arm_features;

  Context() = default;
  explicit Context(Eigen::MatrixXd features) : arm_features(std::move(features)) {
    if (!arm_features.allFinite()) throw std::invalid_argument("Context: non-finite features");
  }

  static Context context_free(int num_arms) { return Context(Eigen::MatrixXd(num_arms, 0)); }

  int num_arms() const { return static_cast<int>(arm_features.rows()); }
  int dim() const { return static_cast<int>(arm_features.cols()); }
};

// Mean reward mu(a, x, s). Tabular: one entry per (arm, state). Linear: one
// weight vector per state applied to the arm's feature row.
class MeanRewardModel {
 public:
  enum class Kind { Tabular, Linear };

  MeanRewardModel() = default;

  static MeanRewardModel tabular(Eigen::MatrixXd arm_by_state) {
    if (!arm_by_state.allFinite()) throw std::invalid_argument("MeanRewardModel: non-finite table");
    MeanRewardModel m;
    m.kind_ = Kind::Tabular;
    m.table_ = std::move(arm_by_state);
    return m;
  }

  static MeanRewardModel linear(std::vector<Eigen::VectorXd> per_state_weights) {
    if (per_state_weights.empty()) throw std::invalid_argument("MeanRewardModel: no states");
    for (const auto& w : per_state_weights) {
      if (!w.allFinite() || w.size() != per_state_weights.front().size())
        throw std::invalid_argument("MeanRewardModel: bad weight vector");
    }
    MeanRewardModel m;
    m.kind_ = Kind::Linear;
    m.weights_ = std::move(per_state_weights);
    return m;
  }

  Kind kind() const { return kind_; }
  bool is_tabular() const { return kind_ == Kind::Tabular; }

  int num_states() const {
    return is_tabular() ? static_cast<int>(table_.cols()) : static_cast<int>(weights_.size());
  }
  // Tabular models know their arm count; linear models accept any context.
  int num_arms() const { return is_tabular() ? static_cast<int>(table_.rows()) : -1; }

  double mean(ActionId a, const Context& x, StateId s) const {
    if (is_tabular()) return table_(a, s);
    return x.arm_features.row(a).dot(weights_[static_cast<std::size_t>(s)]);
  }

  // Means of every arm under one state, for the given context.
  Eigen::VectorXd state_means(const Context& x, StateId s) const {
    if (is_tabular()) return table_.col(s);
    return x.arm_features * weights_[static_cast<std::size_t>(s)];
  }

  const Eigen::MatrixXd& table() const {
    if (!is_tabular()) throw std::logic_error("MeanRewardModel: not tabular");
    return table_;
  }
  const Eigen::VectorXd& state_weights(StateId s) const {
    if (is_tabular()) throw std::logic_error("MeanRewardModel: not linear");
    return weights_[static_cast<std::size_t>(s)];
  }

 private:
  Kind kind_ = Kind::Tabular;
  Eigen::MatrixXd table_;
  std::vector<Eigen::VectorXd> weights_;
};

// Row-stochastic latent transition kernel. Rows must sum to 1 within 1e-12.
class TransitionMatrix {
 public:
  TransitionMatrix() = default;
  explicit TransitionMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0)
      throw std::invalid_argument("TransitionMatrix: must be square and non-empty");
    for (int i = 0; i < m_.rows(); ++i) {
      if ((m_.row(i).array() < 0.0).any())
        throw std::invalid_argument("TransitionMatrix: negative entry");
      if (std::abs(m_.row(i).sum() - 1.0) > 1e-12)
        throw std::invalid_argument("TransitionMatrix: row does not sum to 1");
    }
  }

  // Uniform off-diagonal change kernel: each other state reached with
  // probability per_state_change, self-transition takes the rest.
  static TransitionMatrix uniform_change(int num_states, double per_state_change) {
    if (num_states < 1) throw std::invalid_argument("uniform_change: need >= 1 state");
    double total = per_state_change * (num_states - 1);
    if (total >= 1.0 || per_state_change < 0.0)
      throw std::invalid_argument("uniform_change: invalid change probability");
    Eigen::MatrixXd m = Eigen::MatrixXd::Constant(num_states, num_states, per_state_change);
    m.diagonal().setConstant(1.0 - total);
    return TransitionMatrix(m);
  }

  int num_states() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& matrix() const { return m_; }
  Eigen::VectorXd row(StateId s) const { return m_.row(s).transpose(); }
  double operator()(StateId from, StateId to) const { return m_(from, to); }

 private:
  Eigen::MatrixXd m_;
};

struct RoundRecord {
  long t = 0;  // 1-based round index
  Context context;
  ActionId action = 0;
  double reward = 0.0;
  StateId true_state = 0;
  ActionId optimal_action = 0;
  double optimal_mean = 0.0;
  double chosen_mean = 0.0;
};

struct RunTrace {
  std::vector<RoundRecord> records;
  std::uint64_t seed = 0;
  std::string agent_name;
  std::string env_name;
};

// Prefix sums of the per-round expected gap (pseudo-regret from true means).
inline std::vector<double> cumulative_regret(const RunTrace& trace) {
  if (trace.records.empty()) throw std::invalid_argument("cumulative_regret: empty trace");
  std::vector<double> out;
  out.reserve(trace.records.size());
  double acc = 0.0;
  for (const auto& r : trace.records) {
    acc += r.optimal_mean - r.chosen_mean;
    out.push_back(acc);
  }
  return out;
}

// Number of maximal constant runs: 1 + count of adjacent changes.
inline int segment_count(const std::vector<StateId>& states) {
  if (states.empty()) throw std::invalid_argument("segment_count: empty sequence");
  int segments = 1;
  for (std::size_t i = 1; i < states.size(); ++i) {
    if (states[i] != states[i - 1]) ++segments;
  }
  return segments;
}

inline void write_trace_csv(const RunTrace& trace, std::ostream& os) {
  os << "t,action,reward,true_state,optimal_action,instant_regret\n";
  os << std::setprecision(17);
  for (const auto& r : trace.records) {
    os << r.t << ',' << r.action << ',' << r.reward << ',' << r.true_state << ','
       << r.optimal_action << ',' << (r.optimal_mean - r.chosen_mean) << '\n';
  }
}

}  // namespace nslb
