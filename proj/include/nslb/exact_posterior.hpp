#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "nslb/core.hpp"
#include "nslb/inference.hpp"

namespace nslb {

// Exhaustive-summation oracles. Cost is |S|^(T+1) x cells, so instances are
// capped hard; these exist to check the fast recursions, not to run online.
struct EnumerationLimits {
  int max_rounds = 12;
  int max_states = 3;
  int max_cells = 32;
};

namespace detail {

// Streaming log-sum-exp accumulator.
struct LogAccumulator {
  double max = -std::numeric_limits<double>::infinity();
  double scaled_sum = 0.0;

  void add(double logv) {
    if (logv == -std::numeric_limits<double>::infinity()) return;
    if (logv > max) {
      scaled_sum = scaled_sum * std::exp(max - logv) + 1.0;
      max = logv;
    } else {
      scaled_sum += std::exp(logv - max);
    }
  }
  double value() const {
    return scaled_sum > 0.0 ? max + std::log(scaled_sum)
                            : -std::numeric_limits<double>::infinity();
  }
};

}  // namespace detail

// Joint posterior over (state at round T+1, model cell) after T observed
// rounds, proportional to
//   prior(cell) * sum_{s_1..s_{T+1}} P(s_1) P(s_2..s_{T+1} | transitions)
//                 * prod_t L_cell(t, s_t),
// where the trajectory probability marginalizes a Dirichlet transition prior
// analytically (sequential predictive) or uses a known kernel.
// loglik_per_cell[g] is a T x S matrix of per-round per-state log-likelihoods.
inline Eigen::MatrixXd exact_joint_posterior(
    const BeliefVector& state_prior, const std::vector<Eigen::MatrixXd>& loglik_per_cell,
    const Eigen::VectorXd& cell_log_prior,
    const std::variant<TransitionMatrix, DirichletCounts>& transition,
    const EnumerationLimits& limits = {}) {
  const int cells = static_cast<int>(loglik_per_cell.size());
  if (cells == 0 || cells != cell_log_prior.size())
    throw std::invalid_argument("exact_joint_posterior: cell/prior mismatch");
  const int S = state_prior.size();
  const int T = static_cast<int>(loglik_per_cell.front().rows());
  for (const auto& m : loglik_per_cell)
    if (m.rows() != T || m.cols() != S)
      throw std::invalid_argument("exact_joint_posterior: bad loglik shape");
  if (T > limits.max_rounds || S > limits.max_states || cells > limits.max_cells)
    throw std::invalid_argument("exact_joint_posterior: instance too large for enumeration");

  const TransitionMatrix* known = std::get_if<TransitionMatrix>(&transition);
  Eigen::MatrixXd counts;  // running transition counts along the DFS path
  const DirichletCounts* dir = std::get_if<DirichletCounts>(&transition);
  if (dir != nullptr) counts = Eigen::MatrixXd::Zero(S, S);

  std::vector<std::vector<detail::LogAccumulator>> acc(
      static_cast<std::size_t>(S), std::vector<detail::LogAccumulator>(static_cast<std::size_t>(cells)));

  // DFS over trajectories s_1..s_{T+1}; depth d assigns s_{d+1}. Carries the
  // shared transition log-probability and per-cell likelihood prefixes.
  Eigen::VectorXd cell_ll = cell_log_prior;
  auto recurse = [&](auto&& self, int depth, StateId prev, double logp_traj) -> void {
    if (depth == T + 1) {
      for (int g = 0; g < cells; ++g)
        acc[static_cast<std::size_t>(prev)][static_cast<std::size_t>(g)].add(logp_traj + cell_ll[g]);
      return;
    }
    for (StateId s = 0; s < S; ++s) {
      double logp_step;
      if (depth == 0) {
        if (state_prior.probs[s] == 0.0) continue;
        logp_step = std::log(state_prior.probs[s]);
      } else if (known != nullptr) {
        double p = (*known)(prev, s);
        if (p == 0.0) continue;
        logp_step = std::log(p);
      } else {
        // Dirichlet sequential predictive given the counts accumulated so far.
        double num = dir->alpha(prev, s) + counts(prev, s);
        double den = dir->alpha.row(prev).sum() + counts.row(prev).sum();
        logp_step = std::log(num / den);
      }

      if (depth < T) {
        for (int g = 0; g < cells; ++g) cell_ll[g] += loglik_per_cell[static_cast<std::size_t>(g)](depth, s);
      }
      if (depth > 0 && dir != nullptr) counts(prev, s) += 1.0;

      self(self, depth + 1, s, logp_traj + logp_step);

      if (depth > 0 && dir != nullptr) counts(prev, s) -= 1.0;
      if (depth < T) {
        for (int g = 0; g < cells; ++g) cell_ll[g] -= loglik_per_cell[static_cast<std::size_t>(g)](depth, s);
      }
    }
  };
  recurse(recurse, 0, -1, 0.0);

  Eigen::MatrixXd log_table(S, cells);
  for (int s = 0; s < S; ++s)
    for (int g = 0; g < cells; ++g)
      log_table(s, g) = acc[static_cast<std::size_t>(s)][static_cast<std::size_t>(g)].value();

  double shift = log_table.maxCoeff();
  if (!std::isfinite(shift)) throw std::domain_error("exact_joint_posterior: zero posterior mass");
  Eigen::MatrixXd table = (log_table.array() - shift).exp();
  return table / table.sum();
}

// Known-model state posterior P(s_{T+1} | T rounds) by the same enumeration.
inline Eigen::VectorXd enumerate_state_posterior(const BeliefVector& state_prior,
                                                 const TransitionMatrix& phi,
                                                 const Eigen::MatrixXd& loglik,
                                                 const EnumerationLimits& limits = {}) {
  Eigen::MatrixXd table = exact_joint_posterior(
      state_prior, {loglik}, Eigen::VectorXd::Zero(1), phi, limits);
  return table.col(0);
}

}  // namespace nslb
