#pragma once

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <variant>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "nslb/core.hpp"
#include "nslb/rng.hpp"

namespace nslb {

// Filtering distribution over latent states. Entries are non-negative and sum
// to 1 within 1e-12.
struct BeliefVector {
  Eigen::VectorXd probs;

  BeliefVector() = default;
  explicit BeliefVector(Eigen::VectorXd p) : probs(std::move(p)) {
    if (probs.size() == 0) throw std::invalid_argument("BeliefVector: empty");
    if ((probs.array() < 0.0).any() || std::abs(probs.sum() - 1.0) > 1e-12)
      throw std::invalid_argument("BeliefVector: not a probability vector");
  }

  static BeliefVector uniform(int num_states) {
    return BeliefVector(Eigen::VectorXd::Constant(num_states, 1.0 / num_states));
  }

  int size() const { return static_cast<int>(probs.size()); }
};

struct FilterResult {
  BeliefVector posterior;
  // log of the unnormalized mass sum_s P_t(s) L(s): the predictive likelihood
  // of the observation that produced L.
  double log_evidence = 0.0;
};

// One step of the forward filter: condition the current belief on the round's
// per-state observation likelihoods, then push through the transition kernel.
//   P'(s') ∝ sum_s P(s) L(s) phi(s, s')
inline FilterResult filter_update(const BeliefVector& belief, const TransitionMatrix& phi,
                                  const Eigen::VectorXd& likelihoods) {
  if (belief.size() != phi.num_states() || likelihoods.size() != belief.size())
    throw std::invalid_argument("filter_update: dimension mismatch");
  if ((likelihoods.array() < 0.0).any())
    throw std::invalid_argument("filter_update: negative likelihood");
  Eigen::VectorXd weighted = belief.probs.cwiseProduct(likelihoods);
  double mass = weighted.sum();
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw std::domain_error("filter_update: likelihood mass underflow, use filter_update_log");
  Eigen::VectorXd predicted = phi.matrix().transpose() * weighted;
  return FilterResult{BeliefVector(predicted / predicted.sum()), std::log(mass)};
}

// Same update fed with log-likelihoods. The max shift cancels in the
// posterior and is added back into the evidence.
inline FilterResult filter_update_log(const BeliefVector& belief, const TransitionMatrix& phi,
                                      const Eigen::VectorXd& loglik) {
  double shift = loglik.maxCoeff();
  if (!std::isfinite(shift))
    throw std::domain_error("filter_update_log: no finite log-likelihood");
  FilterResult res = filter_update(belief, phi, (loglik.array() - shift).exp());
  res.log_evidence += shift;
  return res;
}

// Dirichlet parameters over transition rows; row s parameterizes the
// distribution of phi(s, .). Posterior updates are plain transition counting.
struct DirichletCounts {
  Eigen::MatrixXd alpha;

  DirichletCounts() = default;
  explicit DirichletCounts(Eigen::MatrixXd a) : alpha(std::move(a)) {
    if (alpha.rows() != alpha.cols() || alpha.rows() == 0)
      throw std::invalid_argument("DirichletCounts: must be square");
    if (!(alpha.array() > 0.0).all())
      throw std::invalid_argument("DirichletCounts: entries must be positive");
  }

  static DirichletCounts symmetric(int num_states, double diag, double off) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Constant(num_states, num_states, off);
    a.diagonal().setConstant(diag);
    return DirichletCounts(a);
  }

  int num_states() const { return static_cast<int>(alpha.rows()); }
  void add_transition(StateId from, StateId to) { alpha(from, to) += 1.0; }
  Eigen::VectorXd sample_row(StateId s, Rng& rng) const {
    return dirichlet_sample(rng, alpha.row(s).transpose());
  }
  // Row-normalized mean of the Dirichlet rows.
  TransitionMatrix mean() const {
    Eigen::MatrixXd m = alpha;
    for (int i = 0; i < m.rows(); ++i) m.row(i) /= m.row(i).sum();
    return TransitionMatrix(m);
  }
};

struct GaussianPosterior {
  double mean = 0.0;
  double var = 0.0;
};

// Conjugate Gaussian update with known observation variance:
//   mean = (s0^2 sum_r + s^2 mu0) / (s0^2 m + s^2),  var = s0^2 s^2 / (s0^2 m + s^2)
// A zero prior variance pins the parameter at mu0.
inline GaussianPosterior gaussian_known_variance_posterior(double mu0, double sigma0_sq,
                                                           double noise_sq, double sum_r,
                                                           double count) {
  double denom = sigma0_sq * count + noise_sq;
  return GaussianPosterior{(sigma0_sq * sum_r + noise_sq * mu0) / denom,
                           sigma0_sq * noise_sq / denom};
}

struct BetaPosterior {
  double a = 1.0;
  double b = 1.0;
};

inline BetaPosterior beta_bernoulli_posterior(double a0, double b0, double successes,
                                              double failures) {
  return BetaPosterior{a0 + successes, b0 + failures};
}

inline double beta_sample(Rng& rng, double a, double b) {
  double x = gamma_sample(rng, a);
  double y = gamma_sample(rng, b);
  return x / (x + y);
}

// ESS = (sum_i w_i^2)^-1 for normalized weights; always in [1, N].
inline double effective_sample_size(const Eigen::VectorXd& weights) {
  double sq = weights.squaredNorm();
  if (!(sq > 0.0)) throw std::invalid_argument("effective_sample_size: zero weights");
  return 1.0 / sq;
}

// ---------------------------------------------------------------------------
// Conjugate reward-model families. A family bundles the prior, the sufficient
// statistics one particle carries, posterior sampling, and the observation
// model at a sampled parameter. All are exchangeable inside the particle
// filter below.
// ---------------------------------------------------------------------------

// Independent Gaussian mean per (arm, state) with known observation noise.
class GaussianTabularFamily {
 public:
  struct Stats {
    Eigen::MatrixXd sum_r;   // arm x state
    Eigen::MatrixXd count;   // arm x state
    Eigen::VectorXd visits;  // per-state observation count m_s
  };
  using Theta = Eigen::MatrixXd;  // sampled mean per (arm, state)

  GaussianTabularFamily(Eigen::MatrixXd prior_mean, double prior_sd, double noise_sd)
      : mu0_(std::move(prior_mean)), sigma0_sq_(prior_sd * prior_sd), noise_sd_(noise_sd) {
    if (!(noise_sd > 0.0)) throw std::invalid_argument("GaussianTabularFamily: noise_sd must be > 0");
    if (prior_sd < 0.0) throw std::invalid_argument("GaussianTabularFamily: negative prior sd");
  }

  int num_arms() const { return static_cast<int>(mu0_.rows()); }
  int num_states() const { return static_cast<int>(mu0_.cols()); }

  Stats make_stats() const {
    return Stats{Eigen::MatrixXd::Zero(mu0_.rows(), mu0_.cols()),
                 Eigen::MatrixXd::Zero(mu0_.rows(), mu0_.cols()),
                 Eigen::VectorXd::Zero(mu0_.cols())};
  }

  void observe(Stats& st, StateId s, ActionId a, const Context&, double r) const {
    st.sum_r(a, s) += r;
    st.count(a, s) += 1.0;
    st.visits[s] += 1.0;
  }

  GaussianPosterior cell_posterior(const Stats& st, ActionId a, StateId s) const {
    return gaussian_known_variance_posterior(mu0_(a, s), sigma0_sq_, noise_sd_ * noise_sd_,
                                             st.sum_r(a, s), st.count(a, s));
  }

  Theta sample(const Stats& st, Rng& rng) const {
    if (sigma0_sq_ == 0.0) return mu0_;  // known model, nothing to learn
    Theta theta(mu0_.rows(), mu0_.cols());
    for (int s = 0; s < mu0_.cols(); ++s) {
      for (int a = 0; a < mu0_.rows(); ++a) {
        GaussianPosterior p = cell_posterior(st, a, s);
        theta(a, s) = normal_sample(rng, p.mean, std::sqrt(p.var));
      }
    }
    return theta;
  }

  double loglik(const Theta& theta, double r, ActionId a, const Context&, StateId s) const {
    return gaussian_loglik(r, theta(a, s), noise_sd_);
  }
  double mean(const Theta& theta, ActionId a, const Context&, StateId s) const {
    return theta(a, s);
  }

  double noise_sd() const { return noise_sd_; }

 private:
  Eigen::MatrixXd mu0_;
  double sigma0_sq_;
  double noise_sd_;
};

// Per-state Bayesian linear regression weights with Gaussian prior and known
// observation noise; rewards are x_a . w_s plus noise.
class GaussianLinearFamily {
 public:
  struct Stats {
    std::vector<Eigen::MatrixXd> xtx;
    std::vector<Eigen::VectorXd> xtr;
    Eigen::VectorXd visits;
    // Cached posterior factors, recomputed lazily per state.
    mutable std::vector<Eigen::LLT<Eigen::MatrixXd>> chol;
    mutable std::vector<Eigen::VectorXd> post_mean;
    mutable std::vector<bool> dirty;
  };
  using Theta = Eigen::MatrixXd;  // state x dim sampled weight rows

  GaussianLinearFamily(std::vector<Eigen::VectorXd> prior_means,
                       std::vector<Eigen::MatrixXd> prior_covs, double noise_sd)
      : means_(std::move(prior_means)), noise_sd_(noise_sd) {
    if (means_.empty() || means_.size() != prior_covs.size())
      throw std::invalid_argument("GaussianLinearFamily: prior size mismatch");
    if (!(noise_sd > 0.0)) throw std::invalid_argument("GaussianLinearFamily: noise_sd must be > 0");
    dim_ = static_cast<int>(means_.front().size());
    for (std::size_t s = 0; s < means_.size(); ++s) {
      Eigen::LLT<Eigen::MatrixXd> llt(prior_covs[s]);
      if (llt.info() != Eigen::Success)
        throw std::invalid_argument("GaussianLinearFamily: prior covariance not SPD");
      Eigen::MatrixXd prec = llt.solve(Eigen::MatrixXd::Identity(dim_, dim_));
      prior_prec_.push_back(prec);
      prior_prec_mean_.push_back(prec * means_[s]);
    }
  }

  int num_states() const { return static_cast<int>(means_.size()); }
  int dim() const { return dim_; }

  Stats make_stats() const {
    Stats st;
    int S = num_states();
    st.xtx.assign(S, Eigen::MatrixXd::Zero(dim_, dim_));
    st.xtr.assign(S, Eigen::VectorXd::Zero(dim_));
    st.visits = Eigen::VectorXd::Zero(S);
    st.chol.resize(S);
    st.post_mean.assign(S, Eigen::VectorXd::Zero(dim_));
    st.dirty.assign(S, true);
    return st;
  }

  void observe(Stats& st, StateId s, ActionId a, const Context& x, double r) const {
    Eigen::VectorXd f = x.arm_features.row(a).transpose();
    st.xtx[s].noalias() += f * f.transpose();
    st.xtr[s].noalias() += f * r;
    st.visits[s] += 1.0;
    st.dirty[s] = true;
  }

  Theta sample(const Stats& st, Rng& rng) const {
    Theta theta(num_states(), dim_);
    double inv_noise = 1.0 / (noise_sd_ * noise_sd_);
    for (int s = 0; s < num_states(); ++s) {
      refresh(st, s, inv_noise);
      // theta_s = mean + L^-T z with Lambda = L L^T
      Eigen::VectorXd z(dim_);
      for (int i = 0; i < dim_; ++i) z[i] = normal_sample(rng, 0.0, 1.0);
      Eigen::VectorXd perturb =
          st.chol[s].matrixU().solve(z);
      theta.row(s) = (st.post_mean[s] + perturb).transpose();
    }
    return theta;
  }

  double loglik(const Theta& theta, double r, ActionId a, const Context& x, StateId s) const {
    double m = x.arm_features.row(a).dot(theta.row(s));
    return gaussian_loglik(r, m, noise_sd_);
  }
  double mean(const Theta& theta, ActionId a, const Context& x, StateId s) const {
    return x.arm_features.row(a).dot(theta.row(s));
  }

  double noise_sd() const { return noise_sd_; }

 private:
  void refresh(const Stats& st, int s, double inv_noise) const {
    if (!st.dirty[s]) return;
    Eigen::MatrixXd lambda = prior_prec_[s] + st.xtx[s] * inv_noise;
    st.chol[s].compute(lambda);
    st.post_mean[s] = st.chol[s].solve(prior_prec_mean_[s] + st.xtr[s] * inv_noise);
    st.dirty[s] = false;
  }

  std::vector<Eigen::VectorXd> means_;
  std::vector<Eigen::MatrixXd> prior_prec_;
  std::vector<Eigen::VectorXd> prior_prec_mean_;
  int dim_ = 0;
  double noise_sd_;
};

// Beta prior per (arm, state) with Bernoulli rewards.
class BetaBernoulliFamily {
 public:
  struct Stats {
    Eigen::MatrixXd successes;
    Eigen::MatrixXd failures;
    Eigen::VectorXd visits;
  };
  using Theta = Eigen::MatrixXd;  // sampled success probability per (arm, state)

  BetaBernoulliFamily(int num_arms, int num_states, double a0, double b0)
      : arms_(num_arms), states_(num_states), a0_(a0), b0_(b0) {
    if (!(a0 > 0.0) || !(b0 > 0.0)) throw std::invalid_argument("BetaBernoulliFamily: bad prior");
  }

  int num_arms() const { return arms_; }
  int num_states() const { return states_; }

  Stats make_stats() const {
    return Stats{Eigen::MatrixXd::Zero(arms_, states_), Eigen::MatrixXd::Zero(arms_, states_),
                 Eigen::VectorXd::Zero(states_)};
  }

  void observe(Stats& st, StateId s, ActionId a, const Context&, double r) const {
    if (r < 0.0 || r > 1.0) throw std::invalid_argument("BetaBernoulliFamily: reward outside [0,1]");
    st.successes(a, s) += r;
    st.failures(a, s) += 1.0 - r;
    st.visits[s] += 1.0;
  }

  Theta sample(const Stats& st, Rng& rng) const {
    Theta theta(arms_, states_);
    for (int s = 0; s < states_; ++s)
      for (int a = 0; a < arms_; ++a)
        theta(a, s) = beta_sample(rng, a0_ + st.successes(a, s), b0_ + st.failures(a, s));
    return theta;
  }

  double loglik(const Theta& theta, double r, ActionId a, const Context&, StateId s) const {
    double p = std::min(std::max(theta(a, s), 1e-12), 1.0 - 1e-12);
    return r * std::log(p) + (1.0 - r) * std::log1p(-p);
  }
  double mean(const Theta& theta, ActionId a, const Context&, StateId s) const {
    return theta(a, s);
  }

 private:
  int arms_;
  int states_;
  double a0_;
  double b0_;
};

// Finite set of candidate mean-reward models with Gaussian observation noise.
// The categorical cell posterior is conjugate to anything, which makes this
// family the desk-scale bridge to exhaustive enumeration.
class GridFamily {
 public:
  struct Stats {
    Eigen::VectorXd cell_loglik;  // accumulated data log-likelihood per cell
  };
  using Theta = int;  // sampled cell index

  GridFamily(std::vector<MeanRewardModel> cells, Eigen::VectorXd cell_log_prior, double noise_sd)
      : cells_(std::move(cells)), log_prior_(std::move(cell_log_prior)), noise_sd_(noise_sd) {
    if (cells_.empty() || static_cast<int>(cells_.size()) != log_prior_.size())
      throw std::invalid_argument("GridFamily: cell/prior mismatch");
    if (!(noise_sd > 0.0)) throw std::invalid_argument("GridFamily: noise_sd must be > 0");
  }

  int num_cells() const { return static_cast<int>(cells_.size()); }
  int num_states() const { return cells_.front().num_states(); }
  const MeanRewardModel& cell(int g) const { return cells_[static_cast<std::size_t>(g)]; }

  Stats make_stats() const { return Stats{Eigen::VectorXd::Zero(num_cells())}; }

  void observe(Stats& st, StateId s, ActionId a, const Context& x, double r) const {
    for (int g = 0; g < num_cells(); ++g)
      st.cell_loglik[g] += gaussian_loglik(r, cells_[g].mean(a, x, s), noise_sd_);
  }

  Theta sample(const Stats& st, Rng& rng) const {
    return sample_categorical(rng, softmax_from_log(log_prior_ + st.cell_loglik));
  }

  double loglik(Theta g, double r, ActionId a, const Context& x, StateId s) const {
    return gaussian_loglik(r, cells_[g].mean(a, x, s), noise_sd_);
  }
  double mean(Theta g, ActionId a, const Context& x, StateId s) const {
    return cells_[g].mean(a, x, s);
  }

  double noise_sd() const { return noise_sd_; }

 private:
  std::vector<MeanRewardModel> cells_;
  Eigen::VectorXd log_prior_;
  double noise_sd_;
};

// ---------------------------------------------------------------------------
// Particle filter over (latent trajectory, transition model, reward model).
// ---------------------------------------------------------------------------

struct KnownTransition {
  TransitionMatrix phi;
};
struct DirichletTransition {
  DirichletCounts prior;
};
using TransitionPrior = std::variant<KnownTransition, DirichletTransition>;

enum class ResampleScheme { Multinomial, Systematic };

struct ParticleFilterOptions {
  int num_particles = 1000;
  double resample_threshold = 0.5;  // resample when ESS < threshold * N
  ResampleScheme scheme = ResampleScheme::Multinomial;
};

// Draw n parent indices with replacement, proportional to the weights.
inline std::vector<int> resample_indices(Rng& rng, const Eigen::VectorXd& weights, int n,
                                         ResampleScheme scheme) {
  std::vector<int> idx;
  idx.reserve(static_cast<std::size_t>(n));
  if (scheme == ResampleScheme::Multinomial) {
    for (int i = 0; i < n; ++i) idx.push_back(sample_categorical(rng, weights));
  } else {
    double step = 1.0 / n;
    double u = uniform01(rng) * step;
    double acc = weights[0];
    int j = 0;
    for (int i = 0; i < n; ++i) {
      double target = u + i * step;
      while (acc < target && j + 1 < weights.size()) acc += weights[++j];
      idx.push_back(j);
    }
  }
  return idx;
}

// One particle per latent-trajectory hypothesis. `trail` is the last state
// committed to the trajectory; `believed` / `theta` / `phi_row` are the
// current round's posterior draws used for acting and weighting.
template <class Family>
class ParticleSet {
 public:
  struct Particle {
    StateId trail = -1;  // -1 until the first round is committed
    StateId believed = 0;
    Eigen::VectorXd phi_row;  // sampled transition row out of `trail`
    typename Family::Theta theta;
    Eigen::MatrixXd dirichlet;  // per-particle counts; empty when phi is known
    typename Family::Stats stats;
  };

  ParticleSet(Family family, BeliefVector state_prior, TransitionPrior transition,
              ParticleFilterOptions opts, Rng& rng)
      : family_(std::move(family)),
        state_prior_(std::move(state_prior)),
        transition_(std::move(transition)),
        opts_(opts) {
    if (opts_.num_particles < 1) throw std::invalid_argument("ParticleSet: need >= 1 particle");
    particles_.reserve(static_cast<std::size_t>(opts_.num_particles));
    const auto* dir = std::get_if<DirichletTransition>(&transition_);
    for (int i = 0; i < opts_.num_particles; ++i) {
      Particle p;
      p.phi_row = state_prior_.probs;
      p.believed = sample_categorical(rng, state_prior_.probs);
      p.stats = family_.make_stats();
      p.theta = family_.sample(p.stats, rng);
      if (dir != nullptr) p.dirichlet = dir->prior.alpha;
      particles_.push_back(std::move(p));
    }
    log_weights_ = Eigen::VectorXd::Constant(opts_.num_particles, -std::log(opts_.num_particles));
    refresh_weights();
  }

  int size() const { return static_cast<int>(particles_.size()); }
  const Eigen::VectorXd& weights() const { return weights_; }
  double ess() const { return effective_sample_size(weights_); }
  const Particle& particle(int i) const { return particles_[static_cast<std::size_t>(i)]; }
  const Family& family() const { return family_; }

  // Predictive likelihood of the observed reward given the particle's
  // trajectory, marginalizing the reward round's state over the sampled
  // transition row:  sum_s phi_row(s) P(r | a, x, s; theta).
  double predictive_loglik(int i, ActionId a, const Context& x, double reward) const {
    const Particle& p = particles_[static_cast<std::size_t>(i)];
    Eigen::VectorXd ll = state_logliks(p, a, x, reward);
    return marginal_loglik(p.phi_row, ll);
  }

  // Multiply weights by the predictive likelihood and renormalize (in log
  // space, so underflow cannot occur).
  void reweight(ActionId a, const Context& x, double reward) {
    for (int i = 0; i < size(); ++i) log_weights_[i] += predictive_loglik(i, a, x, reward);
    normalize_log_weights();
  }

  // Commit the reward round's state (drawn from the reward-tilted row), fold
  // the observation into the sufficient statistics, then draw the next
  // round's (phi_row, believed state, theta).
  void propose(int i, ActionId a, const Context& x, double reward, Rng& rng) {
    Particle& p = particles_[static_cast<std::size_t>(i)];
    Eigen::VectorXd ll = state_logliks(p, a, x, reward);
    Eigen::VectorXd logq = p.phi_row.array().log() + ll.array();
    StateId committed = sample_categorical(rng, softmax_from_log(logq));

    if (p.trail >= 0 && p.dirichlet.size() > 0) p.dirichlet(p.trail, committed) += 1.0;
    family_.observe(p.stats, committed, a, x, reward);
    p.trail = committed;

    p.phi_row = sample_transition_row(p, committed, rng);
    p.believed = sample_categorical(rng, p.phi_row);
    p.theta = family_.sample(p.stats, rng);
  }

  void propose_all(ActionId a, const Context& x, double reward, Rng& rng) {
    for (int i = 0; i < size(); ++i) propose(i, a, x, reward, rng);
  }

  // Multinomial (or systematic) resampling with replacement when the ESS
  // drops under threshold * N; weights reset to 1/N. Returns true if fired.
  bool maybe_resample(Rng& rng) {
    if (ess() >= opts_.resample_threshold * size()) return false;
    resample(rng);
    return true;
  }

  void resample(Rng& rng) {
    const int n = size();
    std::vector<Particle> next;
    next.reserve(particles_.size());
    for (int parent : resample_indices(rng, weights_, n, opts_.scheme))
      next.push_back(particles_[static_cast<std::size_t>(parent)]);
    particles_ = std::move(next);
    log_weights_.setConstant(-std::log(n));
    refresh_weights();
  }

  // Full per-round update: reweight on the observation, advance every
  // particle, resample if degenerate.
  void update(ActionId a, const Context& x, double reward, Rng& rng) {
    reweight(a, x, reward);
    propose_all(a, x, reward, rng);
    maybe_resample(rng);
  }

  // Weighted belief over the current round's believed states.
  BeliefVector state_marginal(int num_states) const {
    Eigen::VectorXd probs = Eigen::VectorXd::Zero(num_states);
    for (int i = 0; i < size(); ++i) probs[particles_[static_cast<std::size_t>(i)].believed] += weights_[i];
    return BeliefVector(probs / probs.sum());
  }

  void dump_csv(std::ostream& os) const {
    os << "particle,state,weight\n";
    for (int i = 0; i < size(); ++i)
      os << i << ',' << particles_[static_cast<std::size_t>(i)].believed << ',' << weights_[i] << '\n';
  }

 private:
  Eigen::VectorXd state_logliks(const Particle& p, ActionId a, const Context& x,
                                double reward) const {
    int S = static_cast<int>(p.phi_row.size());
    Eigen::VectorXd ll(S);
    for (int s = 0; s < S; ++s) ll[s] = family_.loglik(p.theta, reward, a, x, s);
    return ll;
  }

  static double marginal_loglik(const Eigen::VectorXd& row, const Eigen::VectorXd& ll) {
    Eigen::VectorXd terms = row.array().log() + ll.array();
    return log_sum_exp(terms);
  }

  Eigen::VectorXd sample_transition_row(const Particle& p, StateId from, Rng& rng) const {
    if (const auto* known = std::get_if<KnownTransition>(&transition_))
      return known->phi.row(from);
    return dirichlet_sample(rng, p.dirichlet.row(from).transpose());
  }

  void normalize_log_weights() {
    double lse = log_sum_exp(log_weights_);
    if (!std::isfinite(lse))
      throw std::domain_error("ParticleSet: all particle weights vanished");
    log_weights_.array() -= lse;
    refresh_weights();
  }

  void refresh_weights() {
    weights_ = log_weights_.array().exp();
    weights_ /= weights_.sum();
  }

  Family family_;
  BeliefVector state_prior_;
  TransitionPrior transition_;
  ParticleFilterOptions opts_;
  std::vector<Particle> particles_;
  Eigen::VectorXd log_weights_;
  Eigen::VectorXd weights_;
};

}  // namespace nslb
