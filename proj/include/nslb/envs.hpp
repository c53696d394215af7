#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "nslb/core.hpp"
#include "nslb/rng.hpp"

namespace nslb {

// Deterministic cyclic change every `period` rounds.
struct FixedPeriodSchedule {
  int period = 1;
};
// Markov latent dynamics with a fixed kernel.
struct StochasticSchedule {
  TransitionMatrix phi;
};
using LatentSchedule = std::variant<FixedPeriodSchedule, StochasticSchedule>;

// Tabular means drawn iid Uniform(0, 1).
inline MeanRewardModel sample_synthetic_means(Rng& rng, int num_arms, int num_states) {
  if (num_arms < 1 || num_states < 1)
    throw std::invalid_argument("sample_synthetic_means: need >= 1 arm and state");
  Eigen::MatrixXd table(num_arms, num_states);
  for (int a = 0; a < num_arms; ++a)
    for (int s = 0; s < num_states; ++s) table(a, s) = uniform01(rng);
  return MeanRewardModel::tabular(table);
}

// State for round t+1 given the state during round t. The fixed-period
// schedule advances cyclically exactly when t is a multiple of the period, so
// rounds 1..period share the first state.
inline StateId step_latent(StateId current, const LatentSchedule& schedule, long t, Rng& rng,
                           int num_states) {
  if (const auto* fixed = std::get_if<FixedPeriodSchedule>(&schedule)) {
    if (fixed->period < 1) throw std::invalid_argument("step_latent: period must be >= 1");
    if (t % fixed->period == 0) return static_cast<StateId>((current + 1) % num_states);
    return current;
  }
  const auto& phi = std::get<StochasticSchedule>(schedule).phi;
  return sample_categorical(rng, phi.row(current));
}

// Gaussian reward draw around the model mean. `sigma = 0` is the noiseless
// limit used by tests.
inline double emit_reward(const MeanRewardModel& model, ActionId a, const Context& x, StateId s,
                          double sigma, Rng& rng) {
  return model.mean(a, x, s) + sigma * std::normal_distribution<double>(0.0, 1.0)(rng);
}

// Mixture kernel 0.9 J + 0.1 K over latent user states. J changes with total
// probability `change_prob` spread uniformly over the other states; K favors
// nearby states via exp(-||u_s' - u_s||^2), row-normalized before mixing.
inline TransitionMatrix build_superuser_transition(const Eigen::MatrixXd& state_vectors,
                                                   double change_prob) {
  const int S = static_cast<int>(state_vectors.rows());
  if (S < 2) throw std::invalid_argument("build_superuser_transition: need >= 2 states");
  if (!(change_prob > 0.0) || !(change_prob < 1.0))
    throw std::invalid_argument("build_superuser_transition: change_prob must be in (0,1)");

  Eigen::MatrixXd j = Eigen::MatrixXd::Constant(S, S, change_prob / (S - 1));
  j.diagonal().setConstant(1.0 - change_prob);

  Eigen::MatrixXd k(S, S);
  for (int r = 0; r < S; ++r) {
    for (int c = 0; c < S; ++c) {
      double d2 = (state_vectors.row(c) - state_vectors.row(r)).squaredNorm();
      k(r, c) = std::exp(-d2);
    }
    k.row(r) /= k.row(r).sum();
  }
  return TransitionMatrix(0.9 * j + 0.1 * k);
}

// Movie inventory used by the recommender-style environment. Context rows
// come from `context_features` (what the agent sees); rewards are computed
// from `reward_features` (held by the environment only).
struct MovieCatalog {
  std::vector<int> movie_ids;
  Eigen::MatrixXd context_features;
  Eigen::MatrixXd reward_features;
  std::vector<std::vector<int>> movie_genres;  // genre indices per movie
  std::vector<std::string> genre_names;
  std::vector<std::vector<int>> genre_to_movies;  // movie row indices per genre

  int num_movies() const { return static_cast<int>(movie_ids.size()); }
  int num_genres() const { return static_cast<int>(genre_names.size()); }

  void build_genre_index() {
    genre_to_movies.assign(genre_names.size(), {});
    for (int m = 0; m < num_movies(); ++m)
      for (int g : movie_genres[static_cast<std::size_t>(m)])
        genre_to_movies[static_cast<std::size_t>(g)].push_back(m);
  }
};

struct ContextSample {
  Context context;
  std::vector<int> movie_rows;  // catalog row per arm
};

// `arms` distinct genres drawn uniformly without replacement, then one movie
// uniformly within each genre.
inline ContextSample sample_movie_context(const MovieCatalog& catalog, int arms, Rng& rng) {
  int usable = 0;
  for (const auto& g : catalog.genre_to_movies)
    if (!g.empty()) ++usable;
  if (usable < arms)
    throw std::invalid_argument("sample_movie_context: catalog has fewer populated genres than arms");

  std::vector<int> genres;
  genres.reserve(static_cast<std::size_t>(catalog.num_genres()));
  for (int g = 0; g < catalog.num_genres(); ++g)
    if (!catalog.genre_to_movies[static_cast<std::size_t>(g)].empty()) genres.push_back(g);
  // Partial Fisher-Yates for the first `arms` entries.
  for (int i = 0; i < arms; ++i) {
    int j = i + static_cast<int>(uniform01(rng) * (genres.size() - i));
    j = std::min<int>(j, static_cast<int>(genres.size()) - 1);
    std::swap(genres[static_cast<std::size_t>(i)], genres[static_cast<std::size_t>(j)]);
  }

  ContextSample out;
  out.movie_rows.resize(static_cast<std::size_t>(arms));
  Eigen::MatrixXd features(arms, catalog.context_features.cols());
  for (int i = 0; i < arms; ++i) {
    const auto& candidates = catalog.genre_to_movies[static_cast<std::size_t>(genres[static_cast<std::size_t>(i)])];
    int pick = static_cast<int>(uniform01(rng) * candidates.size());
    pick = std::min<int>(pick, static_cast<int>(candidates.size()) - 1);
    int row = candidates[static_cast<std::size_t>(pick)];
    out.movie_rows[static_cast<std::size_t>(i)] = row;
    features.row(i) = catalog.context_features.row(row);
  }
  out.context = Context(std::move(features));
  return out;
}

// Round-based interaction contract shared by all environments. Per round:
// next_context(), then pull(a) (exactly one noise draw regardless of the
// action, so agents sharing a seed face identical realizations), then
// advance().
class Environment {
 public:
  virtual ~Environment() = default;
  virtual int num_arms() const = 0;
  virtual int num_states() const = 0;
  virtual Context next_context() = 0;
  virtual Eigen::VectorXd true_means() const = 0;  // per-arm means under the current state
  virtual double pull(ActionId a) = 0;
  virtual StateId state() const = 0;
  virtual void advance() = 0;
  virtual std::string name() const = 0;
};

struct SyntheticEnvConfig {
  int arms = 5;
  int states = 5;
  double sigma = 0.5;
  LatentSchedule schedule = FixedPeriodSchedule{200};

  void validate() const {
    if (arms < 1 || states < 1) throw std::invalid_argument("SyntheticEnvConfig: bad sizes");
    if (!(sigma > 0.0)) throw std::invalid_argument("SyntheticEnvConfig: sigma must be > 0");
  }
};

// Context-free Gaussian bandit over a tabular mean table with latent state
// dynamics given by the schedule.
class SyntheticEnv final : public Environment {
 public:
  SyntheticEnv(SyntheticEnvConfig config, MeanRewardModel truth, StateId initial_state, Rng rng)
      : config_(std::move(config)),
        truth_(std::move(truth)),
        state_(initial_state),
        rng_(std::move(rng)),
        context_(Context::context_free(config_.arms)) {
    config_.validate();
    if (!truth_.is_tabular()) throw std::invalid_argument("SyntheticEnv: model must be tabular");
  }

  int num_arms() const override { return config_.arms; }
  int num_states() const override { return config_.states; }

  Context next_context() override {
    ++round_;
    return context_;
  }

  Eigen::VectorXd true_means() const override { return truth_.table().col(state_); }

  double pull(ActionId a) override {
    return emit_reward(truth_, a, context_, state_, config_.sigma, rng_);
  }

  StateId state() const override { return state_; }

  void advance() override {
    state_ = step_latent(state_, config_.schedule, round_, rng_, config_.states);
  }

  std::string name() const override { return "synthetic"; }

  const MeanRewardModel& truth() const { return truth_; }

 private:
  SyntheticEnvConfig config_;
  MeanRewardModel truth_;
  StateId state_;
  Rng rng_;
  Context context_;
  long round_ = 0;
};

struct SuperuserEnvConfig {
  Eigen::MatrixXd state_user_vectors;  // test-side factors of the sampled superuser
  std::shared_ptr<const MovieCatalog> catalog;
  int arms_per_round = 20;
  double reward_variance = 0.25;
  TransitionMatrix transition;

  void validate() const {
    if (catalog == nullptr) throw std::invalid_argument("SuperuserEnvConfig: missing catalog");
    if (arms_per_round < 1 || arms_per_round > catalog->num_movies())
      throw std::invalid_argument("SuperuserEnvConfig: arms_per_round exceeds catalog");
    if (!(reward_variance > 0.0))
      throw std::invalid_argument("SuperuserEnvConfig: reward_variance must be > 0");
    if (transition.num_states() != static_cast<int>(state_user_vectors.rows()))
      throw std::invalid_argument("SuperuserEnvConfig: transition size mismatch");
  }
};

// Recommender-style environment: each round samples a fresh slate of movies,
// the reward is the product of the active user vector and the chosen movie's
// held-out factors plus Gaussian noise.
class SuperuserEnv final : public Environment {
 public:
  SuperuserEnv(SuperuserEnvConfig config, StateId initial_state, Rng rng)
      : config_(std::move(config)), state_(initial_state), rng_(std::move(rng)) {
    config_.validate();
  }

  int num_arms() const override { return config_.arms_per_round; }
  int num_states() const override { return static_cast<int>(config_.state_user_vectors.rows()); }

  Context next_context() override {
    ++round_;
    slate_ = sample_movie_context(*config_.catalog, config_.arms_per_round, rng_);
    return slate_.context;
  }

  Eigen::VectorXd true_means() const override {
    Eigen::VectorXd means(config_.arms_per_round);
    Eigen::VectorXd user = config_.state_user_vectors.row(state_).transpose();
    for (int a = 0; a < config_.arms_per_round; ++a) {
      int row = slate_.movie_rows[static_cast<std::size_t>(a)];
      means[a] = config_.catalog->reward_features.row(row).dot(user);
    }
    return means;
  }

  double pull(ActionId a) override {
    double mean = true_means()[a];
    return mean + std::sqrt(config_.reward_variance) * std::normal_distribution<double>(0.0, 1.0)(rng_);
  }

  StateId state() const override { return state_; }

  void advance() override { state_ = sample_categorical(rng_, config_.transition.row(state_)); }

  std::string name() const override { return "superuser"; }

 private:
  SuperuserEnvConfig config_;
  StateId state_;
  Rng rng_;
  ContextSample slate_;
  long round_ = 0;
};

}  // namespace nslb
