#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "nslb/core.hpp"
#include "nslb/envs.hpp"
#include "nslb/rng.hpp"

using namespace nslb;

namespace {

MovieCatalog toy_catalog(int genres, int movies_per_genre, int dim, Rng& rng) {
  MovieCatalog cat;
  int total = genres * movies_per_genre;
  cat.context_features = Eigen::MatrixXd(total, dim);
  cat.reward_features = Eigen::MatrixXd(total, dim);
  for (int g = 0; g < genres; ++g) cat.genre_names.push_back("genre" + std::to_string(g));
  int row = 0;
  for (int g = 0; g < genres; ++g) {
    for (int m = 0; m < movies_per_genre; ++m) {
      cat.movie_ids.push_back(row);
      cat.movie_genres.push_back({g});
      for (int d = 0; d < dim; ++d) {
        cat.context_features(row, d) = uniform01(rng);
        cat.reward_features(row, d) = uniform01(rng);
      }
      ++row;
    }
  }
  cat.build_genre_index();
  return cat;
}

}  // namespace

TEST_CASE("sample_synthetic_means draws a uniform table") {
  Rng rng = make_stream(1, 0, "envs");
  auto model = sample_synthetic_means(rng, 5, 5);
  REQUIRE(model.table().rows() == 5);
  REQUIRE(model.table().cols() == 5);
  REQUIRE((model.table().array() >= 0.0).all());
  REQUIRE((model.table().array() <= 1.0).all());

  Rng tiny = make_stream(1, 0, "envs-tiny");
  auto one = sample_synthetic_means(tiny, 1, 1);
  REQUIRE(one.table().size() == 1);
  REQUIRE(one.table()(0, 0) >= 0.0);
  REQUIRE(one.table()(0, 0) <= 1.0);

  Rng r1 = make_stream(9, 2, "envs");
  Rng r2 = make_stream(9, 2, "envs");
  REQUIRE(sample_synthetic_means(r1, 3, 4).table() == sample_synthetic_means(r2, 3, 4).table());
}

TEST_CASE("step_latent fixed-period schedule advances cyclically") {
  Rng rng = make_stream(2, 0, "envs");
  LatentSchedule fixed = FixedPeriodSchedule{200};
  REQUIRE(step_latent(0, fixed, 200, rng, 5) == 1);
  REQUIRE(step_latent(0, fixed, 199, rng, 5) == 0);
  REQUIRE(step_latent(4, fixed, 400, rng, 5) == 0);  // wraps around

  // Simulated run matches the closed-form segment count.
  for (int period : {1, 3, 200}) {
    for (int n : {1, 5, 200, 2000}) {
      std::vector<StateId> states;
      StateId s = 0;
      for (long t = 1; t <= n; ++t) {
        states.push_back(s);
        s = step_latent(s, LatentSchedule{FixedPeriodSchedule{period}}, t, rng, 5);
      }
      REQUIRE(segment_count(states) == std::min(1 + (n - 1) / period, 1 + (n - 1)));
    }
  }
}

TEST_CASE("step_latent stochastic schedule") {
  Rng rng = make_stream(3, 0, "envs");

  SECTION("absorbing self row never moves") {
    Eigen::MatrixXd m(2, 2);
    m << 1.0, 0.0, 0.3, 0.7;
    LatentSchedule sched = StochasticSchedule{TransitionMatrix(m)};
    for (int i = 0; i < 100; ++i) REQUIRE(step_latent(0, sched, i + 1, rng, 2) == 0);
  }

  SECTION("uniform change of 0.0025 per alternative flips about 1% of steps") {
    LatentSchedule sched = StochasticSchedule{TransitionMatrix::uniform_change(5, 0.0025)};
    const long n = 1000000;
    long changes = 0;
    StateId s = 0;
    for (long t = 1; t <= n; ++t) {
      StateId next = step_latent(s, sched, t, rng, 5);
      if (next != s) ++changes;
      s = next;
    }
    double freq = static_cast<double>(changes) / n;
    REQUIRE(freq == Catch::Approx(0.01).margin(3 * std::sqrt(0.01 * 0.99 / n)));
  }

  SECTION("long-run frequencies match the stationary distribution") {
    // Uniform-change kernel is doubly stochastic, so stationary = uniform.
    LatentSchedule sched = StochasticSchedule{TransitionMatrix::uniform_change(5, 0.02)};
    const long n = 1000000;
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(5);
    StateId s = 0;
    for (long t = 1; t <= n; ++t) {
      counts[s] += 1.0;
      s = step_latent(s, sched, t, rng, 5);
    }
    double expected = static_cast<double>(n) / 5;
    double chi2 = ((counts.array() - expected).square() / expected).sum();
    // 0.99 quantile of chi-square with 4 dof; correlated draws inflate the
    // statistic, so allow slack via an effective sample size of n/50.
    double scale = 50.0;
    REQUIRE(chi2 / scale < 13.2767);
  }
}

TEST_CASE("emit_reward") {
  Rng rng = make_stream(4, 0, "envs");
  Eigen::MatrixXd table(2, 1);
  table << 0.3, 0.8;
  auto model = MeanRewardModel::tabular(table);
  Context x = Context::context_free(2);

  SECTION("noiseless limit returns the mean") {
    REQUIRE(emit_reward(model, 0, x, 0, 0.0, rng) == 0.3);
  }

  SECTION("sample mean within CLT bound") {
    const int n = 100000;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += emit_reward(model, 0, x, 0, 0.5, rng);
    REQUIRE(acc / n == Catch::Approx(0.3).margin(0.01));
  }

  SECTION("empirical variance within 5% of sigma^2") {
    const int n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
      double r = emit_reward(model, 1, x, 0, 0.5, rng);
      sum += r;
      sumsq += r * r;
    }
    double var = sumsq / n - (sum / n) * (sum / n);
    REQUIRE(var == Catch::Approx(0.25).epsilon(0.05));
  }

  SECTION("linear kind takes the dot product") {
    Eigen::MatrixXd feats(1, 2);
    feats << 1.0, 0.0;
    Context ctx(feats);
    auto lin = MeanRewardModel::linear({Eigen::Vector2d(0.7, 0.3)});
    REQUIRE(emit_reward(lin, 0, ctx, 0, 0.0, rng) == Catch::Approx(0.7));
  }
}

TEST_CASE("build_superuser_transition") {
  SECTION("identical state vectors make the similarity kernel uniform") {
    Eigen::MatrixXd u = Eigen::MatrixXd::Ones(4, 3);
    auto phi = build_superuser_transition(u, 0.01);
    for (int s = 0; s < 4; ++s) {
      REQUIRE(phi(s, s) == Catch::Approx(0.9 * 0.99 + 0.1 * 0.25).margin(1e-12));
      REQUIRE(phi(s, (s + 1) % 4) == Catch::Approx(0.9 * (0.01 / 3) + 0.1 * 0.25).margin(1e-12));
    }
  }

  SECTION("tiny change probability with uniform kernel") {
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(5, 2);
    auto phi = build_superuser_transition(u, 1e-12);
    REQUIRE(phi(2, 2) == Catch::Approx(0.9 + 0.1 / 5).margin(1e-9));
  }

  SECTION("matches the direct formula on an arbitrary 3-state instance") {
    Eigen::MatrixXd u(3, 2);
    u << 0.0, 0.0, 1.0, 0.0, 0.0, 2.0;
    double p = 0.3;
    auto phi = build_superuser_transition(u, p);
    for (int r = 0; r < 3; ++r) {
      Eigen::Vector3d k;
      for (int c = 0; c < 3; ++c) k[c] = std::exp(-(u.row(c) - u.row(r)).squaredNorm());
      k /= k.sum();
      for (int c = 0; c < 3; ++c) {
        double j = (r == c) ? 1.0 - p : p / 2;
        REQUIRE(phi(r, c) == Catch::Approx(0.9 * j + 0.1 * k[c]).margin(1e-12));
      }
      REQUIRE(phi.matrix().row(r).sum() == Catch::Approx(1.0).margin(1e-12));
    }
  }

  SECTION("row sums hold across random instances") {
    Rng rng = make_stream(5, 0, "envs");
    for (int trial = 0; trial < 1000; ++trial) {
      int s = 2 + static_cast<int>(uniform01(rng) * 4);
      Eigen::MatrixXd u(s, 3);
      for (int i = 0; i < u.size(); ++i) u.data()[i] = 4.0 * uniform01(rng) - 2.0;
      auto phi = build_superuser_transition(u, 0.001 + 0.9 * uniform01(rng));
      for (int r = 0; r < s; ++r)
        REQUIRE(std::abs(phi.matrix().row(r).sum() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("sample_movie_context") {
  Rng rng = make_stream(6, 0, "envs");

  SECTION("forced permutation when genres exactly cover the slate") {
    auto cat = toy_catalog(20, 1, 4, rng);
    auto sample = sample_movie_context(cat, 20, rng);
    std::set<int> rows(sample.movie_rows.begin(), sample.movie_rows.end());
    REQUIRE(rows.size() == 20);
    REQUIRE(sample.context.num_arms() == 20);
    REQUIRE(sample.context.dim() == 4);
  }

  SECTION("deterministic under a fixed seed") {
    auto cat = toy_catalog(25, 3, 4, rng);
    Rng r1 = make_stream(77, 1, "ctx");
    Rng r2 = make_stream(77, 1, "ctx");
    auto s1 = sample_movie_context(cat, 20, r1);
    auto s2 = sample_movie_context(cat, 20, r2);
    REQUIRE(s1.movie_rows == s2.movie_rows);
    REQUIRE(s1.context.arm_features == s2.context.arm_features);
  }

  SECTION("too few genres is a configuration error") {
    auto cat = toy_catalog(10, 2, 4, rng);
    REQUIRE_THROWS_AS(sample_movie_context(cat, 20, rng), std::invalid_argument);
  }

  SECTION("genre inclusion frequency is 20/G within binomial noise") {
    const int G = 30;
    auto cat = toy_catalog(G, 2, 3, rng);
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(G);
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
      auto sample = sample_movie_context(cat, 20, rng);
      for (int row : sample.movie_rows) counts[cat.movie_genres[static_cast<std::size_t>(row)][0]] += 1.0;
    }
    double p = 20.0 / G;
    double se = std::sqrt(p * (1 - p) / draws);
    for (int g = 0; g < G; ++g)
      REQUIRE(counts[g] / draws == Catch::Approx(p).margin(3.5 * se));
  }
}

TEST_CASE("SyntheticEnv runs the interaction protocol") {
  Rng rng = make_stream(21, 0, "envs");
  SyntheticEnvConfig cfg;
  cfg.arms = 3;
  cfg.states = 2;
  cfg.sigma = 0.5;
  cfg.schedule = FixedPeriodSchedule{2};
  Eigen::MatrixXd table(3, 2);
  table << 0.1, 0.9, 0.5, 0.2, 0.8, 0.4;
  SyntheticEnv env(cfg, MeanRewardModel::tabular(table), 0, make_stream(1, 1, "env"));

  std::vector<StateId> states;
  for (int t = 1; t <= 6; ++t) {
    Context x = env.next_context();
    REQUIRE(x.num_arms() == 3);
    states.push_back(env.state());
    auto means = env.true_means();
    REQUIRE(means == table.col(env.state()));
    env.pull(0);
    env.advance();
  }
  REQUIRE(states == std::vector<StateId>{0, 0, 1, 1, 0, 0});
}

TEST_CASE("SuperuserEnv rewards use held-out features of the active state") {
  Rng rng = make_stream(22, 0, "envs");
  auto cat = std::make_shared<MovieCatalog>(toy_catalog(20, 2, 3, rng));
  SuperuserEnvConfig cfg;
  cfg.catalog = cat;
  cfg.arms_per_round = 20;
  cfg.reward_variance = 0.25;
  Eigen::MatrixXd users(2, 3);
  users << 1.0, 0.0, 0.0, 0.0, 1.0, 0.0;
  cfg.state_user_vectors = users;
  cfg.transition = TransitionMatrix::uniform_change(2, 0.1);

  SuperuserEnv env(cfg, 0, make_stream(5, 2, "env"));
  Context x = env.next_context();
  REQUIRE(x.num_arms() == 20);
  auto means = env.true_means();
  for (int a = 0; a < 20; ++a) {
    int row = -1;
    // Rewards come from reward_features, not the context the agent sees.
    for (int m = 0; m < cat->num_movies(); ++m)
      if (cat->context_features.row(m) == x.arm_features.row(a)) row = m;
    REQUIRE(row >= 0);
    REQUIRE(means[a] == Catch::Approx(cat->reward_features(row, 0)));
  }
}
