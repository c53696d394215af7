#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string_view>

#include <Eigen/Dense>

namespace nslb {

using Rng = std::mt19937_64;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

// Independent named stream derived from (base_seed, run_index, stream name).
// Streams with different names or indices never collide in practice, so every
// run can draw environment and agent randomness from separate generators.
inline Rng make_stream(std::uint64_t base_seed, std::uint64_t run_index, std::string_view stream) {
  std::uint64_t h = detail::fnv1a(stream);
  h = detail::splitmix64(h ^ detail::splitmix64(base_seed));
  h = detail::splitmix64(h ^ detail::splitmix64(run_index + 0x51ed270b2a2fULL));
  return Rng(h);
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline double normal_sample(Rng& rng, double mean, double sd) {
  return mean + sd * std::normal_distribution<double>(0.0, 1.0)(rng);
}

// Inverse-CDF draw from a normalized probability vector. Consumes exactly one
// uniform; ties and float residue resolve to the last positive entry.
inline int sample_categorical(Rng& rng, const Eigen::VectorXd& probs) {
  if (probs.size() == 0) throw std::invalid_argument("sample_categorical: empty vector");
  double u = uniform01(rng);
  double acc = 0.0;
  int last_positive = 0;
  for (int i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) last_positive = i;
    acc += probs[i];
    if (u < acc) return probs[i] > 0.0 ? i : last_positive;
  }
  return last_positive;
}

inline double gamma_sample(Rng& rng, double shape) {
  return std::gamma_distribution<double>(shape, 1.0)(rng);
}

inline Eigen::VectorXd dirichlet_sample(Rng& rng, const Eigen::VectorXd& alpha) {
  Eigen::VectorXd g(alpha.size());
  double total = 0.0;
  for (int i = 0; i < alpha.size(); ++i) {
    if (!(alpha[i] > 0.0)) throw std::invalid_argument("dirichlet_sample: alpha must be positive");
    g[i] = gamma_sample(rng, alpha[i]);
    total += g[i];
  }
  if (total <= 0.0) {
    // All gammas underflowed; fall back to the mode of the largest alpha.
    int imax = 0;
    alpha.maxCoeff(&imax);
    g.setZero();
    g[imax] = 1.0;
    return g;
  }
  return g / total;
}

inline double log_sum_exp(const Eigen::VectorXd& v) {
  if (v.size() == 0) return -std::numeric_limits<double>::infinity();
  double m = v.maxCoeff();
  if (!std::isfinite(m)) return m;
  double s = (v.array() - m).exp().sum();
  return m + std::log(s);
}

// exp-normalize with max shift; tolerates -inf entries, throws if all are.
inline Eigen::VectorXd softmax_from_log(const Eigen::VectorXd& logv) {
  double m = logv.maxCoeff();
  if (!std::isfinite(m)) throw std::domain_error("softmax_from_log: no finite log mass");
  Eigen::VectorXd w = (logv.array() - m).exp();
  return w / w.sum();
}

inline double gaussian_loglik(double x, double mean, double sd) {
  static const double kLogSqrt2Pi = 0.9189385332046727;
  double z = (x - mean) / sd;
  return -0.5 * z * z - std::log(sd) - kLogSqrt2Pi;
}

}  // namespace nslb
