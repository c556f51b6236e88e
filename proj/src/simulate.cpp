#include "revmc/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "revmc/errors.hpp"
#include "revmc/variance.hpp"

namespace revmc {

namespace {

// Cumulative table for inverse-CDF sampling from one discrete law.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(const Eigen::VectorXd& weights)
      : cumulative_(static_cast<std::size_t>(weights.size())) {
    double running = 0.0;
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
      running += weights[i];
      cumulative_[static_cast<std::size_t>(i)] = running;
      if (weights[i] > 0.0) last_positive_ = i;
    }
  }

  StateIndex draw(double u) const {
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) return last_positive_;  // u beyond a rounded total
    return static_cast<StateIndex>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
  StateIndex last_positive_ = 0;
};

}  // namespace

Trajectory sample_trajectory(const ReversiblePair& pair, std::size_t n, RngSeed seed,
                             InitialLaw initial_law) {
  if (n < 1) throw ArgumentError("trajectory length must be at least 1");
  const StateIndex states = pair.size();
  if (!initial_law.is_stationary() &&
      (initial_law.state() < 0 || initial_law.state() >= states)) {
    throw ArgumentError("initial state " + std::to_string(initial_law.state()) +
                        " out of range");
  }

  std::vector<DiscreteSampler> rows;
  rows.reserve(static_cast<std::size_t>(states));
  for (StateIndex x = 0; x < states; ++x) {
    rows.emplace_back(pair.matrix().row(x).transpose());
  }

  auto rng = make_stream(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  Trajectory traj{std::vector<StateIndex>(n), states, seed, initial_law};
  StateIndex current = initial_law.is_stationary()
                           ? DiscreteSampler(pair.pi().weights()).draw(uniform(rng))
                           : initial_law.state();
  traj.states[0] = current;
  for (std::size_t t = 1; t < n; ++t) {
    current = rows[static_cast<std::size_t>(current)].draw(uniform(rng));
    traj.states[t] = current;
  }
  return traj;
}

std::vector<Trajectory> sample_replicates(const ReversiblePair& pair, std::size_t n,
                                          RngSeed seed, InitialLaw initial_law,
                                          std::size_t count) {
  std::vector<Trajectory> out(count);
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(count, 1));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t r = w; r < count; r += workers) {
        out[r] = sample_trajectory(pair, n, RngSeed{seed.value + r}, initial_law);
      }
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

double ergodic_average(const Trajectory& traj, const Observable& h) {
  if (h.size() != traj.state_count) {
    throw ArgumentError("observable has " + std::to_string(h.size()) +
                        " entries, trajectory has " + std::to_string(traj.state_count) +
                        " states");
  }
  if (traj.states.empty()) throw ArgumentError("empty trajectory");
  double total = 0.0;
  for (StateIndex x : traj.states) total += h[x];
  return total / static_cast<double>(traj.states.size());
}

BatchMeansEstimate empirical_asymptotic_variance(const Trajectory& traj, const Observable& h) {
  if (h.size() != traj.state_count) {
    throw ArgumentError("observable length does not match the trajectory's state count");
  }
  const std::size_t n = traj.states.size();
  if (n < 100) throw ArgumentError("batch means needs at least 100 steps");

  BatchMeansEstimate est;
  est.batch_length = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
  est.batch_count = n / est.batch_length;

  std::vector<double> means(est.batch_count);
  for (std::size_t b = 0; b < est.batch_count; ++b) {
    double total = 0.0;
    for (std::size_t t = b * est.batch_length; t < (b + 1) * est.batch_length; ++t) {
      total += h[traj.states[t]];
    }
    means[b] = total / static_cast<double>(est.batch_length);
  }
  double grand = 0.0;
  for (double m : means) grand += m;
  grand /= static_cast<double>(est.batch_count);
  double spread = 0.0;
  for (double m : means) spread += (m - grand) * (m - grand);
  const double dof = static_cast<double>(est.batch_count - 1);

  est.estimate = static_cast<double>(est.batch_length) * spread / dof;
  est.standard_error = est.estimate * std::sqrt(2.0 / dof);
  return est;
}

EmpiricalCheck empirical_vs_exact(const ReversiblePair& pair, const Observable& h,
                                  std::size_t n, RngSeed seed, double rel_tol) {
  if (n < 10000) throw ArgumentError("simulation cross-check needs at least 10^4 steps");
  EmpiricalCheck check;
  check.exact = asymptotic_variance(pair, h).value;  // refuses non-variance-bounding kernels
  check.batch = empirical_asymptotic_variance(sample_trajectory(pair, n, seed), h);
  check.empirical = check.batch.estimate;
  check.standard_error = check.batch.standard_error;
  check.tolerance = rel_tol * std::max(check.exact, 0.01 * variance(pair.pi(), h)) +
                    3.0 * check.standard_error;
  check.pass = std::abs(check.empirical - check.exact) <= check.tolerance;
  return check;
}

}  // namespace revmc
