#pragma once

#include <cstddef>
#include <vector>

#include "revmc/hilbert.hpp"
#include "revmc/kernel.hpp"
#include "revmc/random.hpp"

namespace revmc {

/// Law of X_0: either pi or a fixed state.
class InitialLaw {
 public:
  static InitialLaw stationary() { return InitialLaw{true, 0}; }
  static InitialLaw fixed(StateIndex state) { return InitialLaw{false, state}; }

  bool is_stationary() const { return stationary_; }
  StateIndex state() const { return state_; }

 private:
  InitialLaw(bool stationary, StateIndex state) : stationary_(stationary), state_(state) {}

  bool stationary_;
  StateIndex state_;
};

struct Trajectory {
  std::vector<StateIndex> states;  ///< X_0 ... X_{n-1}
  StateIndex state_count = 0;
  RngSeed seed;
  InitialLaw initial_law = InitialLaw::stationary();
};

/// n states of the chain. Each draw is an inverse-CDF lookup on a uniform from
/// make_stream(seed); the trajectory depends only on (pair, n, seed, law).
Trajectory sample_trajectory(const ReversiblePair& pair, std::size_t n, RngSeed seed,
                             InitialLaw initial_law = InitialLaw::stationary());

/// `count` independent trajectories; replicate r uses seed + r. Runs on the
/// available hardware threads; output does not depend on the thread count.
std::vector<Trajectory> sample_replicates(const ReversiblePair& pair, std::size_t n,
                                          RngSeed seed, InitialLaw initial_law,
                                          std::size_t count);

/// (1/n) sum_t h(X_t)
double ergodic_average(const Trajectory& traj, const Observable& h);

struct BatchMeansEstimate {
  double estimate = 0.0;
  std::size_t batch_count = 0;
  std::size_t batch_length = 0;
  double standard_error = 0.0;
};

/// Non-overlapping batch means with batch length floor(sqrt(n)). Needs n >= 100.
BatchMeansEstimate empirical_asymptotic_variance(const Trajectory& traj, const Observable& h);

struct EmpiricalCheck {
  double empirical = 0.0;
  double exact = 0.0;
  double standard_error = 0.0;
  double tolerance = 0.0;
  BatchMeansEstimate batch;
  bool pass = false;
};

/// Simulates from pi and compares batch means with the exact variance:
/// |empirical - exact| <= rel_tol max(exact, 0.01 Var_pi(h)) + 3 se.
/// Requires n >= 10^4; throws NotVarianceBoundingError when rho_right ~ 0.
EmpiricalCheck empirical_vs_exact(const ReversiblePair& pair, const Observable& h,
                                  std::size_t n, RngSeed seed, double rel_tol);

}  // namespace revmc
