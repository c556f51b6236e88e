#pragma once

#include <initializer_list>

#include <Eigen/Dense>

namespace revmc {

using StateIndex = Eigen::Index;

/// Real function on the state space, one value per state.
using Observable = Eigen::VectorXd;

Observable observable(std::initializer_list<double> values);

/// Stationary/target law over n >= 2 states. Entries are non-negative and sum
/// to one within 1e-12; the constructor throws ArgumentError otherwise.
class ProbabilityVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit ProbabilityVector(Eigen::VectorXd weights);
  ProbabilityVector(std::initializer_list<double> weights);

  static ProbabilityVector uniform(StateIndex n);

  const Eigen::VectorXd& weights() const { return weights_; }
  StateIndex size() const { return weights_.size(); }
  double operator[](StateIndex i) const { return weights_[i]; }
  bool strictly_positive() const { return weights_.minCoeff() > 0.0; }

 private:
  Eigen::VectorXd weights_;
};

/// <f,g> = sum_i pi_i f_i g_i
double inner(const ProbabilityVector& pi, const Observable& f, const Observable& g);

/// sqrt(<f,f>)
double norm(const ProbabilityVector& pi, const Observable& f);

/// E_pi[f] = <f,1>
double mean(const ProbabilityVector& pi, const Observable& f);

/// Projection onto the mean-zero subspace: f - <f,1> 1.
Observable center(const ProbabilityVector& pi, const Observable& f);

/// Var_pi(f) = <f0,f0> with f0 = center(f).
double variance(const ProbabilityVector& pi, const Observable& f);

}  // namespace revmc
