#pragma once

#include <Eigen/Dense>

#include "revmc/hilbert.hpp"

namespace revmc {

inline constexpr double kRowSumTolerance = 1e-12;
inline constexpr double kDefaultDbTolerance = 1e-10;
inline constexpr double kStationarityTolerance = 1e-10;

/// Row-stochastic matrix; row x is the law of the next state given x.
class TransitionKernel {
 public:
  explicit TransitionKernel(Eigen::MatrixXd matrix);

  static TransitionKernel identity(StateIndex n);

  const Eigen::MatrixXd& matrix() const { return matrix_; }
  StateIndex size() const { return matrix_.rows(); }
  double operator()(StateIndex x, StateIndex y) const { return matrix_(x, y); }

 private:
  Eigen::MatrixXd matrix_;
};

/// Proposal q(x, .) of a propose-accept-reject kernel. Same invariants as
/// TransitionKernel; kept distinct so a proposal is never mistaken for P.
class ProposalKernel {
 public:
  explicit ProposalKernel(Eigen::MatrixXd matrix) : kernel_(std::move(matrix)) {}

  /// q(x, .) uniform over the other n-1 states.
  static ProposalKernel uniform_others(StateIndex n);

  const Eigen::MatrixXd& matrix() const { return kernel_.matrix(); }
  StateIndex size() const { return kernel_.size(); }

 private:
  TransitionKernel kernel_;
};

/// A kernel together with a law it satisfies detailed balance against.
///
/// The checked constructor throws ReversibilityError when
/// max |pi_x P(x,y) - pi_y P(y,x)| exceeds db_tolerance, or when pi P = pi
/// fails by more than kStationarityTolerance. Values are immutable.
class ReversiblePair {
 public:
  ReversiblePair(TransitionKernel kernel, ProbabilityVector pi,
                 double db_tolerance = kDefaultDbTolerance);

  /// Skips the reversibility checks (dimensions are still verified). Only for
  /// diagnostics on kernels known to be non-reversible.
  static ReversiblePair unchecked(TransitionKernel kernel, ProbabilityVector pi,
                                  double db_tolerance = kDefaultDbTolerance);

  const TransitionKernel& kernel() const { return kernel_; }
  const Eigen::MatrixXd& matrix() const { return kernel_.matrix(); }
  const ProbabilityVector& pi() const { return pi_; }
  double db_tolerance() const { return db_tolerance_; }
  StateIndex size() const { return kernel_.size(); }

 private:
  struct NoCheck {};
  ReversiblePair(TransitionKernel kernel, ProbabilityVector pi, double db_tolerance,
                 NoCheck);

  TransitionKernel kernel_;
  ProbabilityVector pi_;
  double db_tolerance_;
};

/// max over x,y of |pi_x P(x,y) - pi_y P(y,x)|
double check_detailed_balance(const TransitionKernel& P, const ProbabilityVector& pi);

/// Unique pi with pi P = pi, from the singular system (P^T - I) pi = 0 augmented
/// by sum(pi) = 1. Works for periodic chains. Throws NonUniqueStationaryError
/// when the eigenvalue 1 is not simple.
ProbabilityVector find_stationary(const TransitionKernel& P);

/// (Pf)(x) = sum_y P(x,y) f(y)
Observable apply(const TransitionKernel& P, const Observable& f);

/// |<Pf,g> - <f,Pg>| in L2(pi).
double self_adjoint_defect(const ReversiblePair& pair, const Observable& f,
                           const Observable& g);

/// Metropolis-Hastings kernel for target pi and proposal q:
/// P(x,y) = q(x,y) min(1, pi_y q(y,x) / (pi_x q(x,y))) off the diagonal, with
/// the rejected mass 1 - abar(x) kept at x. Requires pi strictly positive.
ReversiblePair build_metropolis_hastings(const ProbabilityVector& pi,
                                         const ProposalKernel& q);

/// (1 - beta) I + beta P, same pi. beta must lie in (0, 1].
ReversiblePair lazy_mixture(const ReversiblePair& pair, double beta);

}  // namespace revmc
