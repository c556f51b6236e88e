#include "revmc/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "revmc/errors.hpp"

namespace revmc {

namespace {

void require_compatible(const TransitionKernel& P, const ProbabilityVector& pi) {
  if (P.size() != pi.size()) {
    throw ArgumentError("kernel has " + std::to_string(P.size()) + " states but pi has " +
                        std::to_string(pi.size()));
  }
}

double stationarity_defect(const TransitionKernel& P, const ProbabilityVector& pi) {
  const Eigen::RowVectorXd moved = pi.weights().transpose() * P.matrix();
  return (moved - pi.weights().transpose()).cwiseAbs().maxCoeff();
}

}  // namespace

TransitionKernel::TransitionKernel(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw ArgumentError("transition matrix is " + std::to_string(matrix_.rows()) + "x" +
                        std::to_string(matrix_.cols()) + ", not square");
  }
  if (matrix_.rows() < 2) throw ArgumentError("transition matrix needs at least 2 states");
  for (Eigen::Index x = 0; x < matrix_.rows(); ++x) {
    for (Eigen::Index y = 0; y < matrix_.cols(); ++y) {
      if (!std::isfinite(matrix_(x, y)) || matrix_(x, y) < 0.0) {
        throw ArgumentError("entry (" + std::to_string(x) + "," + std::to_string(y) +
                            ") is negative or not finite");
      }
    }
    const double total = matrix_.row(x).sum();
    if (std::abs(total - 1.0) > kRowSumTolerance) {
      throw ArgumentError("row " + std::to_string(x) + " sums to " + std::to_string(total) +
                          ", not 1");
    }
  }
}

TransitionKernel TransitionKernel::identity(StateIndex n) {
  return TransitionKernel(Eigen::MatrixXd::Identity(n, n));
}

ProposalKernel ProposalKernel::uniform_others(StateIndex n) {
  if (n < 2) throw ArgumentError("proposal needs at least 2 states");
  Eigen::MatrixXd q = Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n - 1));
  q.diagonal().setZero();
  return ProposalKernel(std::move(q));
}

ReversiblePair::ReversiblePair(TransitionKernel kernel, ProbabilityVector pi,
                               double db_tolerance, NoCheck)
    : kernel_(std::move(kernel)), pi_(std::move(pi)), db_tolerance_(db_tolerance) {
  require_compatible(kernel_, pi_);
  if (!(db_tolerance_ >= 0.0)) throw ArgumentError("db_tolerance must be non-negative");
}

ReversiblePair::ReversiblePair(TransitionKernel kernel, ProbabilityVector pi,
                               double db_tolerance)
    : ReversiblePair(std::move(kernel), std::move(pi), db_tolerance, NoCheck{}) {
  const double violation = check_detailed_balance(kernel_, pi_);
  if (violation > db_tolerance_) {
    throw ReversibilityError("detailed balance violated by " + std::to_string(violation) +
                             " (tolerance " + std::to_string(db_tolerance_) + ")");
  }
  const double drift = stationarity_defect(kernel_, pi_);
  if (drift > kStationarityTolerance) {
    throw ReversibilityError("pi is not stationary: |pi P - pi| = " + std::to_string(drift));
  }
}

ReversiblePair ReversiblePair::unchecked(TransitionKernel kernel, ProbabilityVector pi,
                                         double db_tolerance) {
  return ReversiblePair(std::move(kernel), std::move(pi), db_tolerance, NoCheck{});
}

double check_detailed_balance(const TransitionKernel& P, const ProbabilityVector& pi) {
  require_compatible(P, pi);
  const Eigen::MatrixXd flow = pi.weights().asDiagonal() * P.matrix();
  return (flow - flow.transpose()).cwiseAbs().maxCoeff();
}

ProbabilityVector find_stationary(const TransitionKernel& P) {
  const Eigen::Index n = P.size();
  Eigen::MatrixXd system(n + 1, n);
  system.topRows(n) = P.matrix().transpose() - Eigen::MatrixXd::Identity(n, n);
  system.row(n).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs[n] = 1.0;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(system);
  qr.setThreshold(1e-10);
  if (qr.rank() < n) {
    throw NonUniqueStationaryError("stationary distribution is not unique: eigenvalue 1 of P "
                                   "has multiplicity " +
                                   std::to_string(n + 1 - qr.rank()));
  }
  Eigen::VectorXd pi = qr.solve(rhs);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (pi[i] < -1e-10) {
      throw ConsistencyError("stationary solve produced negative mass at state " +
                             std::to_string(i));
    }
    pi[i] = std::max(pi[i], 0.0);
  }
  pi /= pi.sum();
  return ProbabilityVector(std::move(pi));
}

Observable apply(const TransitionKernel& P, const Observable& f) {
  if (f.size() != P.size()) {
    throw ArgumentError("observable has " + std::to_string(f.size()) + " entries, kernel has " +
                        std::to_string(P.size()) + " states");
  }
  return P.matrix() * f;
}

double self_adjoint_defect(const ReversiblePair& pair, const Observable& f,
                           const Observable& g) {
  const auto& pi = pair.pi();
  return std::abs(inner(pi, apply(pair.kernel(), f), g) - inner(pi, f, apply(pair.kernel(), g)));
}

ReversiblePair build_metropolis_hastings(const ProbabilityVector& pi, const ProposalKernel& q) {
  const Eigen::Index n = pi.size();
  if (q.size() != n) {
    throw ArgumentError("proposal has " + std::to_string(q.size()) + " states but pi has " +
                        std::to_string(n));
  }
  if (!pi.strictly_positive()) {
    throw ArgumentError("Metropolis-Hastings target must be strictly positive");
  }
  const Eigen::MatrixXd& Q = q.matrix();
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    double accepted = 0.0;
    for (Eigen::Index y = 0; y < n; ++y) {
      if (y == x || Q(x, y) == 0.0) continue;
      // pi_x P(x,y) = min(pi_x q(x,y), pi_y q(y,x)) is symmetric in (x,y);
      // a one-way proposal gives zero flow both ways.
      const double flow = std::min(pi[x] * Q(x, y), pi[y] * Q(y, x));
      P(x, y) = std::min(Q(x, y), flow / pi[x]);
      accepted += P(x, y);
    }
    P(x, x) = std::max(0.0, 1.0 - accepted);
  }
  return ReversiblePair(TransitionKernel(std::move(P)), pi);
}

ReversiblePair lazy_mixture(const ReversiblePair& pair, double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw ArgumentError("lazy mixture weight must lie in (0, 1], got " + std::to_string(beta));
  }
  Eigen::MatrixXd P = beta * pair.matrix();
  P.diagonal().array() += 1.0 - beta;
  return ReversiblePair(TransitionKernel(std::move(P)), pair.pi(), pair.db_tolerance());
}

}  // namespace revmc
