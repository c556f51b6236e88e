#pragma once

#include <cmath>

#include "revmc/kernel.hpp"

namespace revmc::testing {

/// Two-state flip chain [[0,1],[1,0]], pi = (1/2, 1/2).
inline ReversiblePair flip() {
  Eigen::MatrixXd P(2, 2);
  P << 0.0, 1.0, 1.0, 0.0;
  return ReversiblePair(TransitionKernel(P), ProbabilityVector{0.5, 0.5});
}

/// [[0.7,0.3],[0.6,0.4]], pi = (2/3, 1/3).
inline ReversiblePair lazy2() {
  Eigen::MatrixXd P(2, 2);
  P << 0.7, 0.3, 0.6, 0.4;
  return ReversiblePair(TransitionKernel(P), ProbabilityVector{2.0 / 3.0, 1.0 / 3.0});
}

/// Metropolis-Hastings for pi = (0.2, 0.3, 0.5) with a uniform proposal.
inline ReversiblePair mh3() {
  return build_metropolis_hastings(ProbabilityVector{0.2, 0.3, 0.5},
                                   ProposalKernel::uniform_others(3));
}

inline ReversiblePair identity_chain(StateIndex n) {
  return ReversiblePair(TransitionKernel::identity(n), ProbabilityVector::uniform(n));
}

/// Unit mean-zero function for pi = (2/3, 1/3).
inline Observable lazy2_unit() {
  return observable({1.0 / std::sqrt(2.0), -std::sqrt(2.0)});
}

}  // namespace revmc::testing
