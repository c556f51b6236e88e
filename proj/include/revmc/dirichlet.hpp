#pragma once

#include <optional>
#include <random>
#include <utility>

#include "revmc/hilbert.hpp"
#include "revmc/kernel.hpp"
#include "revmc/random.hpp"

namespace revmc {

/// <f,(I-P)f>
double dirichlet_form_operator(const ReversiblePair& pair, const Observable& f);

/// 1/2 sum_{x,y} pi_x P(x,y) (f_y - f_x)^2
double dirichlet_form_edge(const ReversiblePair& pair, const Observable& f);

/// Dirichlet form E_P(f). Evaluates both expressions above and returns the
/// edge-sum value; throws ConsistencyError when they differ by more than
/// 1e-8 max(1, ||f||^2), which happens only if pi is not stationary for P.
double dirichlet_form(const ReversiblePair& pair, const Observable& f);

/// Standard-normal vector, centred and scaled to unit pi-norm.
Observable random_unit_mean_zero(const ProbabilityVector& pi, std::mt19937_64& rng);

struct VariationalGap {
  double estimate = 0.0;  ///< min of E_P(f) over the trial functions
  double exact = 0.0;     ///< rho_right from the eigendecomposition
};

/// Right gap as the infimum of E_P(f) over unit mean-zero f. Trial k uses the
/// stream make_stream(seed, k); the top mean-zero eigenfunction is always
/// included so the minimum is attained.
VariationalGap variational_right_gap(const ReversiblePair& pair, int trials, RngSeed seed);

/// gamma with E_{P1}(f) >= gamma E_{P2}(f) for every f, read off the
/// off-diagonal flows pi_x P_i(x,y).
struct OrderingCertificate {
  double gamma = 0.0;
  /// (x,y) attaining the minimum flow ratio; empty when unbounded.
  std::optional<std::pair<StateIndex, StateIndex>> witness;

  /// P2 has no off-diagonal flow at all, so E_{P2} vanishes identically.
  bool unbounded() const;
};

/// gamma = min over x != y with mu2(x,y) > 0 of mu1(x,y) / mu2(x,y).
/// Throws ArgumentError when the two laws differ by more than 1e-10.
OrderingCertificate flow_gamma(const ReversiblePair& pair1, const ReversiblePair& pair2);

struct GapOrderingVerdict {
  double rho1 = 0.0;
  double gamma_rho2 = 0.0;
  bool pass = false;
};

/// rho_right(P1) >= gamma rho_right(P2) - 1e-8
GapOrderingVerdict check_gap_ordering(const ReversiblePair& pair1, const ReversiblePair& pair2,
                                      const OrderingCertificate& cert);

}  // namespace revmc
