#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "revmc/hilbert.hpp"
#include "revmc/kernel.hpp"
#include "revmc/random.hpp"

namespace revmc {

/// Subset of {0, ..., n-1}.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(StateIndex n);
  StateSet(StateIndex n, std::initializer_list<StateIndex> members);

  /// Bit i of `mask` selects state i. Requires n <= 64.
  static StateSet from_mask(StateIndex n, std::uint64_t mask);

  StateIndex universe_size() const { return static_cast<StateIndex>(members_.size()); }
  bool contains(StateIndex i) const { return members_[static_cast<std::size_t>(i)]; }
  void insert(StateIndex i);
  StateIndex count() const;
  bool proper() const;  ///< neither empty nor everything
  StateSet complement() const;
  std::vector<StateIndex> indices() const;
  std::uint64_t mask() const;  ///< requires n <= 64

  friend bool operator==(const StateSet&, const StateSet&) = default;

  /// Order by bitmask value (state n-1 most significant).
  friend bool operator<(const StateSet& a, const StateSet& b);

 private:
  std::vector<bool> members_;
};

struct SetConductance {
  double kappa = 0.0;       ///< flow(A -> A^c) / pi(A)
  double kappa_star = 0.0;  ///< flow(A -> A^c) / (pi(A) pi(A^c))
};

/// Throws ArgumentError for an empty or full set, or pi(A) = 0.
SetConductance set_conductance(const ReversiblePair& pair, const StateSet& A);

enum class ConductanceMode { exact, sampled };

inline constexpr StateIndex kMaxExactConductanceStates = 24;

struct ConductanceReport {
  double kappa = 0.0;       ///< inf over pi(A) <= 1/2 of kappa(A)
  double kappa_star = 0.0;  ///< inf over all proper A of kappa*(A)
  StateSet argmin_kappa;
  StateSet argmin_kappa_star;
  ConductanceMode mode = ConductanceMode::exact;
  std::uint64_t sets_examined = 0;

  /// Sampled results are only upper bounds on the true infima.
  bool upper_bound_only() const { return mode == ConductanceMode::sampled; }
};

/// Exact mode enumerates the 2^(n-1) - 1 splits {A, A^c} with state 0 in A
/// (n <= 24, SizeError otherwise). Sampled mode draws `samples` uniform random
/// proper subsets. Ties go to the smallest bitmask; for kappa* the reported
/// set is the member of the split that contains state 0.
ConductanceReport kernel_conductance(const ReversiblePair& pair,
                                     ConductanceMode mode = ConductanceMode::exact,
                                     int samples = 0, RngSeed seed = {});

/// f_A = (1_A - pi(A)) / sqrt(pi(A) pi(A^c)); mean-zero with unit norm.
Observable indicator_function(const ProbabilityVector& pi, const StateSet& A);

struct IndicatorCheck {
  double dirichlet = 0.0;
  double kappa_star = 0.0;
  bool holds(double tol = 1e-10) const;
};

/// E_P(f_A) against kappa*(A).
IndicatorCheck indicator_dirichlet_check(const ReversiblePair& pair, const StateSet& A);

/// Both Cheeger bounds plus the sandwich, as signed margins. A margin is
/// "right side minus left side" of the inequality it names; each must be
/// >= -1e-8 for the verdict to pass.
struct CheegerVerdict {
  double rho_right = 0.0;
  double kappa = 0.0;
  double kappa_star = 0.0;
  double gap_below_kappa_star = 0.0;      ///< kappa* - rho_right
  double kappa_star_below_two_kappa = 0.0;  ///< 2 kappa - kappa*
  double gap_above_half_kappa_star_sq = 0.0;  ///< rho_right - kappa*^2 / 2
  double gap_above_half_kappa_sq = 0.0;       ///< rho_right - kappa^2 / 2
  bool pass = false;
};

/// Needs exact conductance, so n <= 24.
CheegerVerdict cheeger_check(const ReversiblePair& pair);

struct LawlerSokalDiagnostic {
  double dirichlet = 0.0;
  double standard_bound = 0.0;  ///< E_mu|g(X)^2 - g(Y)^2|^2 / (8 E_pi g^2)
  double beautiful_lhs = 0.0;   ///< E_mu|g(X)^2 - g(Y)^2|
  double beautiful_rhs = 0.0;   ///< E_{pi x pi}|g(X)^2 - g(Y)^2|
  double kappa_star = 0.0;
  bool standard_holds = false;   ///< dirichlet >= standard_bound - 1e-8
  bool beautiful_holds = false;  ///< beautiful_lhs >= kappa* beautiful_rhs - 1e-8
};

/// Steps of the Lawler-Sokal lower bound evaluated for g = f + c, with mu the
/// edge measure pi_x P(x,y). f must be mean-zero with unit norm.
LawlerSokalDiagnostic lawler_sokal_diagnostic(const ReversiblePair& pair, const Observable& f,
                                              double c);
LawlerSokalDiagnostic lawler_sokal_diagnostic(const ReversiblePair& pair, const Observable& f,
                                              double c, double kappa_star);

struct MomentInequality {
  double abs_square_gap = 0.0;  ///< E|A^2 - B^2|
  double abs_gap = 0.0;         ///< E|A - B|
  double lhs = 0.0;             ///< E|A^2 - B^2| + 4 (E|A - B|)^2
  bool holds = false;           ///< lhs >= 2 - 1e-10
};

/// A, B i.i.d. copies of the standardized f(X), X ~ pi. Exact double sums.
/// Throws ArgumentError when Var_pi(f) is zero.
MomentInequality moment_inequality_check(const ProbabilityVector& pi, const Observable& f);

}  // namespace revmc
