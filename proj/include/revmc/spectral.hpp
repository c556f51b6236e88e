#pragma once

#include <vector>

#include <Eigen/Dense>

#include "revmc/hilbert.hpp"
#include "revmc/kernel.hpp"

namespace revmc {

/// Eigenvalues above 1 - kUnitEigenvalueThreshold count as copies of 1.
inline constexpr double kUnitEigenvalueThreshold = 1e-8;

/// Eigen-decomposition of a reversible kernel in L2(pi).
///
/// Index 0 is always the constant function with eigenvalue 1. The remaining
/// n-1 entries span the mean-zero subspace and are sorted descending.
/// Eigenfunctions are the columns of `eigenfunctions` and are pi-orthonormal.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenfunctions;
  ProbabilityVector pi;

  StateIndex size() const { return eigenvalues.size(); }
};

struct SpectralGapReport {
  double lambda0_max = 0.0;
  double lambda0_min = 0.0;
  double rho_right = 0.0;
  double rho_left = 0.0;
  double lambda_bar = 0.0;
  /// Number of eigenvalues (including the constant one) above 1 - 1e-8.
  int unit_multiplicity = 1;
};

struct SpectralAtom {
  double lambda = 0.0;
  double mass = 0.0;
  /// False only for the atom of the constant eigenfunction.
  bool mean_zero = true;
};

/// Discrete spectral measure of an observable: mass <f,e_i>^2 at lambda_i.
struct SpectralMeasure {
  std::vector<SpectralAtom> atoms;

  double total_mass() const;
  /// sum_i mass_i lambda_i^power, which equals <f, P^power f>.
  double moment(int power) const;
};

struct DecayStep {
  int n = 0;
  double lhs = 0.0;  ///< ||P^n f0||
  double rhs = 0.0;  ///< lambda_bar^n ||f0||
  bool holds(double slack = 1e-10) const { return lhs <= rhs + slack; }
};

/// Symmetrizes S = D^{1/2} P D^{-1/2} with D = diag(pi) and diagonalizes it
/// on the orthogonal complement of sqrt(pi). Throws ArgumentError if some
/// pi_i is zero and ReversibilityError if S is not symmetric to db_tolerance.
SpectralDecomposition decompose(const ReversiblePair& pair);

SpectralGapReport gaps(const SpectralDecomposition& dec);

SpectralMeasure spectral_measure(const SpectralDecomposition& dec, const Observable& f);

/// Compares ||P^n f0|| against lambda_bar^n ||f0|| for n = 1..n_max.
std::vector<DecayStep> decay_bound_check(const ReversiblePair& pair, const Observable& f,
                                         int n_max);

}  // namespace revmc
