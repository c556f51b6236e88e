#pragma once

#include "revmc/dirichlet.hpp"
#include "revmc/hilbert.hpp"
#include "revmc/kernel.hpp"
#include "revmc/random.hpp"

namespace revmc {

/// rho_right at or below this value: Var(P,h) is treated as infinite.
inline constexpr double kVarianceBoundingThreshold = 1e-10;
/// rho_right below this value: results are flagged as ill-conditioned.
inline constexpr double kConditioningWarningThreshold = 1e-6;

struct VarianceReport {
  double value = 0.0;           ///< 2<h0,(I-P)^{-1}h0> - <h0,h0>
  double h_variance = 0.0;      ///< <h0,h0>
  double spectral_value = 0.0;  ///< sum over mean-zero atoms of a_i^2 (1+l_i)/(1-l_i)
  double upper_bound = 0.0;     ///< (1+l_max)/(1-l_max) <h0,h0>
  bool variance_bounding = true;
  bool conditioning_warning = false;
};

bool is_variance_bounding(const ReversiblePair& pair);

/// Mean-zero solution u of (I-P)u = f0, with f0 the centred right-hand side.
/// Solves the augmented system (I - P + 1 pi^T) u = f0, which is equivalent to
/// the Poisson equation with <u,1> = 0. Throws NotVarianceBoundingError when
/// rho_right <= 1e-10 and ConsistencyError if the residual exceeds 1e-10.
Observable solve_poisson(const ReversiblePair& pair, const Observable& f);

/// Exact asymptotic variance of the ergodic average of h under stationarity.
/// h is centred internally.
VarianceReport asymptotic_variance(const ReversiblePair& pair, const Observable& h);

/// <h0,(I+P)(I-P)^{-1}h0>, the product form of the same quantity.
double asymptotic_variance_product_form(const ReversiblePair& pair, const Observable& h);

/// 2<f,g> - <g,(I-P)g>
double inverse_form_objective(const ReversiblePair& pair, const Observable& f,
                              const Observable& g);

struct InverseFormReport {
  double sup_estimate = 0.0;      ///< best objective over the random trial functions
  double exact = 0.0;             ///< <f,(I-P)^{-1}f>
  double optimizer_defect = 0.0;  ///< |objective((I-P)^{-1}f) - exact|
};

/// <f,(I-P)^{-1}f> = sup_g 2<f,g> - <g,(I-P)g> over mean-zero g. f must be
/// mean-zero (ArgumentError otherwise).
InverseFormReport variational_inverse_form(const ReversiblePair& pair, const Observable& f,
                                           int trials, RngSeed seed);

struct VarianceOrderingVerdict {
  double var1 = 0.0;
  double var2 = 0.0;
  double h_variance = 0.0;
  double lhs = 0.0;  ///< Var1 + <h0,h0>
  double rhs = 0.0;  ///< (Var2 + <h0,h0>) / gamma, +inf when vacuous
  bool vacuous = false;
  bool peskun_checked = false;  ///< gamma >= 1, so Var1 <= Var2 is also asserted
  bool peskun_pass = true;
  bool pass = false;
};

/// Var1 + <h0,h0> <= (Var2 + <h0,h0>) / gamma + 1e-8. Passes vacuously when
/// gamma = 0 or P2 is not variance bounding.
VarianceOrderingVerdict check_variance_ordering(const ReversiblePair& pair1,
                                                const ReversiblePair& pair2,
                                                const Observable& h,
                                                const OrderingCertificate& cert);

}  // namespace revmc
