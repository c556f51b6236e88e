#include "revmc/variance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "revmc/dirichlet.hpp"
#include "revmc/errors.hpp"
#include "revmc/spectral.hpp"

namespace revmc {

namespace {

constexpr double kResidualTolerance = 1e-10;

void require_variance_bounding(const SpectralGapReport& report) {
  if (report.rho_right <= kVarianceBoundingThreshold) {
    throw NotVarianceBoundingError("right spectral gap is " + std::to_string(report.rho_right) +
                                   "; the asymptotic variance may be infinite");
  }
}

Observable solve_centered(const ReversiblePair& pair, const Observable& f0) {
  const Eigen::Index n = pair.size();
  const Eigen::MatrixXd generator = Eigen::MatrixXd::Identity(n, n) - pair.matrix();
  const Eigen::MatrixXd augmented =
      generator + Eigen::VectorXd::Ones(n) * pair.pi().weights().transpose();

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(augmented);
  Observable u = lu.solve(f0);
  u += lu.solve(f0 - augmented * u);  // one refinement step

  // Normwise scale: near-critical chains have huge u and a rounding floor
  // proportional to it.
  const double scale = std::max(
      1.0, f0.cwiseAbs().maxCoeff() + augmented.cwiseAbs().rowwise().sum().maxCoeff() *
                                          u.cwiseAbs().maxCoeff());
  const double residual = (generator * u - f0).cwiseAbs().maxCoeff();
  if (residual > kResidualTolerance * scale) {
    throw ConsistencyError("Poisson solve residual " + std::to_string(residual) +
                           " exceeds tolerance");
  }
  return u;
}

}  // namespace

bool is_variance_bounding(const ReversiblePair& pair) {
  return gaps(decompose(pair)).rho_right > kVarianceBoundingThreshold;
}

Observable solve_poisson(const ReversiblePair& pair, const Observable& f) {
  require_variance_bounding(gaps(decompose(pair)));
  return solve_centered(pair, center(pair.pi(), f));
}

VarianceReport asymptotic_variance(const ReversiblePair& pair, const Observable& h) {
  const auto& pi = pair.pi();
  const SpectralDecomposition dec = decompose(pair);
  const SpectralGapReport gap = gaps(dec);
  require_variance_bounding(gap);

  const Observable h0 = center(pi, h);
  const Observable u = solve_centered(pair, h0);

  VarianceReport report;
  report.h_variance = inner(pi, h0, h0);
  report.value = 2.0 * inner(pi, h0, u) - report.h_variance;
  for (const auto& atom : spectral_measure(dec, h0).atoms) {
    if (!atom.mean_zero) continue;
    report.spectral_value += atom.mass * (1.0 + atom.lambda) / (1.0 - atom.lambda);
  }
  report.upper_bound =
      (1.0 + gap.lambda0_max) / (1.0 - gap.lambda0_max) * report.h_variance;
  report.variance_bounding = true;
  report.conditioning_warning = gap.rho_right < kConditioningWarningThreshold;

  if (std::abs(report.value - report.spectral_value) > 1e-8 * std::max(1.0, report.value)) {
    throw ConsistencyError("asymptotic variance from the Poisson solve (" +
                           std::to_string(report.value) + ") disagrees with the spectral sum (" +
                           std::to_string(report.spectral_value) + ")");
  }
  return report;
}

double asymptotic_variance_product_form(const ReversiblePair& pair, const Observable& h) {
  const Observable h0 = center(pair.pi(), h);
  const Observable u = solve_poisson(pair, h0);
  return inner(pair.pi(), h0, u + apply(pair.kernel(), u));
}

double inverse_form_objective(const ReversiblePair& pair, const Observable& f,
                              const Observable& g) {
  return 2.0 * inner(pair.pi(), f, g) - dirichlet_form_operator(pair, g);
}

InverseFormReport variational_inverse_form(const ReversiblePair& pair, const Observable& f,
                                           int trials, RngSeed seed) {
  const auto& pi = pair.pi();
  if (f.size() != pair.size()) throw ArgumentError("observable has the wrong length");
  if (std::abs(mean(pi, f)) > 1e-10 * std::max(1.0, f.cwiseAbs().maxCoeff())) {
    throw ArgumentError("variational inverse form needs a mean-zero f");
  }
  if (trials < 0) throw ArgumentError("trial count must be non-negative");

  const Observable optimizer = solve_poisson(pair, f);
  InverseFormReport report;
  report.exact = inner(pi, f, optimizer);
  report.optimizer_defect = std::abs(inverse_form_objective(pair, f, optimizer) - report.exact);

  report.sup_estimate = 0.0;  // g = 0
  std::normal_distribution<double> normal;
  for (int k = 0; k < trials; ++k) {
    auto rng = make_stream(seed, static_cast<std::uint64_t>(k));
    Observable g(pair.size());
    for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = normal(rng);
    g = center(pi, g);
    report.sup_estimate = std::max(report.sup_estimate, inverse_form_objective(pair, f, g));
    // Best multiple of the same direction: t = <f,g> / <g,(I-P)g>.
    const double curvature = dirichlet_form_operator(pair, g);
    if (curvature > 0.0) {
      const Observable scaled = (inner(pi, f, g) / curvature) * g;
      report.sup_estimate =
          std::max(report.sup_estimate, inverse_form_objective(pair, f, scaled));
    }
  }
  return report;
}

VarianceOrderingVerdict check_variance_ordering(const ReversiblePair& pair1,
                                                const ReversiblePair& pair2,
                                                const Observable& h,
                                                const OrderingCertificate& cert) {
  VarianceOrderingVerdict verdict;
  verdict.h_variance = variance(pair1.pi(), h);
  constexpr double inf = std::numeric_limits<double>::infinity();

  const bool bounded1 = is_variance_bounding(pair1);
  const bool bounded2 = is_variance_bounding(pair2);
  verdict.var1 = bounded1 ? asymptotic_variance(pair1, h).value : inf;
  verdict.var2 = bounded2 ? asymptotic_variance(pair2, h).value : inf;
  verdict.lhs = verdict.var1 + verdict.h_variance;

  if (cert.gamma <= 0.0 || !bounded2) {
    verdict.vacuous = true;
    verdict.rhs = inf;
    verdict.pass = true;
    return verdict;
  }
  verdict.rhs = (verdict.var2 + verdict.h_variance) / cert.gamma;
  verdict.pass = bounded1 && verdict.lhs <= verdict.rhs + 1e-8;
  if (cert.gamma >= 1.0) {
    verdict.peskun_checked = true;
    verdict.peskun_pass = bounded1 && verdict.var1 <= verdict.var2 + 1e-8;
    verdict.pass = verdict.pass && verdict.peskun_pass;
  }
  return verdict;
}

}  // namespace revmc
