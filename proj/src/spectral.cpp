#include "revmc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "revmc/errors.hpp"

namespace revmc {

double SpectralMeasure::total_mass() const {
  double total = 0.0;
  for (const auto& atom : atoms) total += atom.mass;
  return total;
}

double SpectralMeasure::moment(int power) const {
  double total = 0.0;
  for (const auto& atom : atoms) total += atom.mass * std::pow(atom.lambda, power);
  return total;
}

SpectralDecomposition decompose(const ReversiblePair& pair) {
  const auto& pi = pair.pi();
  const Eigen::Index n = pair.size();
  if (!pi.strictly_positive()) {
    throw ArgumentError("spectral decomposition needs pi > 0 on every state");
  }
  const Eigen::VectorXd root = pi.weights().cwiseSqrt();
  const Eigen::VectorXd inv_root = root.cwiseInverse();

  Eigen::MatrixXd S = root.asDiagonal() * pair.matrix() * inv_root.asDiagonal();
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = x + 1; y < n; ++y) {
      // (S_xy - S_yx) sqrt(pi_x pi_y) is the detailed-balance residual.
      const double residual = std::abs(S(x, y) - S(y, x)) * root[x] * root[y];
      if (residual > pair.db_tolerance()) {
        throw ReversibilityError("symmetrized kernel is not symmetric at (" + std::to_string(x) +
                                 "," + std::to_string(y) + ")");
      }
    }
  }
  S = 0.5 * (S + S.transpose()).eval();

  // Householder reflector H with H sqrt(pi) = -e_0; its last n-1 columns are an
  // orthonormal basis of the complement of sqrt(pi), i.e. of L0^2 after scaling.
  Eigen::VectorXd v = root;
  v[0] += 1.0;
  const Eigen::MatrixXd H =
      Eigen::MatrixXd::Identity(n, n) - (2.0 / v.squaredNorm()) * v * v.transpose();
  const Eigen::MatrixXd basis = H.rightCols(n - 1);
  const Eigen::MatrixXd restricted = basis.transpose() * S * basis;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(restricted);
  if (solver.info() != Eigen::Success) {
    throw ConsistencyError("symmetric eigensolver did not converge");
  }

  SpectralDecomposition dec{Eigen::VectorXd(n), Eigen::MatrixXd(n, n), pi};
  dec.eigenvalues[0] = 1.0;
  dec.eigenfunctions.col(0).setOnes();
  const Eigen::MatrixXd vectors = basis * solver.eigenvectors();
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    const Eigen::Index src = n - 2 - k;  // solver sorts ascending
    dec.eigenvalues[k + 1] = solver.eigenvalues()[src];
    dec.eigenfunctions.col(k + 1) = inv_root.cwiseProduct(vectors.col(src));
  }
  return dec;
}

SpectralGapReport gaps(const SpectralDecomposition& dec) {
  SpectralGapReport report;
  const Eigen::Index n = dec.size();
  report.unit_multiplicity = static_cast<int>(
      (dec.eigenvalues.array() > 1.0 - kUnitEigenvalueThreshold).count());
  report.lambda0_max = std::clamp(dec.eigenvalues[1], -1.0, 1.0);
  report.lambda0_min = std::clamp(dec.eigenvalues[n - 1], -1.0, 1.0);
  if (report.unit_multiplicity > 1) report.lambda0_max = 1.0;
  report.rho_right = 1.0 - report.lambda0_max;
  report.rho_left = 1.0 + report.lambda0_min;
  report.lambda_bar = std::max(std::abs(report.lambda0_max), std::abs(report.lambda0_min));
  return report;
}

SpectralMeasure spectral_measure(const SpectralDecomposition& dec, const Observable& f) {
  SpectralMeasure measure;
  measure.atoms.reserve(static_cast<std::size_t>(dec.size()));
  for (Eigen::Index i = 0; i < dec.size(); ++i) {
    const double a = inner(dec.pi, f, dec.eigenfunctions.col(i));
    measure.atoms.push_back({dec.eigenvalues[i], a * a, i != 0});
  }
  return measure;
}

std::vector<DecayStep> decay_bound_check(const ReversiblePair& pair, const Observable& f,
                                         int n_max) {
  if (n_max < 1) throw ArgumentError("decay check needs n_max >= 1");
  const auto& pi = pair.pi();
  const double lambda_bar = gaps(decompose(pair)).lambda_bar;
  Observable current = center(pi, f);
  const double initial = norm(pi, current);

  std::vector<DecayStep> steps;
  steps.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    current = apply(pair.kernel(), current);
    steps.push_back({n, norm(pi, current), std::pow(lambda_bar, n) * initial});
  }
  return steps;
}

}  // namespace revmc
