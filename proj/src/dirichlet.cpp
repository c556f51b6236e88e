#include "revmc/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "revmc/errors.hpp"
#include "revmc/spectral.hpp"

namespace revmc {

double dirichlet_form_operator(const ReversiblePair& pair, const Observable& f) {
  const auto& pi = pair.pi();
  return inner(pi, f, f) - inner(pi, f, apply(pair.kernel(), f));
}

double dirichlet_form_edge(const ReversiblePair& pair, const Observable& f) {
  const auto& pi = pair.pi();
  if (f.size() != pair.size()) {
    throw ArgumentError("observable has " + std::to_string(f.size()) + " entries, expected " +
                        std::to_string(pair.size()));
  }
  const auto& P = pair.matrix();
  double total = 0.0;
  for (Eigen::Index x = 0; x < P.rows(); ++x) {
    double row = 0.0;
    for (Eigen::Index y = 0; y < P.cols(); ++y) {
      const double jump = f[y] - f[x];
      row += P(x, y) * jump * jump;
    }
    total += pi[x] * row;
  }
  return 0.5 * total;
}

double dirichlet_form(const ReversiblePair& pair, const Observable& f) {
  const double edge = dirichlet_form_edge(pair, f);
  const double op = dirichlet_form_operator(pair, f);
  const double scale = std::max(1.0, inner(pair.pi(), f, f));
  if (std::abs(edge - op) > 1e-8 * scale) {
    throw ConsistencyError("Dirichlet form mismatch: edge sum " + std::to_string(edge) +
                           " vs operator form " + std::to_string(op));
  }
  return edge;
}

Observable random_unit_mean_zero(const ProbabilityVector& pi, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Observable f(pi.size());
  for (;;) {
    for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = normal(rng);
    f = center(pi, f);
    const double length = norm(pi, f);
    if (length > 1e-8) return f / length;
  }
}

VariationalGap variational_right_gap(const ReversiblePair& pair, int trials, RngSeed seed) {
  if (trials < 1) throw ArgumentError("variational gap needs at least one trial");
  const SpectralDecomposition dec = decompose(pair);
  VariationalGap result;
  result.exact = gaps(dec).rho_right;
  result.estimate = dirichlet_form(pair, dec.eigenfunctions.col(1));
  for (int k = 0; k < trials; ++k) {
    auto rng = make_stream(seed, static_cast<std::uint64_t>(k));
    const Observable f = random_unit_mean_zero(pair.pi(), rng);
    result.estimate = std::min(result.estimate, dirichlet_form(pair, f));
  }
  return result;
}

bool OrderingCertificate::unbounded() const { return std::isinf(gamma); }

OrderingCertificate flow_gamma(const ReversiblePair& pair1, const ReversiblePair& pair2) {
  if (pair1.size() != pair2.size()) {
    throw ArgumentError("kernels have different state counts");
  }
  const double pi_gap =
      (pair1.pi().weights() - pair2.pi().weights()).cwiseAbs().maxCoeff();
  if (pi_gap > 1e-10) {
    throw ArgumentError("kernels do not share a stationary law (max difference " +
                        std::to_string(pi_gap) + ")");
  }
  const auto& pi = pair1.pi();
  OrderingCertificate cert;
  cert.gamma = std::numeric_limits<double>::infinity();
  for (Eigen::Index x = 0; x < pair1.size(); ++x) {
    for (Eigen::Index y = 0; y < pair1.size(); ++y) {
      if (x == y) continue;
      const double mu2 = pi[x] * pair2.matrix()(x, y);
      if (mu2 <= 0.0) continue;
      const double ratio = pi[x] * pair1.matrix()(x, y) / mu2;
      if (ratio < cert.gamma) {
        cert.gamma = ratio;
        cert.witness = std::pair{x, y};
      }
    }
  }
  return cert;
}

GapOrderingVerdict check_gap_ordering(const ReversiblePair& pair1, const ReversiblePair& pair2,
                                      const OrderingCertificate& cert) {
  GapOrderingVerdict verdict;
  verdict.rho1 = gaps(decompose(pair1)).rho_right;
  if (cert.unbounded()) {
    // E_{P2} is identically zero, so rho2 = 0 and the bound is empty.
    verdict.gamma_rho2 = 0.0;
    verdict.pass = true;
    return verdict;
  }
  verdict.gamma_rho2 = cert.gamma * gaps(decompose(pair2)).rho_right;
  verdict.pass = verdict.rho1 >= verdict.gamma_rho2 - 1e-8;
  return verdict;
}

}  // namespace revmc
