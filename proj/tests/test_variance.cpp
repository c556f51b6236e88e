#include <doctest.h>

#include <cmath>
#include <random>

#include "revmc/errors.hpp"
#include "revmc/spectral.hpp"
#include "revmc/variance.hpp"
#include "support/fixtures.hpp"
#include "support/jacobi_oracle.hpp"
#include "support/random_chains.hpp"

using namespace revmc;
using namespace revmc::testing;

namespace {

ReversiblePair sticky_two_state(double leave) {
  Eigen::MatrixXd P(2, 2);
  P << 1.0 - leave, leave, leave, 1.0 - leave;
  return ReversiblePair(TransitionKernel(P), ProbabilityVector{0.5, 0.5});
}

}  // namespace

TEST_CASE("oracle values for the fixtures") {
  // Frozen from the Neumann-series and Jacobi oracles in support/jacobi_oracle.hpp.
  const ReversiblePair l = lazy2();
  CHECK(std::abs(neumann_inverse_form(l.matrix(), l.pi().weights(), lazy2_unit()) - 10.0 / 9.0) <
        1e-14);
  CHECK(std::abs(oracle_asymptotic_variance(l.matrix(), l.pi().weights(), lazy2_unit()) -
                 11.0 / 9.0) < 1e-13);
  const ReversiblePair half = lazy_mixture(l, 0.5);
  CHECK(std::abs(oracle_asymptotic_variance(half.matrix(), half.pi().weights(), lazy2_unit()) -
                 31.0 / 9.0) < 1e-13);
}

TEST_CASE("asymptotic variance of the fixtures") {
  const VarianceReport f = asymptotic_variance(flip(), observable({1, -1}));
  CHECK(std::abs(f.value) < 1e-12);
  CHECK(std::abs(f.spectral_value) < 1e-12);
  CHECK(std::abs(f.h_variance - 1.0) < 1e-15);

  const VarianceReport l = asymptotic_variance(lazy2(), lazy2_unit());
  CHECK(std::abs(l.value - 11.0 / 9.0) < 1e-12);
  CHECK(std::abs(l.upper_bound - 11.0 / 9.0) < 1e-12);
  CHECK(std::abs(l.spectral_value - 11.0 / 9.0) < 1e-12);
  CHECK(l.variance_bounding);
  CHECK(!l.conditioning_warning);

  CHECK_THROWS_AS(asymptotic_variance(identity_chain(3), observable({1, 2, 3})),
                  NotVarianceBoundingError);
}

TEST_CASE("near-critical chains") {
  const VarianceReport slow = asymptotic_variance(sticky_two_state(1e-7), observable({1, -1}));
  CHECK(slow.conditioning_warning);
  // Var = (1 + l)/(1 - l) with l = 1 - 2e-7.
  CHECK(slow.value == doctest::Approx((2.0 - 2e-7) / 2e-7).epsilon(1e-8));
  CHECK_THROWS_AS(asymptotic_variance(sticky_two_state(1e-12), observable({1, -1})),
                  NotVarianceBoundingError);
}

TEST_CASE("variance bounding") {
  CHECK(is_variance_bounding(flip()));
  CHECK(!is_variance_bounding(identity_chain(3)));
  CHECK(is_variance_bounding(mh3()));
  const ReversiblePair m = mh3();
  const JacobiResult oracle = jacobi_symmetrized(m.matrix(), m.pi().weights());
  CHECK(oracle.values[1] < 1.0 - 1e-3);
}

TEST_CASE("variational inverse form of the fixtures") {
  const InverseFormReport l = variational_inverse_form(lazy2(), lazy2_unit(), 50, RngSeed{4});
  CHECK(std::abs(l.exact - 10.0 / 9.0) < 1e-12);
  CHECK(l.optimizer_defect < 1e-12);
  CHECK(l.sup_estimate <= l.exact + 1e-10);
  // On a one-dimensional mean-zero space the line search finds the optimum.
  CHECK(std::abs(l.sup_estimate - l.exact) < 1e-12);
  CHECK((solve_poisson(lazy2(), lazy2_unit()) - lazy2_unit() / 0.9).cwiseAbs().maxCoeff() <
        1e-12);

  const InverseFormReport zero = variational_inverse_form(mh3(), Observable::Zero(3), 10, RngSeed{4});
  CHECK(zero.exact == 0.0);
  CHECK(zero.sup_estimate == 0.0);

  const InverseFormReport f = variational_inverse_form(flip(), observable({1, -1}), 10, RngSeed{4});
  CHECK(std::abs(f.exact - 0.5) < 1e-12);
  CHECK(std::abs(2.0 * f.exact - 1.0 - asymptotic_variance(flip(), observable({1, -1})).value) <
        1e-12);

  CHECK_THROWS_AS(variational_inverse_form(lazy2(), observable({1, 0}), 10, RngSeed{4}),
                  ArgumentError);
  CHECK_THROWS_AS(variational_inverse_form(identity_chain(2), observable({1, -1}), 10, RngSeed{4}),
                  NotVarianceBoundingError);
}

TEST_CASE("variance ordering verdicts") {
  const ReversiblePair l = lazy2();
  const ReversiblePair half = lazy_mixture(l, 0.5);
  const VarianceOrderingVerdict v =
      check_variance_ordering(l, half, lazy2_unit(), flow_gamma(l, half));
  CHECK(std::abs(v.var2 - 31.0 / 9.0) < 1e-12);
  CHECK(std::abs(v.lhs - 20.0 / 9.0) < 1e-12);
  CHECK(std::abs(v.rhs - 20.0 / 9.0) < 1e-12);
  CHECK(v.peskun_checked);
  CHECK(v.pass);

  const VarianceOrderingVerdict same =
      check_variance_ordering(mh3(), mh3(), observable({1, 2, 3}), flow_gamma(mh3(), mh3()));
  CHECK(same.lhs == same.rhs);
  CHECK(same.pass);

  const ReversiblePair still(TransitionKernel::identity(3), ProbabilityVector{0.2, 0.3, 0.5});
  const VarianceOrderingVerdict vac =
      check_variance_ordering(mh3(), still, observable({1, 2, 3}), flow_gamma(mh3(), still));
  CHECK(vac.vacuous);
  CHECK(vac.pass);

  std::mt19937_64 rng(90210);
  std::normal_distribution<double> normal;
  int with_gamma = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const StateIndex n = 3 + static_cast<StateIndex>(rng() % 6);
    const auto [p1, p2] = random_pair_sharing_pi(rng, n);
    Observable h(n);
    for (StateIndex i = 0; i < n; ++i) h[i] = normal(rng);
    const OrderingCertificate cert = flow_gamma(p1, p2);
    if (cert.gamma > 0.0) ++with_gamma;
    CHECK(check_variance_ordering(p1, p2, h, cert).pass);
  }
  CHECK(with_gamma > 50);
}

TEST_CASE("variance identities on random reversible pairs") {
  std::mt19937_64 rng(31337);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 200; ++trial) {
    const StateIndex n = 3 + static_cast<StateIndex>(rng() % 8);
    const ReversiblePair pair = random_reversible_pair(rng, n);
    const auto& pi = pair.pi();
    Observable h(n);
    for (StateIndex i = 0; i < n; ++i) h[i] = normal(rng);

    const VarianceReport r = asymptotic_variance(pair, h);
    CHECK(std::abs(r.value - r.spectral_value) <= 1e-8 * std::max(1.0, r.value));
    CHECK(std::abs(r.value - oracle_asymptotic_variance(pair.matrix(), pi.weights(), h)) <=
          1e-8 * std::max(1.0, r.value));
    CHECK(r.value <= r.upper_bound + 1e-8);
    CHECK(r.value >= -1e-10);
    CHECK(std::abs(asymptotic_variance_product_form(pair, h) - r.value) <=
          1e-8 * std::max(1.0, r.value));

    const double shift = 10.0 * normal(rng);
    const VarianceReport shifted = asymptotic_variance(pair, h.array() + shift);
    CHECK(std::abs(shifted.value - r.value) <= 1e-10 * std::max(1.0, r.value));
    CHECK(std::abs(shifted.h_variance - r.h_variance) <= 1e-10 * std::max(1.0, r.h_variance));

    const Observable h0 = center(pi, h);
    const InverseFormReport inv =
        variational_inverse_form(pair, h0, 30, RngSeed{static_cast<std::uint64_t>(trial)});
    CHECK(inv.sup_estimate <= inv.exact + 1e-10);
    CHECK(inv.optimizer_defect <= 1e-8);
    CHECK(std::abs(2.0 * inv.exact - r.h_variance - r.value) <= 1e-8 * std::max(1.0, r.value));
  }
}
