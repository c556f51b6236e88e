#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "revmc/errors.hpp"
#include "revmc/simulate.hpp"
#include "revmc/variance.hpp"
#include "support/fixtures.hpp"

using namespace revmc;
using namespace revmc::testing;

namespace {

// Every row equal to pi: X_t are i.i.d. draws from pi.
ReversiblePair iid_chain(const ProbabilityVector& pi) {
  const StateIndex n = pi.size();
  Eigen::MatrixXd P(n, n);
  for (StateIndex x = 0; x < n; ++x) P.row(x) = pi.weights().transpose();
  return ReversiblePair(TransitionKernel(P), pi);
}

}  // namespace

TEST_CASE("deterministic trajectories") {
  const Trajectory f = sample_trajectory(flip(), 4, RngSeed{11}, InitialLaw::fixed(0));
  CHECK(f.states == std::vector<StateIndex>{0, 1, 0, 1});
  CHECK(f.state_count == 2);
  CHECK(!f.initial_law.is_stationary());

  const Trajectory id = sample_trajectory(identity_chain(5), 1000, RngSeed{3}, InitialLaw::fixed(3));
  CHECK(std::all_of(id.states.begin(), id.states.end(), [](StateIndex s) { return s == 3; }));
  CHECK(ergodic_average(id, observable({0, 1, 2, 7, 4})) == 7.0);

  CHECK_THROWS_AS(sample_trajectory(flip(), 0, RngSeed{1}), ArgumentError);
  CHECK_THROWS_AS(sample_trajectory(flip(), 4, RngSeed{1}, InitialLaw::fixed(2)), ArgumentError);
}

TEST_CASE("same seed, same trajectory") {
  const Trajectory a = sample_trajectory(mh3(), 5000, RngSeed{99});
  const Trajectory b = sample_trajectory(mh3(), 5000, RngSeed{99});
  const Trajectory c = sample_trajectory(mh3(), 5000, RngSeed{100});
  CHECK(a.states == b.states);
  CHECK(a.states != c.states);
  CHECK(std::all_of(a.states.begin(), a.states.end(),
                    [](StateIndex s) { return s >= 0 && s < 3; }));

  const std::vector<Trajectory> reps = sample_replicates(mh3(), 200, RngSeed{40},
                                                         InitialLaw::stationary(), 6);
  REQUIRE(reps.size() == 6);
  for (std::size_t r = 0; r < reps.size(); ++r) {
    CHECK(reps[r].states == sample_trajectory(mh3(), 200, RngSeed{40 + r}).states);
  }
}

TEST_CASE("ergodic averages") {
  const Trajectory f = sample_trajectory(flip(), 1000, RngSeed{5});
  CHECK(ergodic_average(f, observable({1, -1})) == 0.0);
  CHECK_THROWS_AS(ergodic_average(f, observable({1, 2, 3})), ArgumentError);

  const Trajectory l = sample_trajectory(lazy2(), 1000000, RngSeed{2024});
  const double freq = ergodic_average(l, observable({1, 0}));
  CHECK(std::abs(freq - 2.0 / 3.0) < 0.005);
}

TEST_CASE("batch means on the fixtures") {
  const Trajectory f = sample_trajectory(flip(), 10000, RngSeed{8});
  const BatchMeansEstimate fb = empirical_asymptotic_variance(f, observable({1, -1}));
  CHECK(std::abs(fb.estimate) < 0.05);
  CHECK(fb.batch_length == 100);
  CHECK(fb.batch_count == 100);

  const Trajectory l = sample_trajectory(lazy2(), 1000000, RngSeed{8});
  const BatchMeansEstimate lb = empirical_asymptotic_variance(l, lazy2_unit());
  CHECK(std::abs(lb.estimate - 11.0 / 9.0) < 0.1 * 11.0 / 9.0);
  CHECK(lb.batch_length == 1000);
  CHECK(lb.batch_count == 1000);
  CHECK(lb.standard_error == doctest::Approx(lb.estimate * std::sqrt(2.0 / 999.0)));

  const ProbabilityVector pi{0.1, 0.2, 0.3, 0.4};
  const Observable h = observable({3, -1, 0.5, 2});
  const Trajectory iid = sample_trajectory(iid_chain(pi), 1000000, RngSeed{8});
  const BatchMeansEstimate ib = empirical_asymptotic_variance(iid, h);
  CHECK(std::abs(ib.estimate - variance(pi, h)) < 0.1 * variance(pi, h));
  CHECK(std::abs(asymptotic_variance(iid_chain(pi), h).value - variance(pi, h)) < 1e-12);

  const Trajectory odd = sample_trajectory(mh3(), 1234, RngSeed{1});
  const BatchMeansEstimate ob = empirical_asymptotic_variance(odd, observable({1, 2, 3}));
  CHECK(ob.batch_length == 35);
  CHECK(ob.batch_count == 35);
  CHECK(ob.batch_count * ob.batch_length <= 1234);

  CHECK_THROWS_AS(empirical_asymptotic_variance(sample_trajectory(mh3(), 99, RngSeed{1}),
                                                observable({1, 2, 3})),
                  ArgumentError);
}

TEST_CASE("simulation agrees with the exact variance") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const EmpiricalCheck l = empirical_vs_exact(lazy2(), lazy2_unit(), 1000000, RngSeed{seed}, 0.1);
    CHECK(l.pass);
    CHECK(std::abs(l.exact - 11.0 / 9.0) < 1e-12);
    const EmpiricalCheck m =
        empirical_vs_exact(mh3(), observable({1, 2, 3}), 1000000, RngSeed{seed}, 0.1);
    CHECK(m.pass);
  }
  CHECK_THROWS_AS(empirical_vs_exact(identity_chain(3), observable({1, 2, 3}), 10000, RngSeed{1},
                                     0.1),
                  NotVarianceBoundingError);
  CHECK_THROWS_AS(empirical_vs_exact(lazy2(), lazy2_unit(), 9999, RngSeed{1}, 0.1),
                  ArgumentError);
}

TEST_CASE("stationary start stays stationary") {
  const ReversiblePair pair = mh3();
  const std::size_t replicates = 10000;
  const std::vector<Trajectory> reps =
      sample_replicates(pair, 8, RngSeed{123456}, InitialLaw::stationary(), replicates);
  for (std::size_t t : {std::size_t{0}, std::size_t{1}, std::size_t{7}}) {
    std::vector<double> counts(3, 0.0);
    for (const Trajectory& tr : reps) counts[static_cast<std::size_t>(tr.states[t])] += 1.0;
    double stat = 0.0;
    for (StateIndex x = 0; x < 3; ++x) {
      const double expected = static_cast<double>(replicates) * pair.pi()[x];
      const double diff = counts[static_cast<std::size_t>(x)] - expected;
      stat += diff * diff / expected;
    }
    const boost::math::chi_squared dist(2.0);
    CHECK(boost::math::cdf(boost::math::complement(dist, stat)) > 1e-4);
  }
}

TEST_CASE("batch means error shrinks with the run length") {
  const double exact = 11.0 / 9.0;
  std::vector<double> medians;
  for (std::size_t n : {std::size_t{10000}, std::size_t{100000}, std::size_t{1000000}}) {
    std::vector<double> errors;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Trajectory tr = sample_trajectory(lazy2(), n, RngSeed{1000 + seed});
      errors.push_back(std::abs(empirical_asymptotic_variance(tr, lazy2_unit()).estimate - exact));
    }
    std::nth_element(errors.begin(), errors.begin() + 10, errors.end());
    medians.push_back(errors[10]);
  }
  CHECK(medians[1] < medians[0]);
  CHECK(medians[2] < medians[1]);
}
