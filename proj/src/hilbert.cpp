#include "revmc/hilbert.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "revmc/errors.hpp"

namespace revmc {

namespace {

void require_same_size(const ProbabilityVector& pi, const Observable& f) {
  if (f.size() != pi.size()) {
    throw ArgumentError("observable has " + std::to_string(f.size()) +
                        " entries, expected " + std::to_string(pi.size()));
  }
}

}  // namespace

Observable observable(std::initializer_list<double> values) {
  Observable out(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) out[i++] = v;
  return out;
}

ProbabilityVector::ProbabilityVector(Eigen::VectorXd weights) : weights_(std::move(weights)) {
  if (weights_.size() < 2) {
    throw ArgumentError("probability vector needs at least 2 states");
  }
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i]) || weights_[i] < 0.0) {
      throw ArgumentError("probability vector entry " + std::to_string(i) +
                          " is negative or not finite");
    }
  }
  const double total = weights_.sum();
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw ArgumentError("probability vector sums to " + std::to_string(total) + ", not 1");
  }
}

ProbabilityVector::ProbabilityVector(std::initializer_list<double> weights)
    : ProbabilityVector(observable(weights)) {}

ProbabilityVector ProbabilityVector::uniform(StateIndex n) {
  if (n < 2) throw ArgumentError("probability vector needs at least 2 states");
  return ProbabilityVector(Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)));
}

double inner(const ProbabilityVector& pi, const Observable& f, const Observable& g) {
  require_same_size(pi, f);
  require_same_size(pi, g);
  return (pi.weights().array() * f.array() * g.array()).sum();
}

double norm(const ProbabilityVector& pi, const Observable& f) {
  return std::sqrt(inner(pi, f, f));
}

double mean(const ProbabilityVector& pi, const Observable& f) {
  require_same_size(pi, f);
  return pi.weights().dot(f);
}

Observable center(const ProbabilityVector& pi, const Observable& f) {
  return f.array() - mean(pi, f);
}

double variance(const ProbabilityVector& pi, const Observable& f) {
  const Observable f0 = center(pi, f);
  return inner(pi, f0, f0);
}

}  // namespace revmc
