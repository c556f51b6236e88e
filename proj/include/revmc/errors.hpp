#pragma once

#include <stdexcept>

namespace revmc {

/// Malformed input: dimension mismatch, out-of-range parameter, invalid vector.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The kernel has more than one stationary distribution (reducible chain).
class NonUniqueStationaryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Detailed balance or stationarity fails beyond the permitted tolerance.
class ReversibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two routes to the same quantity disagree.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The right spectral gap is (numerically) zero, so Var(P,h) may be infinite.
class NotVarianceBoundingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problem too large for an exact algorithm.
class SizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace revmc
