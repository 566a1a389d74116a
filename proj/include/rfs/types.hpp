#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace rfs {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Base class for all recoverable toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent configuration input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A linear-algebraic synthesis step has no solution (regulator equations,
/// Riccati equation, and the like).
class SolvabilityError : public Error {
 public:
  using Error::Error;
};

/// A synthesized or supplied quantity fails its certificate check
/// (positive definiteness, Hurwitz spectrum, admissible interval, ...).
class CertificationError : public Error {
 public:
  using Error::Error;
};

/// A simulation produced a non-finite state where that is not expected.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

inline constexpr double kPdTolerance = 1e-9;     ///< lambda_min floor for "> 0".
inline constexpr double kResidualTol = 1e-10;    ///< regulator residual bound.

}  // namespace rfs
