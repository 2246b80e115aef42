#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace fdsec {

using cdouble = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

// Channel norms below this are treated as zero.
inline constexpr double kDegenerateNorm = 1e-12;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A channel (or filter input) has zero norm where a direction is required.
class DegenerateChannelError : public Error {
 public:
  using Error::Error;
};

/// A covariance argument is not positive semidefinite.
class InvalidCovarianceError : public Error {
 public:
  using Error::Error;
};

/// An argument is outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A caller broke a documented precondition (e.g. a receive filter that is not unit norm).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace fdsec
