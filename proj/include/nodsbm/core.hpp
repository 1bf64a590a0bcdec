#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nodsbm {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Community labels, each entry 1 or 2.
using Labels = std::vector<int>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the range of the saturation function, so no
/// finite state maps onto it. `row`/`column` locate the offending entry when
/// the value came from a data matrix (-1 otherwise).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what, long row = -1, long column = -1)
      : Error(what), row_(row), column_(column) {}
  long row() const { return row_; }
  long column() const { return column_; }

 private:
  long row_;
  long column_;
};

class SingularJacobian : public Error {
 public:
  using Error::Error;
};

/// The bifurcation denominator alpha + gamma * lambda is not positive.
class InvalidRegime : public Error {
 public:
  using Error::Error;
};

class NotSymmetric : public Error {
 public:
  using Error::Error;
};

/// The equilibrium is (numerically) the origin and carries no community
/// information.
class NeutralState : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class ZeroGap : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

}  // namespace nodsbm
