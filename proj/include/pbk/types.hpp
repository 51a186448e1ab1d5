#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pbk {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using MatrixX = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using VectorX = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using MatrixXc = MatrixX<double>;
using VectorXc = VectorX<double>;
using Matrix2c = Eigen::Matrix2cd;
using Vector3 = Eigen::Vector3d;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Invalid argument or violated precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Point outside the affine chart {z1 != 0} on which the invariant frame lives.
class ChartError : public DomainError {
 public:
  using DomainError::DomainError;
};

class InsufficientNodesError : public DomainError {
 public:
  InsufficientNodesError(int given, int required)
      : DomainError("quadrature needs at least " + std::to_string(required) +
                    " nodes, got " + std::to_string(given)),
        given_(given),
        required_(required) {}

  int given() const { return given_; }
  int required() const { return required_; }

 private:
  int given_;
  int required_;
};

// ceil(x), except that x within `tol` of an integer snaps to that integer.
// Keeps a level sitting exactly on an eigenvalue inside the closed interval
// [E, inf).
inline long long ceil_snapped(double x, double tol = 1e-9) {
  const double r = std::round(x);
  if (std::abs(x - r) <= tol) return static_cast<long long>(r);
  return static_cast<long long>(std::ceil(x));
}

}  // namespace pbk
