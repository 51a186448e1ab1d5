#pragma once

#include <cstdint>

#include "pbk/circle_spectral.hpp"
#include "pbk/types.hpp"

namespace pbk {

/// Unit vector u in R^3; the rotated height is F(x) = (x . u + 1) / 2.
class RotationAxis {
 public:
  explicit RotationAxis(const Vector3& u);
  RotationAxis(double x, double y, double z) : RotationAxis(Vector3(x, y, z)) {}

  static RotationAxis north() { return RotationAxis(0.0, 0.0, 1.0); }

  const Vector3& vector() const { return u_; }

 private:
  Vector3 u_;
};

/// Geodesic lift: rotation by angle(e3, u) about e3 x u, as the SU(2) matrix
/// cos(b/2) I - i sin(b/2) (n . sigma). For u = -e3 the axis n = e1 is used.
Matrix2c su2_from_axis(const RotationAxis& axis);

/// Matrix of p(z) -> p(U^{-1} z) on degree-k polynomials in the orthonormal
/// basis s_{k,l}. Evaluated as the exponential of the Lie algebra generator,
/// which stays unitary to rounding for k in the hundreds.
MatrixXc su2_rep_matrix(int k, const Matrix2c& u);

/// k R diag(0, 1/k, ..., 1) R^* with R = su2_rep_matrix(k, su2_from_axis(axis)).
IntegerSpectrumOperator rotated_height_operator(int k, const RotationAxis& axis);

/// Whether the closed caps {x . u1 >= 2 E1 - 1} and {x . u2 >= 2 E2 - 1} are
/// disjoint. Tangent caps count as intersecting. Needs E1, E2 in (0, 1).
bool caps_disjoint(const RotationAxis& u1, double e1, const RotationAxis& u2, double e2);

struct PowerIterationOptions {
  int starts = 5;
  int max_iterations = 10000;
  double relative_tolerance = 1e-10;
  std::uint64_t seed = 0x5eed5eedULL;
};

/// Largest singular value of m via power iteration on m m^*, best of several
/// seeded random starts.
double operator_norm(const MatrixXc& m, const PowerIterationOptions& options = {});

/// || 1_[E1,inf)(F_k) 1_[E2,inf)(G_k) ||_op for the rotated heights F, G.
double projection_product_norm(int k, const RotationAxis& u1, double e1, const RotationAxis& u2,
                               double e2, const PowerIterationOptions& options = {});

}  // namespace pbk
