#include "pbk/rotated_observables.hpp"

#include <algorithm>
#include <cmath>

#include "pbk/rng.hpp"

namespace pbk {

namespace {

constexpr double kGroupTol = 1e-12;

void require_special_unitary(const Matrix2c& u) {
  const double unitarity = (u.adjoint() * u - Matrix2c::Identity()).cwiseAbs().maxCoeff();
  if (unitarity > kGroupTol) throw DomainError("su2_rep_matrix: U is not unitary");
  if (std::abs(u.determinant() - 1.0) > kGroupTol)
    throw DomainError("su2_rep_matrix: det U is not 1");
}

}  // namespace

RotationAxis::RotationAxis(const Vector3& u) : u_(u) {
  if (!u.allFinite() || std::abs(u.norm() - 1.0) > 1e-12)
    throw DomainError("RotationAxis: axis must be a unit vector");
}

Matrix2c su2_from_axis(const RotationAxis& axis) {
  const Vector3& u = axis.vector();
  const double beta = std::acos(std::clamp(u.z(), -1.0, 1.0));
  Vector3 n(-u.y(), u.x(), 0.0);
  const double len = n.norm();
  if (len < 1e-15) {
    if (u.z() > 0.0) return Matrix2c::Identity();
    n = Vector3::UnitX();
  } else {
    n /= len;
  }
  const std::complex<double> i{0.0, 1.0};
  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);
  Matrix2c m;
  m << c - i * s * n.z(), -i * s * std::complex<double>(n.x(), -n.y()),
      -i * s * std::complex<double>(n.x(), n.y()), c + i * s * n.z();
  return m;
}

MatrixXc su2_rep_matrix(int k, const Matrix2c& u) {
  if (k < 0) throw DomainError("su2_rep_matrix: k must be nonnegative");
  require_special_unitary(u);
  // u = cos(phi/2) I - i sin(phi/2) (m . sigma). Then p(U^{-1} z) is
  // exp(i phi G) p with the derivation G = sum_ab X_ab z_b d/dz_a, X = m.sigma/2,
  // a Hermitian tridiagonal matrix in the orthonormal basis.
  const std::complex<double> a = u(0, 0);
  const std::complex<double> b = u(0, 1);
  Vector3 sm(-b.imag(), -b.real(), -a.imag());  // sin(phi/2) m
  const double s = sm.norm();
  const double half_phi = std::atan2(s, a.real());
  const Vector3 m = s > 0.0 ? Vector3(sm / s) : Vector3::UnitZ();
  const std::complex<double> x00 = 0.5 * m.z();
  const std::complex<double> x11 = -0.5 * m.z();
  const std::complex<double> x01 = 0.5 * std::complex<double>(m.x(), -m.y());

  MatrixXc g = MatrixXc::Zero(k + 1, k + 1);
  for (int l = 0; l <= k; ++l) {
    g(l, l) = x00 * double(l) + x11 * double(k - l);
    if (l < k) {
      const double c = std::sqrt(double(l + 1) * (k - l));
      g(l, l + 1) = x01 * c;
      g(l + 1, l) = std::conj(x01) * c;
    }
  }
  const Eigen::SelfAdjointEigenSolver<MatrixXc> eig(g);
  const Eigen::VectorXd& mu = eig.eigenvalues();
  VectorXc phases(k + 1);
  for (int i = 0; i <= k; ++i) phases(i) = std::polar(1.0, 2.0 * half_phi * mu(i));
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

IntegerSpectrumOperator rotated_height_operator(int k, const RotationAxis& axis) {
  if (k < 1) throw DomainError("rotated_height_operator: k must be positive");
  const MatrixXc r = su2_rep_matrix(k, su2_from_axis(axis));
  Eigen::VectorXd levels(k + 1);
  for (int l = 0; l <= k; ++l) levels(l) = l;
  MatrixXc a = r * levels.cast<std::complex<double>>().asDiagonal() * r.adjoint();
  a = 0.5 * (a + a.adjoint()).eval();
  return IntegerSpectrumOperator(std::move(a));
}

bool caps_disjoint(const RotationAxis& u1, double e1, const RotationAxis& u2, double e2) {
  if (!(e1 > 0.0 && e1 < 1.0 && e2 > 0.0 && e2 < 1.0))
    throw DomainError("caps_disjoint: levels must lie in (0, 1)");
  const double cosine = std::clamp(u1.vector().dot(u2.vector()), -1.0, 1.0);
  const double angle = std::acos(cosine);
  return angle > std::acos(2.0 * e1 - 1.0) + std::acos(2.0 * e2 - 1.0);
}

double operator_norm(const MatrixXc& m, const PowerIterationOptions& options) {
  if (m.size() == 0) return 0.0;
  const MatrixXc b = m * m.adjoint();
  if (b.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  Rng rng(options.seed);
  double best = 0.0;
  for (int start = 0; start < options.starts; ++start) {
    VectorXc v(b.rows());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = {rng.normal(), rng.normal()};
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < options.max_iterations; ++it) {
      VectorXc bv = b * v;
      const double rayleigh = v.dot(bv).real();
      const double len = bv.norm();
      if (len == 0.0) {
        lambda = 0.0;
        break;
      }
      v = bv / len;
      const bool converged =
          it > 0 && std::abs(rayleigh - lambda) <= options.relative_tolerance * std::abs(rayleigh);
      lambda = rayleigh;
      if (converged) break;
    }
    best = std::max(best, lambda);
  }
  return std::sqrt(std::max(best, 0.0));
}

double projection_product_norm(int k, const RotationAxis& u1, double e1, const RotationAxis& u2,
                               double e2, const PowerIterationOptions& options) {
  const MatrixXc p1 = spectral_projector_eig(rotated_height_operator(k, u1), k * e1);
  const MatrixXc p2 = spectral_projector_eig(rotated_height_operator(k, u2), k * e2);
  return operator_norm(p1 * p2, options);
}

}  // namespace pbk
