#pragma once

// The rotation action on CP^1 = S^2 with the Fubini-Study form of total
// area 2*pi. Points are homogeneous pairs [z0 : z1]; the affine chart is
// zeta = z0 / z1.

#include <algorithm>
#include <cmath>
#include <complex>

#include "pbk/types.hpp"

namespace pbk {

template <typename Real>
class BasicProjectivePoint {
 public:
  using complex_type = std::complex<Real>;

  BasicProjectivePoint(complex_type z0, complex_type z1) : z0_(z0), z1_(z1) {
    if (z0 == complex_type{} && z1 == complex_type{})
      throw DomainError("ProjectivePoint: [0 : 0] is not a point of CP^1");
  }

  /// [zeta : 1]
  static BasicProjectivePoint from_chart(complex_type zeta) { return {zeta, complex_type(1)}; }

  /// The point [sqrt(E/(1-E)) e^{i theta} : 1] on the level set {H = E}, 0 <= E < 1.
  static BasicProjectivePoint on_level(Real energy, Real theta) {
    using std::sqrt;
    if (!(energy >= 0 && energy < 1)) throw DomainError("on_level: E must lie in [0, 1)");
    return from_chart(std::polar(sqrt(energy / (1 - energy)), theta));
  }

  const complex_type& z0() const { return z0_; }
  const complex_type& z1() const { return z1_; }

  bool in_chart() const { return z1_ != complex_type{}; }

  complex_type zeta() const {
    if (!in_chart()) throw ChartError("point [z0 : 0] lies outside the chart z1 != 0");
    return z0_ / z1_;
  }

  /// Representative of unit norm whose largest coordinate is real positive.
  BasicProjectivePoint normalized() const {
    using std::abs;
    using std::sqrt;
    const Real n = sqrt(std::norm(z0_) + std::norm(z1_));
    const complex_type& big = abs(z0_) >= abs(z1_) ? z0_ : z1_;
    const complex_type gauge = std::conj(big) / (abs(big) * n);
    return {z0_ * gauge, z1_ * gauge};
  }

  BasicProjectivePoint scaled(complex_type lambda) const { return {lambda * z0_, lambda * z1_}; }

 private:
  complex_type z0_;
  complex_type z1_;
};

using ProjectivePoint = BasicProjectivePoint<double>;

/// Projective equality after removing scale and phase gauge.
template <typename Real>
bool projectively_equal(const BasicProjectivePoint<Real>& p, const BasicProjectivePoint<Real>& q,
                        Real tol = Real(1e-10)) {
  using std::abs;
  const auto a = p.normalized();
  const auto b = q.normalized();
  return abs(a.z0() - b.z0()) <= tol && abs(a.z1() - b.z1()) <= tol;
}

/// H([z]) = |z0|^2 / (|z0|^2 + |z1|^2).
template <typename Real>
Real height(const BasicProjectivePoint<Real>& p) {
  const Real a = std::norm(p.z0());
  return a / (a + std::norm(p.z1()));
}

/// Hamiltonian flow of H: [z0 : z1] -> [e^{it} z0 : z1].
template <typename Real>
BasicProjectivePoint<Real> rotate(Real t, const BasicProjectivePoint<Real>& p) {
  return {std::polar(Real(1), t) * p.z0(), p.z1()};
}

/// Gradient flow of H: [z0 : z1] -> [e^a z0 : z1], i.e. zeta' = zeta in the chart.
template <typename Real>
BasicProjectivePoint<Real> gradient_flow(Real a, const BasicProjectivePoint<Real>& p) {
  using std::exp;
  return {exp(a) * p.z0(), p.z1()};
}

/// ||X_H|| = sqrt(2 H (1 - H)).
template <typename Real>
Real xh_norm(const BasicProjectivePoint<Real>& p) {
  using std::sqrt;
  const Real h = height(p);
  return sqrt(std::max(Real(0), 2 * h * (1 - h)));
}

/// Fubini-Study metric (total area 2*pi) at chart point zeta applied to two
/// tangent vectors written as complex numbers: 2 Re(u conj(v)) / (1 + |zeta|^2)^2.
template <typename Real>
Real fubini_study_metric(std::complex<Real> zeta, std::complex<Real> u, std::complex<Real> v) {
  const Real w = 1 + std::norm(zeta);
  return 2 * std::real(u * std::conj(v)) / (w * w);
}

/// Position on the unit sphere via the Bloch map x = psi^* sigma psi, psi = z / |z|.
/// Heights satisfy H = (x_3 + 1) / 2.
inline Vector3 to_sphere(const ProjectivePoint& p) {
  const double n = std::norm(p.z0()) + std::norm(p.z1());
  const std::complex<double> c = 2.0 * std::conj(p.z0()) * p.z1() / n;
  return {c.real(), c.imag(), (std::norm(p.z0()) - std::norm(p.z1())) / n};
}

/// Inverse of to_sphere for a unit vector x.
inline ProjectivePoint from_sphere(const Vector3& x) {
  const double theta = std::acos(std::clamp(x.z(), -1.0, 1.0));
  const double phi = std::atan2(x.y(), x.x());
  return {std::complex<double>(std::cos(0.5 * theta)), std::polar(std::sin(0.5 * theta), phi)};
}

}  // namespace pbk
