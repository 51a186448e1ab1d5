#pragma once

// Fourier analysis on the circle and spectral projections of Hermitian
// operators whose unitary group t -> exp(itA) is 2*pi-periodic.

#include <complex>
#include <map>
#include <vector>

#include "pbk/types.hpp"

namespace pbk {

/// Trigonometric polynomial sum_p c_p e^{ipt}. Only nonzero coefficients are
/// stored.
class FourierSeries {
 public:
  using Coefficients = std::map<int, std::complex<double>>;

  FourierSeries() = default;

  static FourierSeries mode(int p, std::complex<double> amplitude = 1.0);

  std::complex<double> coefficient(int p) const;
  void set_coefficient(int p, std::complex<double> value);
  const Coefficients& coefficients() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }

  std::complex<double> operator()(double t) const;

  FourierSeries& operator+=(const FourierSeries& other);
  FourierSeries& operator*=(std::complex<double> s);
  friend FourierSeries operator+(FourierSeries a, const FourierSeries& b) { return a += b; }
  friend FourierSeries operator*(std::complex<double> s, FourierSeries a) { return a *= s; }
  friend bool operator==(const FourierSeries&, const FourierSeries&) = default;

 private:
  Coefficients coeffs_;
};

/// Periodic Hilbert transform, the multiplier e_p -> -i sgn(p) e_p.
FourierSeries hilbert_multiplier(const FourierSeries& series);

/// Cauchy-Szego (Hardy space) projection: drops negative frequencies.
FourierSeries szego_project(const FourierSeries& series);

/// The same projection assembled as (i H g + g + g^(0)) / 2.
FourierSeries szego_via_hilbert(const FourierSeries& series);

/// Hermitian matrix with integer spectrum, validated on construction.
class IntegerSpectrumOperator {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kIntegralityTol = 1e-8;

  explicit IntegerSpectrumOperator(MatrixXc matrix);

  const MatrixXc& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  // Sorted integer eigenvalues.
  const std::vector<long long>& spectrum() const { return spectrum_; }
  // max_m |p_m - shift|
  long long max_frequency(long long shift) const;

 private:
  MatrixXc matrix_;
  std::vector<long long> spectrum_;
};

/// A / N for an operator whose spectrum lies in N*Z.
IntegerSpectrumOperator reduce_period(const IntegerSpectrumOperator& a, int period);

/// Quantization level data: k, E and the stabilizer order N.
struct SpectralConfig {
  int k = 1;
  double energy = 0.0;
  int stabilizer = 1;

  SpectralConfig() = default;
  SpectralConfig(int k_, double energy_, int stabilizer_ = 1);

  // N * ceil(kE / N): the lowest admissible eigenvalue of k*H_k at or above kE.
  long long ceil_level() const;
  // E_k = ceil_level / k.
  double energy_k() const { return static_cast<double>(ceil_level()) / k; }
};

// Truncated Taylor series with scaling and squaring. Terms are added until
// their norm drops below 1e-16; at most 64 squarings.
template <typename Real>
MatrixX<Real> matrix_exponential(const MatrixX<Real>& x) {
  using std::ceil;
  using std::log2;
  const Real norm = x.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > Real(0.25)) {
    squarings = static_cast<int>(ceil(log2(norm / Real(0.25))));
    if (squarings > 64) throw DomainError("matrix_exponential: argument norm too large");
  }
  Real factor(1);
  for (int s = 0; s < squarings; ++s) factor *= 2;
  const MatrixX<Real> scaled = x / factor;
  MatrixX<Real> result = MatrixX<Real>::Identity(x.rows(), x.cols());
  MatrixX<Real> term = result;
  for (int n = 1; n < 200; ++n) {
    term = (term * scaled) / Real(n);
    result += term;
    if (term.cwiseAbs().maxCoeff() < Real(1e-16)) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

/// exp(itA) without any eigendecomposition. Throws DomainError for a
/// non-Hermitian argument.
MatrixXc propagator_matrix(const MatrixXc& a, double t);
MatrixXc propagator_matrix(const IntegerSpectrumOperator& a, double t);

/// Smallest node count accepted by spectral_projector_quadrature.
int required_quadrature_nodes(const IntegerSpectrumOperator& a, double energy);
int default_quadrature_nodes(const IntegerSpectrumOperator& a, double energy);

/// 1_[E,inf)(A) from the periodic Hilbert transform of U_A(t) e^{-i ceil(E) t},
/// both circle integrals by the midpoint rule. nodes <= 0 selects the default.
MatrixXc spectral_projector_quadrature(const IntegerSpectrumOperator& a, double energy,
                                       int nodes = 0);

/// 1_[E,inf)(A) from an eigendecomposition; eigenvalues >= E - 1e-9 count.
MatrixXc spectral_projector_eig(const MatrixXc& a, double energy);
MatrixXc spectral_projector_eig(const IntegerSpectrumOperator& a, double energy);

}  // namespace pbk
