#include "pbk/circle_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace pbk {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};
constexpr double kEigenCutTol = 1e-9;

int sign(int p) { return (p > 0) - (p < 0); }

void require_hermitian(const MatrixXc& a, const char* where) {
  if (a.rows() != a.cols()) throw DomainError(std::string(where) + ": matrix is not square");
  if (a.size() > 0 && (a - a.adjoint()).cwiseAbs().maxCoeff() > IntegerSpectrumOperator::kHermitianTol)
    throw DomainError(std::string(where) + ": matrix is not Hermitian");
}

}  // namespace

FourierSeries FourierSeries::mode(int p, std::complex<double> amplitude) {
  FourierSeries s;
  s.set_coefficient(p, amplitude);
  return s;
}

std::complex<double> FourierSeries::coefficient(int p) const {
  auto it = coeffs_.find(p);
  return it == coeffs_.end() ? std::complex<double>{} : it->second;
}

void FourierSeries::set_coefficient(int p, std::complex<double> value) {
  if (value == std::complex<double>{})
    coeffs_.erase(p);
  else
    coeffs_[p] = value;
}

std::complex<double> FourierSeries::operator()(double t) const {
  std::complex<double> sum;
  for (const auto& [p, c] : coeffs_) sum += c * std::polar(1.0, p * t);
  return sum;
}

FourierSeries& FourierSeries::operator+=(const FourierSeries& other) {
  for (const auto& [p, c] : other.coeffs_) set_coefficient(p, coefficient(p) + c);
  return *this;
}

FourierSeries& FourierSeries::operator*=(std::complex<double> s) {
  if (s == std::complex<double>{}) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [p, c] : coeffs_) c *= s;
  return *this;
}

FourierSeries hilbert_multiplier(const FourierSeries& series) {
  FourierSeries out;
  for (const auto& [p, c] : series.coefficients())
    out.set_coefficient(p, -kI * static_cast<double>(sign(p)) * c);
  return out;
}

FourierSeries szego_project(const FourierSeries& series) {
  FourierSeries out;
  for (const auto& [p, c] : series.coefficients())
    if (p >= 0) out.set_coefficient(p, c);
  return out;
}

FourierSeries szego_via_hilbert(const FourierSeries& series) {
  FourierSeries out = kI * hilbert_multiplier(series);
  out += series;
  out += FourierSeries::mode(0, series.coefficient(0));
  out *= 0.5;
  return out;
}

IntegerSpectrumOperator::IntegerSpectrumOperator(MatrixXc matrix) : matrix_(std::move(matrix)) {
  require_hermitian(matrix_, "IntegerSpectrumOperator");
  if (matrix_.size() == 0) return;
  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(matrix_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw DomainError("IntegerSpectrumOperator: eigensolver failed");
  spectrum_.reserve(matrix_.rows());
  for (double lambda : solver.eigenvalues()) {
    const double r = std::round(lambda);
    if (std::abs(lambda - r) > kIntegralityTol)
      throw DomainError("IntegerSpectrumOperator: eigenvalue " + std::to_string(lambda) +
                        " is not an integer");
    spectrum_.push_back(static_cast<long long>(r));
  }
}

long long IntegerSpectrumOperator::max_frequency(long long shift) const {
  long long m = 0;
  for (long long p : spectrum_) m = std::max(m, std::llabs(p - shift));
  return m;
}

IntegerSpectrumOperator reduce_period(const IntegerSpectrumOperator& a, int period) {
  if (period < 1) throw DomainError("reduce_period: period must be positive");
  for (long long p : a.spectrum())
    if (p % period != 0)
      throw DomainError("reduce_period: spectrum is not contained in N*Z");
  return IntegerSpectrumOperator(a.matrix() / static_cast<double>(period));
}

SpectralConfig::SpectralConfig(int k_, double energy_, int stabilizer_)
    : k(k_), energy(energy_), stabilizer(stabilizer_) {
  if (k < 1) throw DomainError("SpectralConfig: k must be positive");
  if (stabilizer < 1) throw DomainError("SpectralConfig: stabilizer order must be positive");
  if (!std::isfinite(energy)) throw DomainError("SpectralConfig: energy must be finite");
}

long long SpectralConfig::ceil_level() const {
  return stabilizer * ceil_snapped(static_cast<double>(k) * energy / stabilizer);
}

MatrixXc propagator_matrix(const MatrixXc& a, double t) {
  require_hermitian(a, "propagator_matrix");
  return matrix_exponential<double>((kI * t) * a);
}

MatrixXc propagator_matrix(const IntegerSpectrumOperator& a, double t) {
  return matrix_exponential<double>((kI * t) * a.matrix());
}

int required_quadrature_nodes(const IntegerSpectrumOperator& a, double energy) {
  return static_cast<int>(4 * (a.max_frequency(ceil_snapped(energy)) + 1));
}

int default_quadrature_nodes(const IntegerSpectrumOperator& a, double energy) {
  return static_cast<int>(8 * (a.max_frequency(ceil_snapped(energy)) + 1));
}

MatrixXc spectral_projector_quadrature(const IntegerSpectrumOperator& a, double energy, int nodes) {
  const int required = required_quadrature_nodes(a, energy);
  if (nodes <= 0) nodes = default_quadrature_nodes(a, energy);
  if (nodes < required) throw InsufficientNodesError(nodes, required);

  const Eigen::Index d = a.dim();
  const double cut = static_cast<double>(ceil_snapped(energy));
  const MatrixXc id = MatrixXc::Identity(d, d);

  // Hilbert term over (0, pi]: midpoints tau_j = (j + 1/2) pi / half.
  // U(-tau) = U(tau)^* since A is Hermitian.
  const int half = (nodes + 1) / 2;
  const double step = kPi / half;
  MatrixXc hilbert = MatrixXc::Zero(d, d);
  std::vector<MatrixXc> at_nodes;
  const bool even = nodes % 2 == 0;
  if (even) at_nodes.reserve(half);
  for (int j = 0; j < half; ++j) {
    const double tau = (j + 0.5) * step;
    MatrixXc u = propagator_matrix(a, tau);
    const std::complex<double> phase = std::polar(1.0, -cut * tau);
    hilbert += (u.adjoint() * std::conj(phase) - u * phase) / std::tan(0.5 * tau);
    if (even) at_nodes.push_back(std::move(u));
  }
  hilbert *= step / kTwoPi;

  // Mean term over [-pi, pi]. For an even node count its midpoints are
  // exactly +-tau_j.
  MatrixXc mean = MatrixXc::Zero(d, d);
  if (even) {
    for (int j = 0; j < half; ++j) {
      const double tau = (j + 0.5) * step;
      const std::complex<double> phase = std::polar(1.0, -cut * tau);
      mean += at_nodes[j] * phase + at_nodes[j].adjoint() * std::conj(phase);
    }
  } else {
    const double h = kTwoPi / nodes;
    for (int j = 0; j < nodes; ++j) {
      const double t = -kPi + (j + 0.5) * h;
      mean += propagator_matrix(a, t) * std::polar(1.0, -cut * t);
    }
  }
  mean /= static_cast<double>(nodes);

  return 0.5 * (kI * hilbert + id + mean);
}

MatrixXc spectral_projector_eig(const MatrixXc& a, double energy) {
  require_hermitian(a, "spectral_projector_eig");
  const Eigen::Index d = a.rows();
  MatrixXc proj = MatrixXc::Zero(d, d);
  if (d == 0) return proj;
  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(a);
  if (solver.info() != Eigen::Success) throw DomainError("spectral_projector_eig: eigensolver failed");
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  for (Eigen::Index m = 0; m < d; ++m)
    if (values(m) >= energy - kEigenCutTol) proj += vectors.col(m) * vectors.col(m).adjoint();
  return proj;
}

MatrixXc spectral_projector_eig(const IntegerSpectrumOperator& a, double energy) {
  return spectral_projector_eig(a.matrix(), energy);
}

}  // namespace pbk
