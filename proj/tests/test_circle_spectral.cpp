#include "doctest.h"
#include "pbk/circle_spectral.hpp"
#include "test_support.hpp"

using namespace pbk;
using pbk::testing::max_abs;

namespace {

const std::complex<double> I{0.0, 1.0};

MatrixXc diag(std::initializer_list<double> v) {
  Eigen::VectorXd d(v.size());
  int i = 0;
  for (double x : v) d(i++) = x;
  return d.cast<std::complex<double>>().asDiagonal();
}

FourierSeries random_series(int degree, Rng& rng) {
  FourierSeries s;
  for (int p = -degree; p <= degree; ++p) s.set_coefficient(p, testing::random_complex(rng));
  return s;
}

}  // namespace

TEST_CASE("fourier series stores only nonzero coefficients") {
  FourierSeries s = FourierSeries::mode(2, 3.0);
  s.set_coefficient(5, 0.0);
  CHECK(s.coefficients().size() == 1);
  s += FourierSeries::mode(2, -3.0);
  CHECK(s.empty());
}

TEST_CASE("fourier series evaluation matches direct summation") {
  Rng rng(7);
  const FourierSeries s = random_series(6, rng);
  for (int trial = 0; trial < 20; ++trial) {
    const double t = rng.uniform(-10.0, 10.0);
    std::complex<double> direct;
    for (int p = -6; p <= 6; ++p) direct += s.coefficient(p) * std::exp(I * double(p) * t);
    CHECK(std::abs(s(t) - direct) < 1e-12);
  }
}

TEST_CASE("hilbert multiplier examples") {
  CHECK(hilbert_multiplier(FourierSeries::mode(3)) == FourierSeries::mode(3, -I));
  CHECK(hilbert_multiplier(FourierSeries::mode(0)).empty());
  const FourierSeries g = FourierSeries::mode(-2) + FourierSeries::mode(2);
  CHECK(hilbert_multiplier(g) == FourierSeries::mode(-2, I) + FourierSeries::mode(2, -I));
}

TEST_CASE("hilbert multiplier squared removes the mean and flips the sign") {
  Rng rng(3);
  const FourierSeries g = random_series(5, rng);
  FourierSeries expected = g;
  expected.set_coefficient(0, 0.0);
  expected *= -1.0;
  CHECK(hilbert_multiplier(hilbert_multiplier(g)) == expected);
}

TEST_CASE("szego projection examples") {
  const FourierSeries g = FourierSeries::mode(-1) + FourierSeries::mode(0) + FourierSeries::mode(1);
  CHECK(szego_project(g) == FourierSeries::mode(0) + FourierSeries::mode(1));
  CHECK(szego_project(FourierSeries::mode(5)) == FourierSeries::mode(5));
}

TEST_CASE("szego projection through the hilbert transform") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const FourierSeries g = random_series(8, rng);
    const FourierSeries a = szego_project(g);
    const FourierSeries b = szego_via_hilbert(g);
    CHECK(szego_project(a) == a);
    for (int p = -8; p <= 8; ++p) CHECK(std::abs(a.coefficient(p) - b.coefficient(p)) < 1e-12);
  }
}

TEST_CASE("integer spectrum operator validation") {
  CHECK_THROWS_AS(IntegerSpectrumOperator(diag({0.5, 1.0})), DomainError);
  MatrixXc m = diag({1.0, 2.0});
  m(0, 1) = 1e-6;
  CHECK_THROWS_AS(IntegerSpectrumOperator{m}, DomainError);
  Rng rng(1);
  Eigen::VectorXd p(4);
  p << 3, -2, 0, 3;
  const IntegerSpectrumOperator op(testing::with_spectrum(p, rng));
  CHECK(op.spectrum() == std::vector<long long>{-2, 0, 3, 3});
  CHECK(op.max_frequency(1) == 3);
}

TEST_CASE("spectral config derived level") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = static_cast<int>(rng.integer(1, 500));
    const double e = rng.uniform(-0.5, 1.5);
    const SpectralConfig cfg(k, e);
    const double ek = cfg.energy_k();
    CHECK(ek >= e - 1e-9);
    CHECK(ek - e < 1.0 / k);
    CHECK(std::abs(k * ek - std::round(k * ek)) < 1e-9);
  }
  CHECK(SpectralConfig(10, 0.3).ceil_level() == 3);
  CHECK(SpectralConfig(7, 0.5, 2).ceil_level() == 4);
  CHECK_THROWS_AS(SpectralConfig(0, 0.5), DomainError);
  CHECK_THROWS_AS(SpectralConfig(3, 0.5, 0), DomainError);
}

TEST_CASE("propagator examples") {
  const IntegerSpectrumOperator one(diag({1.0}));
  CHECK(max_abs(propagator_matrix(one, kTwoPi) - MatrixXc::Identity(1, 1)) < 1e-12);
  const IntegerSpectrumOperator a(diag({0.0, 1.0}));
  CHECK(max_abs(propagator_matrix(a, kPi) - diag({1.0, -1.0})) < 1e-12);
  MatrixXc bad = diag({0.0, 1.0});
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(propagator_matrix(bad, 0.3), DomainError);
}

TEST_CASE("propagator group law and unitarity") {
  Rng rng(17);
  const IntegerSpectrumOperator a(testing::with_spectrum(testing::random_integers(6, 4, rng), rng));
  for (int trial = 0; trial < 5; ++trial) {
    const double s = rng.uniform(-4.0, 4.0);
    const double t = rng.uniform(-4.0, 4.0);
    const MatrixXc us = propagator_matrix(a, s);
    CHECK(max_abs(us * propagator_matrix(a, t) - propagator_matrix(a, s + t)) < 1e-9);
    CHECK(max_abs(us.adjoint() * us - MatrixXc::Identity(6, 6)) < 1e-10);
  }
  CHECK(max_abs(propagator_matrix(a, kTwoPi) - MatrixXc::Identity(6, 6)) < 1e-9);
}

TEST_CASE("projector examples") {
  const IntegerSpectrumOperator a(diag({-1.0, 0.0, 2.0}));
  CHECK(max_abs(spectral_projector_quadrature(a, 0.0) - diag({0, 1, 1})) < 1e-9);
  CHECK(max_abs(spectral_projector_quadrature(a, 0.5) - diag({0, 0, 1})) < 1e-9);
  CHECK(max_abs(spectral_projector_eig(MatrixXc::Zero(3, 3), 0.0) - MatrixXc::Identity(3, 3)) == 0.0);
  CHECK(max_abs(spectral_projector_eig(diag({1.0, 2.0}), 3.0)) == 0.0);

  Eigen::VectorXd levels(11);
  for (int l = 0; l <= 10; ++l) levels(l) = l / 10.0;
  const MatrixXc p = spectral_projector_eig(MatrixXc(levels.cast<std::complex<double>>().asDiagonal()), 0.5);
  CHECK(std::abs(p.trace() - 6.0) < 1e-12);
  for (int l = 0; l <= 10; ++l) CHECK(std::abs(p(l, l) - (l >= 5 ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("quadrature projector refuses too few nodes") {
  const IntegerSpectrumOperator a(diag({-3.0, 0.0, 2.0}));
  const int required = required_quadrature_nodes(a, 0.0);
  CHECK(required == 16);
  try {
    spectral_projector_quadrature(a, 0.0, required - 1);
    FAIL("expected InsufficientNodesError");
  } catch (const InsufficientNodesError& e) {
    CHECK(e.required() == required);
    CHECK(std::string(e.what()).find(std::to_string(required)) != std::string::npos);
  }
  CHECK(max_abs(spectral_projector_quadrature(a, 0.0, required) - diag({0, 1, 1})) < 1e-9);
}

TEST_CASE("quadrature and eigendecomposition routes agree") {
  Rng rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = static_cast<int>(rng.integer(1, 24));
    const IntegerSpectrumOperator a(testing::with_spectrum(testing::random_integers(d, 5, rng), rng));
    const double e = trial % 3 == 0 ? static_cast<double>(rng.integer(-5, 5)) : rng.uniform(-6.0, 6.0);
    const MatrixXc q = spectral_projector_quadrature(a, e);
    const MatrixXc p = spectral_projector_eig(a, e);
    CHECK(max_abs(q - p) < 1e-9);
    CHECK(max_abs(q * q - q) < 1e-8);
    CHECK(max_abs(q - q.adjoint()) < 1e-8);
    CHECK(max_abs(p * p - p) < 1e-8);
  }
  // The 8 x 8, E = 0.3 example.
  const IntegerSpectrumOperator a(testing::with_spectrum(testing::random_integers(8, 4, rng), rng));
  CHECK(max_abs(spectral_projector_quadrature(a, 0.3) - spectral_projector_eig(a, 0.3)) < 1e-9);
}

TEST_CASE("period reduction leaves the projector unchanged") {
  Rng rng(31);
  for (int n : {2, 3, 5}) {
    Eigen::VectorXd p = testing::random_integers(7, 3, rng) * n;
    const IntegerSpectrumOperator a(testing::with_spectrum(p, rng));
    const IntegerSpectrumOperator reduced = reduce_period(a, n);
    for (double e : {-4.0, -1.0, 0.0, 0.5, 2.0 * n, 7.3}) {
      CHECK(max_abs(spectral_projector_eig(a, e) - spectral_projector_eig(reduced, e / n)) < 1e-10);
    }
  }
  const IntegerSpectrumOperator odd(diag({1.0, 2.0}));
  CHECK_THROWS_AS(reduce_period(odd, 2), DomainError);
}

TEST_CASE("matrix exponential is generic in the scalar") {
  MatrixX<long double> x(2, 2);
  x << 0.0L, std::complex<long double>(0, 1), std::complex<long double>(0, 1), 0.0L;
  const MatrixX<long double> e = matrix_exponential(x);
  CHECK(std::abs(e(0, 0) - std::complex<long double>(std::cos(1.0L))) < 1e-15L);
  CHECK(std::abs(e(0, 1) - std::complex<long double>(0, std::sin(1.0L))) < 1e-15L);
}
