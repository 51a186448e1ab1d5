#pragma once

// Leading terms of the scaling asymptotics of partial and equivariant Bergman
// kernels near an orbit, the Stirling estimate of the CP^1 sections, and the
// regression helpers used by the decay experiments.

#include <complex>
#include <span>
#include <utility>

#include "pbk/cp1_geometry.hpp"

namespace pbk {

/// Probe points psi_{a/sqrt k}(z0) and psi_{b/sqrt k}(phi_{t0}(z0)).
struct ScalingProbe {
  ProjectivePoint base;
  double a = 0.0;
  double b = 0.0;
  double t0 = 0.0;

  ProjectivePoint first(int k) const;
  ProjectivePoint second(int k) const;
};

/// Leading term of (2pi/k)^n K, and the power of k bounding the remainder.
struct AsymptoticPrediction {
  std::complex<double> leading;
  double remainder_order = -1.0;
  int dimension = 1;

  /// leading * (k / 2pi)^n, the prediction for K itself.
  std::complex<double> unscaled(int k) const;
};

/// Partial kernel near an orbit pair:
///   e^{-(a^2+b^2)|X_H|^2/2} e^{-iN ceil(kE/N) t0} N (1 - i cot(N t0 / 2)) / (2 |X_H| sqrt(pi k)).
/// Refuses |sin(N t0 / 2)| < 1e-3.
AsymptoticPrediction predict_partial(int k, double energy, int stabilizer, int dimension,
                                     double xh, const ScalingProbe& probe);

/// Equivariant kernel for the eigenvalue lambda_k:
///   e^{-(a^2+b^2)|X_H|^2/2} e^{-ik lambda_k t0} N / (|X_H| sqrt(pi k)).
AsymptoticPrediction predict_equivariant(int k, double lambda_k, int stabilizer, int dimension,
                                         double xh, const ScalingProbe& probe);

/// k^{1/4} (2pi)^{-3/4} e^{i l theta} (E(1-E))^{-1/4}, for |l - kE| <= 2.
std::complex<double> stirling_estimate(int k, int l, double energy, double theta);

/// |K_{k,E}(z0, phi_{t0} z0) - unscaled partial prediction| for z0 on {H = E}.
double error_metric(int k, double energy, double t0, const ProjectivePoint& z0);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = slope x + intercept. Needs >= 3 points.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// Fit of log y against log x; rejects nonpositive data.
LinearFit loglog_fit(std::span<const std::pair<double, double>> points);

/// Fit of log y against x; rejects nonpositive y.
LinearFit semilog_fit(std::span<const std::pair<double, double>> points);

/// max / median of positive samples, the boundedness statistic for
/// remainder-order witnesses.
double max_over_median(std::span<const double> values);

}  // namespace pbk
