#include "pbk/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pbk/circle_spectral.hpp"
#include "pbk/exact_kernels.hpp"

namespace pbk {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};
constexpr double kStabilizerExclusion = 1e-3;

void require_positive_xh(double xh) {
  if (!(xh > 0.0) || !std::isfinite(xh)) throw DomainError("predictor: need ||X_H|| > 0");
}

double gaussian_factor(double xh, const ScalingProbe& probe) {
  return std::exp(-(probe.a * probe.a + probe.b * probe.b) * xh * xh / 2.0);
}

// C_{k,1} is bounded by (|a| + |b|) c, so at a = b = 0 only the k^{-3/2} part remains.
double remainder_order(const ScalingProbe& probe) {
  return probe.a == 0.0 && probe.b == 0.0 ? -1.5 : -1.0;
}

}  // namespace

ProjectivePoint ScalingProbe::first(int k) const {
  return gradient_flow(a / std::sqrt(static_cast<double>(k)), base);
}

ProjectivePoint ScalingProbe::second(int k) const {
  return gradient_flow(b / std::sqrt(static_cast<double>(k)), rotate(t0, base));
}

std::complex<double> AsymptoticPrediction::unscaled(int k) const {
  return leading * std::pow(k / kTwoPi, dimension);
}

AsymptoticPrediction predict_partial(int k, double energy, int stabilizer, int dimension,
                                     double xh, const ScalingProbe& probe) {
  require_positive_xh(xh);
  const SpectralConfig cfg(k, energy, stabilizer);
  const double half_angle = 0.5 * stabilizer * probe.t0;
  if (std::abs(std::sin(half_angle)) < kStabilizerExclusion)
    throw DomainError("predict_partial: t0 too close to the stabilizer set (N t0 in 2 pi Z)");
  const double level = static_cast<double>(cfg.ceil_level());
  const std::complex<double> phase = std::polar(1.0, -level * probe.t0);
  const std::complex<double> shape = 1.0 - kI * (std::cos(half_angle) / std::sin(half_angle));
  AsymptoticPrediction p;
  p.leading = gaussian_factor(xh, probe) * phase * static_cast<double>(stabilizer) * shape /
              (2.0 * xh * std::sqrt(kPi * k));
  p.remainder_order = remainder_order(probe);
  p.dimension = dimension;
  return p;
}

AsymptoticPrediction predict_equivariant(int k, double lambda_k, int stabilizer, int dimension,
                                         double xh, const ScalingProbe& probe) {
  require_positive_xh(xh);
  if (k < 1 || stabilizer < 1) throw DomainError("predict_equivariant: k and N must be positive");
  const double scaled = k * lambda_k;
  const double multiple = std::round(scaled / stabilizer) * stabilizer;
  if (std::abs(scaled - multiple) > 1e-9)
    throw DomainError("predict_equivariant: k * lambda_k is not an integer multiple of N");
  AsymptoticPrediction p;
  p.leading = gaussian_factor(xh, probe) * std::polar(1.0, -multiple * probe.t0) *
              static_cast<double>(stabilizer) / (xh * std::sqrt(kPi * k));
  p.remainder_order = remainder_order(probe);
  p.dimension = dimension;
  return p;
}

std::complex<double> stirling_estimate(int k, int l, double energy, double theta) {
  if (!(energy > 0.0 && energy < 1.0)) throw DomainError("stirling_estimate: need 0 < E < 1");
  if (std::abs(l - k * energy) > 2.0)
    throw DomainError("stirling_estimate: |l - kE| must not exceed 2");
  const double modulus =
      std::pow(k, 0.25) / std::pow(kTwoPi, 0.75) / std::pow(energy * (1.0 - energy), 0.25);
  return std::polar(modulus, l * theta);
}

double error_metric(int k, double energy, double t0, const ProjectivePoint& z0) {
  if (std::abs(height(z0) - energy) > 1e-9)
    throw DomainError("error_metric: z0 does not lie on the level set {H = E}");
  const SpectralConfig cfg(k, energy);
  const ScalingProbe probe{z0, 0.0, 0.0, t0};
  const auto exact = to_complex(partial_coeff(cfg, z0, rotate(t0, z0)));
  const auto predicted = predict_partial(k, energy, 1, 1, xh_norm(z0), probe).unscaled(k);
  return std::abs(exact - predicted);
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("linear_fit: size mismatch");
  if (x.size() < 3) throw DomainError("linear_fit: need at least 3 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("linear_fit: abscissae are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  // A constant series is fitted exactly.
  fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  return fit;
}

LinearFit loglog_fit(std::span<const std::pair<double, double>> points) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& [px, py] : points) {
    if (!(px > 0.0) || !(py > 0.0)) throw DomainError("loglog_fit: data must be positive");
    x.push_back(std::log(px));
    y.push_back(std::log(py));
  }
  return linear_fit(x, y);
}

LinearFit semilog_fit(std::span<const std::pair<double, double>> points) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& [px, py] : points) {
    if (!(py > 0.0)) throw DomainError("semilog_fit: ordinates must be positive");
    x.push_back(px);
    y.push_back(std::log(py));
  }
  return linear_fit(x, y);
}

double max_over_median(std::span<const double> values) {
  if (values.empty()) throw DomainError("max_over_median: no samples");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  const double median = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  if (!(median > 0.0)) throw DomainError("max_over_median: median must be positive");
  return v.back() / median;
}

}  // namespace pbk
