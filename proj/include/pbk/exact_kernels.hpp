#pragma once

// Exact kernel coefficients on CP^1 relative to the invariant frame
// S_k(z, w) = sigma(z)^k (x) sigma^*(w)^k, sigma = s_{1,0} / |s_{1,0}|, on the
// chart {z1 != 0}. With zeta = z0/z1 and omega = w0/w1,
//
//   kappa_{k,l}(z)   = sqrt((k+1) C(k,l) / 2pi) zeta^l (1 + |zeta|^2)^{-k/2},
//   K_k(z, w)        = sum_l kappa_{k,l}(z) conj(kappa_{k,l}(w)),
//   K_{k,E}(z, w)    = sum_{l >= ceil(kE)} kappa_{k,l}(z) conj(kappa_{k,l}(w)).
//
// All values are returned in log-polar form.

#include <cmath>
#include <complex>
#include <vector>

#include "pbk/circle_spectral.hpp"
#include "pbk/cp1_geometry.hpp"
#include "pbk/log_complex.hpp"

namespace pbk {

/// log C(n, k) for 0 <= k <= n, relative error below 1e-12 up to n = 1e6.
double log_binomial(long long n, long long k);

/// kappa_{k,l}(p).
LogComplex section_coeff(int k, int l, const ProjectivePoint& p);

/// Full Bergman kernel coefficient sum_l kappa_l(z) conj(kappa_l(w)), evaluated
/// in closed form as (k+1)/2pi (1 + zeta conj(omega))^k ((1+|zeta|^2)(1+|omega|^2))^{-k/2}.
LogComplex bergman_coeff(int k, const ProjectivePoint& z, const ProjectivePoint& w);

/// (k+1)/(2pi) (1 + zeta conj(omega))^k ((1 + |zeta|^2)(1 + |omega|^2))^{-k/2}.
template <typename Real>
BasicLogComplex<Real> bergman_coeff_closed(int k, std::complex<double> zeta,
                                           std::complex<double> omega);

/// Equivariant kernel s_{k,l}(z) (x) s_{k,l}^*(w).
LogComplex equivariant_coeff(int k, int l, const ProjectivePoint& z, const ProjectivePoint& w);

/// Partial Bergman kernel 1_[E,inf)(H_k). Requires cfg.stabilizer == 1.
LogComplex partial_coeff(const SpectralConfig& cfg, const ProjectivePoint& z,
                         const ProjectivePoint& w);

/// Kernel of V_{k,E_k}(t) = e^{-i ceil(kE) t} e^{iktH_k}, summed over its
/// frequency decomposition sum_l e^{it(l - ceil(kE))} kappa_l(z) conj(kappa_l(w)).
LogComplex propagator_coeff(const SpectralConfig& cfg, double t, const ProjectivePoint& z,
                            const ProjectivePoint& w);

/// Same kernel in closed form: e^{-i ceil(kE) t} K_k(phi_t(z), w).
template <typename Real>
BasicLogComplex<Real> propagator_coeff_closed(const SpectralConfig& cfg, Real t,
                                              std::complex<double> zeta,
                                              std::complex<double> omega);

/// The three pieces of the Hilbert-transform representation of the partial
/// kernel, and their assembly (i H + K_k + mean) / 2.
template <typename Real>
struct HilbertRouteTerms {
  BasicLogComplex<Real> hilbert;  // H_{S^1}(V_{k,E_k}(z, w))(0)
  BasicLogComplex<Real> bergman;  // K_k(z, w)
  BasicLogComplex<Real> mean;     // (1/2pi) int V_{k,E_k}(t)(z, w) dt
  BasicLogComplex<Real> partial;
};

/// 8 (k + 1).
int required_kernel_nodes(int k);

/// Hilbert-route terms with midpoint quadrature of the closed-form propagator
/// in the scalar type Real. nodes <= 0 selects required_kernel_nodes(k).
template <typename Real>
HilbertRouteTerms<Real> hilbert_route_terms(const SpectralConfig& cfg, const ProjectivePoint& z,
                                            const ProjectivePoint& w, int nodes = 0);

/// Partial kernel through the Hilbert route. The quadrature recovers values
/// that can be many orders of magnitude below the total kernel mass, so it
/// runs in MPFR and doubles the working precision until two successive
/// results agree to 1e-13.
LogComplex partial_via_hilbert(const SpectralConfig& cfg, const ProjectivePoint& z,
                               const ProjectivePoint& w, int nodes = 0);

/// <M_H s_{k,l}, s_{k,l}> = (k+1) C(k,l) B(l+2, k-l+1) = (l+1)/(k+2).
double toeplitz_diag(int k, int l);

// ---------------------------------------------------------------------------

template <typename Real>
BasicLogComplex<Real> bergman_coeff_closed(int k, std::complex<double> zeta,
                                           std::complex<double> omega) {
  using std::atan2;
  using std::log;
  using std::log1p;
  const Real re_x = Real(zeta.real()) * Real(omega.real()) + Real(zeta.imag()) * Real(omega.imag());
  const Real im_x = Real(zeta.imag()) * Real(omega.real()) - Real(zeta.real()) * Real(omega.imag());
  const Real re = 1 + re_x;
  if (re == 0 && im_x == 0) return BasicLogComplex<Real>::zero();
  const Real nz = Real(zeta.real()) * Real(zeta.real()) + Real(zeta.imag()) * Real(zeta.imag());
  const Real nw = Real(omega.real()) * Real(omega.real()) + Real(omega.imag()) * Real(omega.imag());
  const Real two_pi = boost::math::constants::two_pi<Real>();
  const Real logmag = log(Real(k + 1) / two_pi) + Real(k) * log(re * re + im_x * im_x) / 2 -
                      Real(k) * (log1p(nz) + log1p(nw)) / 2;
  return BasicLogComplex<Real>::polar(logmag,
                                      BasicLogComplex<Real>::reduced(Real(k) * atan2(im_x, re)));
}

template <typename Real>
BasicLogComplex<Real> propagator_coeff_closed(const SpectralConfig& cfg, Real t,
                                              std::complex<double> zeta,
                                              std::complex<double> omega) {
  using std::atan2;
  using std::cos;
  using std::log;
  using std::log1p;
  using std::sin;
  // x = zeta e^{it} conj(omega)
  const Real c = cos(t);
  const Real s = sin(t);
  const Real a_re = Real(zeta.real()) * c - Real(zeta.imag()) * s;
  const Real a_im = Real(zeta.real()) * s + Real(zeta.imag()) * c;
  const Real re = 1 + a_re * Real(omega.real()) + a_im * Real(omega.imag());
  const Real im = a_im * Real(omega.real()) - a_re * Real(omega.imag());
  if (re == 0 && im == 0) return BasicLogComplex<Real>::zero();
  const Real nz = Real(zeta.real()) * Real(zeta.real()) + Real(zeta.imag()) * Real(zeta.imag());
  const Real nw = Real(omega.real()) * Real(omega.real()) + Real(omega.imag()) * Real(omega.imag());
  const Real two_pi = boost::math::constants::two_pi<Real>();
  const Real logmag = log(Real(cfg.k + 1) / two_pi) + Real(cfg.k) * log(re * re + im * im) / 2 -
                      Real(cfg.k) * (log1p(nz) + log1p(nw)) / 2;
  const Real phase = Real(cfg.k) * atan2(im, re) - Real(cfg.ceil_level()) * t;
  return BasicLogComplex<Real>::polar(logmag, BasicLogComplex<Real>::reduced(phase));
}

template <typename Real>
HilbertRouteTerms<Real> hilbert_route_terms(const SpectralConfig& cfg, const ProjectivePoint& z,
                                            const ProjectivePoint& w, int nodes) {
  using std::cos;
  using std::exp;
  using std::log;
  using std::log1p;
  using std::sin;
  using std::sqrt;
  using std::tan;
  if (cfg.stabilizer != 1) throw DomainError("hilbert_route_terms: CP^1 kernels need N = 1");
  const std::complex<double> zeta = z.zeta();
  const std::complex<double> omega = w.zeta();
  const int required = required_kernel_nodes(cfg.k);
  if (nodes <= 0) nodes = required;
  if (nodes < required) throw InsufficientNodesError(nodes, required);

  // Every node value is bounded by the kernel mass
  // (k+1)/(2pi) ((1 + |zeta||omega|)^2 / ((1+|zeta|^2)(1+|omega|^2)))^{k/2};
  // sums are accumulated relative to it.
  const Real az = sqrt(Real(std::norm(zeta)));
  const Real aw = sqrt(Real(std::norm(omega)));
  const Real two_pi = boost::math::constants::two_pi<Real>();
  const Real pi = boost::math::constants::pi<Real>();
  const Real log_mass = log(Real(cfg.k + 1) / two_pi) + Real(cfg.k) * log1p(az * aw) -
                        Real(cfg.k) * (log1p(az * az) + log1p(aw * aw)) / 2;

  struct Acc {
    Real re = 0;
    Real im = 0;
    void add(const BasicLogComplex<Real>& v, Real weight, Real log_ref) {
      if (v.is_zero()) return;
      const Real m = weight * exp(v.logmag - log_ref);
      re += m * cos(v.phase);
      im += m * sin(v.phase);
    }
  };

  const int half = (nodes + 1) / 2;
  const Real step = pi / Real(half);
  Acc hilbert;
  Acc mean;
  const bool even = nodes % 2 == 0;
  for (int j = 0; j < half; ++j) {
    const Real tau = (Real(j) + Real(0.5)) * step;
    const auto plus = propagator_coeff_closed<Real>(cfg, tau, zeta, omega);
    const auto minus = propagator_coeff_closed<Real>(cfg, Real(-tau), zeta, omega);
    const Real cot = 1 / tan(tau / 2);
    hilbert.add(minus, cot, log_mass);
    hilbert.add(-plus, cot, log_mass);
    if (even) {
      mean.add(plus, Real(1), log_mass);
      mean.add(minus, Real(1), log_mass);
    }
  }
  if (!even) {
    const Real h = two_pi / Real(nodes);
    for (int j = 0; j < nodes; ++j) {
      const Real t = -pi + (Real(j) + Real(0.5)) * h;
      mean.add(propagator_coeff_closed<Real>(cfg, t, zeta, omega), Real(1), log_mass);
    }
  }
  const Real hscale = step / two_pi;
  hilbert.re *= hscale;
  hilbert.im *= hscale;
  mean.re /= Real(nodes);
  mean.im /= Real(nodes);

  Acc full;
  const auto bergman = bergman_coeff_closed<Real>(cfg.k, zeta, omega);
  full.add(bergman, Real(1), log_mass);

  // (i H + K + mean) / 2
  const Real p_re = (-hilbert.im + full.re + mean.re) / 2;
  const Real p_im = (hilbert.re + full.im + mean.im) / 2;

  auto lift = [&](Real re, Real im) {
    auto v = BasicLogComplex<Real>::from_cartesian(re, im);
    if (!v.is_zero()) v.logmag += log_mass;
    return v;
  };
  HilbertRouteTerms<Real> out;
  out.hilbert = lift(hilbert.re, hilbert.im);
  out.bergman = bergman;
  out.mean = lift(mean.re, mean.im);
  out.partial = lift(p_re, p_im);
  return out;
}

}  // namespace pbk
