#include "pbk/exact_kernels.hpp"

#include <array>
#include <cmath>
#include <limits>

#include <boost/multiprecision/mpfr.hpp>

namespace pbk {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// stirlerr(n) = log(n!) - (n + 1/2) log n + n - log(2 pi) / 2
double stirlerr(long long n) {
  static const std::array<double, 16> table = [] {
    std::array<double, 16> t{};
    const long double half_log_2pi = 0.5L * std::log(2.0L * 3.141592653589793238462643383279502884L);
    for (int i = 1; i < 16; ++i) {
      const long double x = i;
      t[i] = static_cast<double>(std::lgamma(x + 1.0L) - (x + 0.5L) * std::log(x) + x - half_log_2pi);
    }
    return t;
  }();
  if (n < 16) return table[n];
  constexpr double s0 = 1.0 / 12.0;
  constexpr double s1 = 1.0 / 360.0;
  constexpr double s2 = 1.0 / 1260.0;
  constexpr double s3 = 1.0 / 1680.0;
  constexpr double s4 = 1.0 / 1188.0;
  const double x = static_cast<double>(n);
  const double x2 = x * x;
  return (s0 - (s1 - (s2 - (s3 - s4 / x2) / x2) / x2) / x2) / x;
}

struct Chart {
  std::complex<double> zeta;
  std::complex<double> omega;
  double log_abs_product;  // log|zeta| + log|omega|
  double arg_difference;   // arg zeta - arg omega
  double log_norm;         // -(k/2)(log1p|zeta|^2 + log1p|omega|^2)
};

Chart chart_pair(int k, const ProjectivePoint& z, const ProjectivePoint& w) {
  Chart c;
  c.zeta = z.zeta();
  c.omega = w.zeta();
  c.log_abs_product = std::log(std::abs(c.zeta)) + std::log(std::abs(c.omega));
  c.arg_difference = std::arg(c.zeta) - std::arg(c.omega);
  c.log_norm = -0.5 * k * (std::log1p(std::norm(c.zeta)) + std::log1p(std::norm(c.omega)));
  return c;
}

// kappa_l(z) conj(kappa_l(w)) e^{i l t - i shift t}
LogComplex pair_term(int k, int l, const Chart& c, double t = 0.0, double shift = 0.0) {
  if (l > 0 && c.log_abs_product == kNegInf) return LogComplex::zero();
  const double logmag = std::log((k + 1) / kTwoPi) + log_binomial(k, l) +
                        (l > 0 ? l * c.log_abs_product : 0.0) + c.log_norm;
  const double phase = l * c.arg_difference + (l - shift) * t;
  return LogComplex::polar(logmag, LogComplex::reduced(phase));
}

std::vector<LogComplex> pair_terms(int k, const Chart& c, double t = 0.0, double shift = 0.0) {
  std::vector<LogComplex> terms;
  terms.reserve(k + 1);
  for (int l = 0; l <= k; ++l) terms.push_back(pair_term(k, l, c, t, shift));
  return terms;
}

}  // namespace

double log_binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) throw DomainError("log_binomial: need 0 <= k <= n");
  const long long m = std::min(k, n - k);
  if (m == 0) return 0.0;
  if (m <= 16) {
    // sum_{j=1}^{m} log((n - m + j) / j)
    double s = 0.0;
    for (long long j = 1; j <= m; ++j) s += std::log(static_cast<double>(n - m + j) / j);
    return s;
  }
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  const double rest = nn - kk;
  const double p = kk / nn;
  // n log n - k log k - (n-k) log(n-k), written without the large terms
  const double entropy = -kk * std::log(p) - rest * std::log1p(-p);
  return stirlerr(n) - stirlerr(k) - stirlerr(n - k) + entropy +
         0.5 * std::log(nn / (kTwoPi * kk * rest));
}

LogComplex section_coeff(int k, int l, const ProjectivePoint& p) {
  if (k < 0 || l < 0 || l > k) throw DomainError("section_coeff: need 0 <= l <= k");
  const std::complex<double> zeta = p.zeta();
  const double r = std::abs(zeta);
  if (l > 0 && r == 0.0) return LogComplex::zero();
  const double logmag = 0.5 * (std::log((k + 1) / kTwoPi) + log_binomial(k, l)) +
                        (l > 0 ? l * std::log(r) : 0.0) - 0.5 * k * std::log1p(r * r);
  return LogComplex::polar(logmag, LogComplex::reduced(l * std::arg(zeta)));
}

LogComplex bergman_coeff(int k, const ProjectivePoint& z, const ProjectivePoint& w) {
  if (k < 0) throw DomainError("bergman_coeff: k must be nonnegative");
  // The closed form. The frequency sum equals it, but cancels badly once w
  // approaches the antipode of z.
  return bergman_coeff_closed<double>(k, z.zeta(), w.zeta());
}

LogComplex equivariant_coeff(int k, int l, const ProjectivePoint& z, const ProjectivePoint& w) {
  if (k < 0 || l < 0 || l > k) throw DomainError("equivariant_coeff: need 0 <= l <= k");
  return pair_term(k, l, chart_pair(k, z, w));
}

LogComplex partial_coeff(const SpectralConfig& cfg, const ProjectivePoint& z,
                         const ProjectivePoint& w) {
  if (cfg.stabilizer != 1) throw DomainError("partial_coeff: CP^1 kernels need N = 1");
  const int k = cfg.k;
  const Chart c = chart_pair(k, z, w);
  const long long level = cfg.ceil_level();
  if (level > k) return LogComplex::zero();
  const LogComplex full = bergman_coeff_closed<double>(k, c.zeta, c.omega);
  if (level <= 0) return full;
  const auto terms = pair_terms(k, c);

  const auto split = terms.begin() + level;
  const std::span<const LogComplex> lower(terms.begin(), split);
  const std::span<const LogComplex> upper(split, terms.end());

  // Two equal evaluations: the upper tail directly, or the closed-form full
  // kernel minus the lower tail. Take the one with less absolute mass; it
  // bounds the rounding error of the result.
  const double upper_mass = log_abs_sum(upper);
  std::vector<LogComplex> complement;
  complement.reserve(lower.size() + 1);
  complement.push_back(full);
  for (const auto& t : lower) complement.push_back(-t);
  const double complement_mass = log_abs_sum<double>(complement);
  if (upper_mass <= complement_mass) return log_sum(upper);
  return log_sum<double>(complement);
}

LogComplex propagator_coeff(const SpectralConfig& cfg, double t, const ProjectivePoint& z,
                            const ProjectivePoint& w) {
  if (cfg.stabilizer != 1) throw DomainError("propagator_coeff: CP^1 kernels need N = 1");
  const auto terms =
      pair_terms(cfg.k, chart_pair(cfg.k, z, w), t, static_cast<double>(cfg.ceil_level()));
  return log_sum<double>(terms);
}

int required_kernel_nodes(int k) { return 8 * (k + 1); }

LogComplex partial_via_hilbert(const SpectralConfig& cfg, const ProjectivePoint& z,
                               const ProjectivePoint& w, int nodes) {
  using boost::multiprecision::mpfr_float;
  constexpr double kAgreement = 1e-13;
  constexpr unsigned kMaxDigits = 8192;

  if (cfg.stabilizer != 1) throw DomainError("partial_via_hilbert: CP^1 kernels need N = 1");
  const std::complex<double> zeta = z.zeta();
  const std::complex<double> omega = w.zeta();
  if (nodes > 0 && nodes < required_kernel_nodes(cfg.k))
    throw InsufficientNodesError(nodes, required_kernel_nodes(cfg.k));
  // Exact zeros: an empty spectral window, or only the l = 0 mode survives
  // at a pole while l = 0 is cut away. A quadrature cannot resolve them in
  // relative terms.
  const long long level = cfg.ceil_level();
  if (level > cfg.k) return LogComplex::zero();
  if (level > 0 && (zeta == 0.0 || omega == 0.0)) return LogComplex::zero();

  struct PrecisionGuard {
    unsigned saved = mpfr_float::default_precision();
    ~PrecisionGuard() { mpfr_float::default_precision(saved); }
  } guard;

  unsigned digits = 40;
  mpfr_float::default_precision(digits);
  auto previous = hilbert_route_terms<mpfr_float>(cfg, z, w, nodes).partial;
  while (digits < kMaxDigits) {
    digits *= 2;
    mpfr_float::default_precision(digits);
    auto current = hilbert_route_terms<mpfr_float>(cfg, z, w, nodes).partial;
    if (relative_difference(current, previous) <= mpfr_float(kAgreement))
      return precision_cast<double>(current);
    previous = current;
  }
  throw DomainError("partial_via_hilbert: no convergence below " + std::to_string(kMaxDigits) +
                    " digits");
}

double toeplitz_diag(int k, int l) {
  if (k < 0 || l < 0 || l > k) throw DomainError("toeplitz_diag: need 0 <= l <= k");
  // |s_{k,l}|^2 = (k+1) C(k,l) H^l (1-H)^{k-l} / (2pi) and d mu = dH d theta,
  // so <M_H s, s> = (k+1) C(k,l) B(l+2, k-l+1).
  const double log_beta = std::lgamma(l + 2.0) + std::lgamma(k - l + 1.0) - std::lgamma(k + 3.0);
  return std::exp(std::log(k + 1.0) + log_binomial(k, l) + log_beta);
}

}  // namespace pbk
