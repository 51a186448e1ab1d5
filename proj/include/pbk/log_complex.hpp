#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <vector>

#include <boost/math/constants/constants.hpp>

namespace pbk {

/// exp(logmag + i phase). logmag = -inf is an exact zero whose phase is
/// irrelevant. Used for kernel values of k-th tensor powers, which leave the
/// range of double long before k = 1000.
template <typename Real>
struct BasicLogComplex {
  Real logmag = -std::numeric_limits<Real>::infinity();
  Real phase = 0;

  static BasicLogComplex zero() { return {}; }

  static BasicLogComplex polar(Real logmag, Real phase) {
    BasicLogComplex c;
    c.logmag = logmag;
    c.phase = phase;
    return c;
  }

  static BasicLogComplex from_cartesian(Real re, Real im) {
    using std::atan2;
    using std::hypot;
    using std::log;
    if (re == 0 && im == 0) return zero();
    return polar(log(hypot(re, im)), atan2(im, re));
  }

  bool is_zero() const { return logmag == -std::numeric_limits<Real>::infinity(); }

  Real magnitude() const {
    using std::exp;
    return is_zero() ? Real(0) : exp(logmag);
  }

  Real real() const {
    using std::cos;
    return is_zero() ? Real(0) : magnitude() * cos(phase);
  }

  Real imag() const {
    using std::sin;
    return is_zero() ? Real(0) : magnitude() * sin(phase);
  }

  BasicLogComplex conj() const { return polar(logmag, -phase); }

  BasicLogComplex operator-() const {
    return polar(logmag, reduced(phase + boost::math::constants::pi<Real>()));
  }

  friend BasicLogComplex operator*(const BasicLogComplex& a, const BasicLogComplex& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return polar(a.logmag + b.logmag, reduced(a.phase + b.phase));
  }

  friend BasicLogComplex operator/(const BasicLogComplex& a, const BasicLogComplex& b) {
    if (a.is_zero()) return zero();
    return polar(a.logmag - b.logmag, reduced(a.phase - b.phase));
  }

  // Angle in [-pi, pi].
  static Real reduced(Real angle) {
    using std::round;
    const Real two_pi = boost::math::constants::two_pi<Real>();
    return angle - two_pi * round(angle / two_pi);
  }
};

using LogComplex = BasicLogComplex<double>;

inline std::complex<double> to_complex(const LogComplex& c) {
  return c.is_zero() ? std::complex<double>{} : std::polar(c.magnitude(), c.phase);
}

inline LogComplex from_complex(std::complex<double> z) {
  return LogComplex::from_cartesian(z.real(), z.imag());
}

template <typename To, typename From>
BasicLogComplex<To> precision_cast(const BasicLogComplex<From>& c) {
  if (c.is_zero()) return BasicLogComplex<To>::zero();
  return BasicLogComplex<To>::polar(static_cast<To>(c.logmag), static_cast<To>(c.phase));
}

/// Sum of log-polar terms. Terms are accumulated in order of decreasing
/// magnitude after factoring out the largest one; exact zeros are skipped.
template <typename Real>
BasicLogComplex<Real> log_sum(std::span<const BasicLogComplex<Real>> terms) {
  using std::cos;
  using std::sin;
  std::vector<const BasicLogComplex<Real>*> order;
  order.reserve(terms.size());
  for (const auto& t : terms)
    if (!t.is_zero()) order.push_back(&t);
  if (order.empty()) return BasicLogComplex<Real>::zero();
  std::stable_sort(order.begin(), order.end(),
                   [](const auto* a, const auto* b) { return a->logmag > b->logmag; });
  const Real top = order.front()->logmag;
  Real re = 0;
  Real im = 0;
  for (const auto* t : order) {
    using std::exp;
    const Real m = exp(t->logmag - top);
    re += m * cos(t->phase);
    im += m * sin(t->phase);
  }
  auto s = BasicLogComplex<Real>::from_cartesian(re, im);
  if (!s.is_zero()) s.logmag += top;
  return s;
}

/// log of sum |t| over the terms.
template <typename Real>
Real log_abs_sum(std::span<const BasicLogComplex<Real>> terms) {
  using std::exp;
  using std::log;
  Real top = -std::numeric_limits<Real>::infinity();
  for (const auto& t : terms) top = std::max(top, t.logmag);
  if (top == -std::numeric_limits<Real>::infinity()) return top;
  Real s = 0;
  for (const auto& t : terms)
    if (!t.is_zero()) s += exp(t.logmag - top);
  return top + log(s);
}

/// |a / b - 1|; 0 when both vanish and +inf when only b does.
template <typename Real>
Real relative_difference(const BasicLogComplex<Real>& a, const BasicLogComplex<Real>& b) {
  using std::abs;
  using std::cos;
  using std::exp;
  using std::sin;
  if (b.is_zero()) return a.is_zero() ? Real(0) : std::numeric_limits<Real>::infinity();
  if (a.is_zero()) return Real(1);
  const Real m = exp(a.logmag - b.logmag);
  const Real dphi = a.phase - b.phase;
  const Real re = m * cos(dphi) - 1;
  const Real im = m * sin(dphi);
  using std::hypot;
  return hypot(re, im);
}

}  // namespace pbk
