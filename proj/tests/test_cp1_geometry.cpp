#include "doctest.h"
#include "pbk/cp1_geometry.hpp"
#include "test_support.hpp"

using namespace pbk;

namespace {

ProjectivePoint pt(std::complex<double> a, std::complex<double> b) { return {a, b}; }

}  // namespace

TEST_CASE("points") {
  CHECK_THROWS_AS(pt(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(pt(1.0, 0.0).zeta(), ChartError);
  CHECK(pt(2.0, 4.0).zeta() == std::complex<double>(0.5, 0.0));
  CHECK(projectively_equal(pt({1, 2}, {3, -1}), pt({1, 2}, {3, -1}).scaled({-0.3, 2.0})));
  CHECK_FALSE(projectively_equal(pt(1.0, 1.0), pt(-1.0, 1.0)));
}

TEST_CASE("height examples") {
  CHECK(height(pt(0.0, 1.0)) == 0.0);
  CHECK(height(pt(1.0, 1.0)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(height(pt(1.0, 0.0)) == 1.0);
  CHECK(height(ProjectivePoint::on_level(0.2, 1.3)) == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("rotation examples") {
  const auto p = pt({0.3, -0.2}, {1.1, 0.4});
  CHECK(projectively_equal(rotate(0.0, p), p));
  CHECK(projectively_equal(rotate(kTwoPi, p), p));
  const auto q = rotate(kPi, pt(1.0, 1.0));
  CHECK(projectively_equal(q, pt(-1.0, 1.0)));
  CHECK(height(q) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("flow laws") {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = pt(testing::random_complex(rng), testing::random_complex(rng));
    const double s = rng.uniform(-3, 3);
    const double t = rng.uniform(-3, 3);
    const double a = rng.uniform(-1.5, 1.5);
    const double b = rng.uniform(-1.5, 1.5);
    CHECK(projectively_equal(rotate(s, rotate(t, p)), rotate(s + t, p)));
    CHECK(projectively_equal(gradient_flow(a, gradient_flow(b, p)), gradient_flow(a + b, p)));
    CHECK(projectively_equal(gradient_flow(a, rotate(t, p)), rotate(t, gradient_flow(a, p))));
    CHECK(height(rotate(t, p)) == doctest::Approx(height(p)).epsilon(1e-14));
    const double h = height(p);
    const double e2a = std::exp(2 * a);
    CHECK(height(gradient_flow(a, p)) ==
          doctest::Approx(e2a * h / (e2a * h + 1 - h)).epsilon(1e-12));
    if (a > 0) CHECK(height(gradient_flow(a, p)) > h);
  }
  CHECK(projectively_equal(gradient_flow(0.0, pt(2.0, 1.0)), pt(2.0, 1.0)));
}

TEST_CASE("operations are invariant under rescaling the representative") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = pt(testing::random_complex(rng), testing::random_complex(rng));
    const auto q = p.scaled(testing::random_complex(rng));
    CHECK(std::abs(height(p) - height(q)) < 1e-12);
    CHECK(std::abs(xh_norm(p) - xh_norm(q)) < 1e-12);
    CHECK(projectively_equal(rotate(0.7, p), rotate(0.7, q)));
    CHECK(projectively_equal(gradient_flow(-0.4, p), gradient_flow(-0.4, q)));
    CHECK((to_sphere(p) - to_sphere(q)).norm() < 1e-12);
  }
}

TEST_CASE("hamiltonian vector field norm") {
  CHECK(xh_norm(pt(1.0, 1.0)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(xh_norm(pt(0.0, 1.0)) == 0.0);
  CHECK(xh_norm(pt(1.0, 0.0)) == 0.0);
  CHECK(xh_norm(ProjectivePoint::on_level(0.2, 0.0)) == doctest::Approx(std::sqrt(0.32)).epsilon(1e-14));
}

TEST_CASE("gradient flow velocity is the metric gradient of H") {
  // With zeta' = zeta, g(zeta', v) must equal dH(v) for every tangent v.
  Rng rng(21);
  const auto h_at = [](std::complex<double> z) { return std::norm(z) / (1.0 + std::norm(z)); };
  for (int trial = 0; trial < 40; ++trial) {
    const std::complex<double> zeta = testing::random_complex(rng);
    const std::complex<double> v = testing::random_complex(rng);
    const double eps = 1e-6;
    const double dh = (h_at(zeta + eps * v) - h_at(zeta - eps * v)) / (2 * eps);
    CHECK(fubini_study_metric(zeta, zeta, v) == doctest::Approx(dh).epsilon(1e-8));
    // The rotation velocity i zeta has norm ||X_H||.
    const std::complex<double> x = std::complex<double>(0, 1) * zeta;
    CHECK(std::sqrt(fubini_study_metric(zeta, x, x)) ==
          doctest::Approx(xh_norm(ProjectivePoint::from_chart(zeta))).epsilon(1e-12));
  }
}

TEST_CASE("fubini study area is 2 pi") {
  // Area form (2 / (1 + r^2)^2) r dr dtheta over the plane.
  double area = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = (i + 0.5) / n;  // r = tan(pi u / 2)
    const double r = std::tan(0.5 * kPi * u);
    const double dr = 0.5 * kPi / std::pow(std::cos(0.5 * kPi * u), 2) / n;
    area += 2.0 / std::pow(1 + r * r, 2) * r * dr * kTwoPi;
  }
  CHECK(area == doctest::Approx(kTwoPi).epsilon(1e-8));
}

TEST_CASE("bloch map") {
  CHECK((to_sphere(pt(1.0, 0.0)) - Vector3::UnitZ()).norm() < 1e-15);
  CHECK((to_sphere(pt(0.0, 1.0)) + Vector3::UnitZ()).norm() < 1e-15);
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = pt(testing::random_complex(rng), testing::random_complex(rng));
    const Vector3 x = to_sphere(p);
    CHECK(x.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(0.5 * (x.z() + 1) == doctest::Approx(height(p)).epsilon(1e-14));
    CHECK(projectively_equal(from_sphere(x), p));
  }
}
