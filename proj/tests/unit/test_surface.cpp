#include <cmath>
#include <numbers>
#include <sstream>

#include "helpers.hpp"
#include "vortexlab/surface.hpp"

using namespace vortexlab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("surface") {

TEST_CASE("chart points and the sphere") {
  const Vec3 s = to_sphere(ChartPoint::finite(0.0));
  CHECK(s[2] == doctest::Approx(-1.0));
  const Vec3 n = to_sphere(ChartPoint::at_infinity());
  CHECK(n[2] == doctest::Approx(1.0));
  CHECK(from_sphere(n).infinity);
  CHECK_FALSE(ChartPoint::at_infinity() == ChartPoint::finite(1e300));
  for (const complex z : {complex(0.3, -0.2), complex(-4.0, 2.5), complex(1e-3, 0.0)}) {
    const ChartPoint back = from_sphere(to_sphere(ChartPoint::finite(z)));
    CHECK_FALSE(back.infinity);
    CHECK(std::abs(back.z - z) <= 1e-12 * (1.0 + std::abs(z)));
  }
  // Chordal factor |z - w|^2 / ((1+|z|^2)(1+|w|^2)).
  const complex z(0.3, 0.4), w(-1.0, 0.5);
  const double expect = std::norm(z - w) / ((1.0 + std::norm(z)) * (1.0 + std::norm(w)));
  CHECK(chordal(ChartPoint::finite(z), ChartPoint::finite(w)) == doctest::Approx(expect).epsilon(1e-13));
  CHECK(chordal(ChartPoint::finite(z), ChartPoint::at_infinity()) ==
        doctest::Approx(1.0 / (1.0 + std::norm(z))).epsilon(1e-13));
}

TEST_CASE("background density") {
  const SurfaceSpec round = make_surface(4.0 * kPi, {});
  CHECK(background_density(round, ChartPoint::finite(0.0)) == doctest::Approx(4.0));
  CHECK(background_density(make_surface(8.0 * kPi, {}), ChartPoint::finite(0.0)) == doctest::Approx(8.0));
  // South-chart value at infinity.
  CHECK(background_density(round, ChartPoint::at_infinity()) == doctest::Approx(4.0));
}

TEST_CASE("rho and its normalisation") {
  CHECK(rho(make_surface(4.0 * kPi, {}), ChartPoint::finite(0.7)) == doctest::Approx(1.0));
  const SurfaceSpec one = make_surface(4.0 * kPi, {{ChartPoint::finite(0.0), 1.0}});
  CHECK(rho(one, ChartPoint::finite(0.0)) == 0.0);
  CHECK(one.normalization == doctest::Approx(2.0));
  // Frozen fixture: single cone beta = 0.5 has C = 1.5; quadrature agrees.
  const std::vector<ConicalPoint> half{{ChartPoint::finite(0.0), 0.5}};
  CHECK(make_surface(4.0 * kPi, half).normalization == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(rho_normalization_quadrature(half) == doctest::Approx(1.5).epsilon(1e-10));
  // Two antipodal cones: Gamma-ratio closed form vs quadrature.
  const std::vector<ConicalPoint> two{{ChartPoint::finite(0.0), 0.5}, {ChartPoint::at_infinity(), -0.3}};
  CHECK(make_surface(4.0 * kPi, two).normalization ==
        doctest::Approx(rho_normalization_quadrature(two)).epsilon(1e-9));
  // Non-antipodal pair goes through quadrature.
  const std::vector<ConicalPoint> skew{{ChartPoint::finite(0.0), 0.5}, {ChartPoint::finite(1.0), 0.5}};
  CHECK(make_surface(4.0 * kPi, skew).normalization > 0.0);
  CHECK_THROWS_CODE(rho(make_surface(4.0 * kPi, {{ChartPoint::finite(0.0), -0.5}}), ChartPoint::finite(0.0)),
                    ErrorCode::EvaluationAtSingularity);
}

TEST_CASE("surface validation") {
  CHECK_THROWS_CODE(make_surface(-1.0, {}), ErrorCode::InvalidInput);
  CHECK_THROWS_CODE(make_surface(1.0, {{ChartPoint::finite(0.0), -1.0}}), ErrorCode::InvalidInput);
  CHECK_THROWS_CODE(make_surface(1.0, {{ChartPoint::finite(0.0), 0.5}, {ChartPoint::finite(0.0), 0.2}}),
                    ErrorCode::InvalidInput);
  CHECK_THROWS_CODE(SphericalGrid(8, 64), ErrorCode::InvalidInput);
  CHECK_THROWS_CODE(SphericalGrid(16, 16), ErrorCode::InvalidInput);
}

TEST_CASE("volume quadrature") {
  const SphericalGrid g(128, 256);
  CHECK(std::abs(volume(make_surface(4.0 * kPi, {}), g) - 4.0 * kPi) <= 1e-6);
  const SurfaceSpec plus = make_surface(4.0 * kPi, {{ChartPoint::finite(0.0), 0.5}});
  CHECK(std::abs(volume(plus, g) - 4.0 * kPi) <= 1e-3);
  const SurfaceSpec minus = make_surface(4.0 * kPi, {{ChartPoint::finite(0.0), -0.5}});
  CHECK(std::abs(volume(minus, g) - 4.0 * kPi) <= 1e-2);
}

TEST_CASE("Laplacian") {
  const SurfaceSpec spec = make_surface(4.0 * kPi, {});
  const SphericalGrid g(128, 256);
  ScalarField c(g, 3.7);
  const ScalarField lc = laplace_apply(spec, g, c);
  for (double v : lc.values) CHECK(std::abs(v) <= 1e-12);

  // Coordinate function X = 2 Re z / (1 + |z|^2), an l = 1 harmonic:
  // Lap X = (2 / r^2) X, here r^2 = 1.
  ScalarField x(g);
  for (int a = 0; a < g.nLat(); ++a) {
    for (int b = 0; b < g.nLon(); ++b) x(a, b) = g.node(a, b)[0];
  }
  const ScalarField lx = laplace_apply(spec, g, x);
  double num = 0.0, den = 0.0;
  for (int a = 0; a < g.nLat(); ++a) {
    for (int b = 0; b < g.nLon(); ++b) {
      const double d = lx(a, b) - 2.0 * x(a, b);
      num += d * d * g.cell_area(a);
      den += 4.0 * x(a, b) * x(a, b) * g.cell_area(a);
    }
  }
  CHECK(std::sqrt(num / den) <= 1e-3);

  // Divergence theorem for a smooth non-harmonic field.
  ScalarField u(g);
  for (int a = 0; a < g.nLat(); ++a) {
    for (int b = 0; b < g.nLon(); ++b) {
      const Vec3 p = g.node(a, b);
      u(a, b) = std::sin(2.0 * p[0]) + p[1] * p[2] + std::exp(p[2]);
    }
  }
  CHECK(std::abs(integrate(laplace_apply(spec, g, u), spec.targetVolume)) <= 1e-8);
}

TEST_CASE("Gaussian curvature") {
  auto sphere = [](complex z) { return 4.0 / std::pow(1.0 + std::norm(z), 2); };
  auto disk = [](complex z) { return 4.0 / std::pow(1.0 - std::norm(z), 2); };
  CHECK(gaussian_curvature(sphere, {0.3, 0.2}) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(gaussian_curvature(disk, {0.5, 0.0}) == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK_THROWS_CODE(gaussian_curvature(disk, {1e-5, 0.0}, {complex(0.0)}), ErrorCode::StepUnderflow);
}

TEST_CASE("divisor point validation") {
  const SphericalGrid g(64, 128);
  CHECK_NOTHROW(validate_divisor_points(g, {ChartPoint::finite(0.0), ChartPoint::finite(1.0)}, "zeros"));
  // z = i is a grid pole.
  CHECK_THROWS_CODE(validate_divisor_points(g, {ChartPoint::finite({0.0, 1.0})}, "zeros"),
                    ErrorCode::InvalidInput);
  // A cell centre.
  CHECK_THROWS_CODE(validate_divisor_points(g, {g.node_chart(20, 7)}, "zeros"), ErrorCode::InvalidInput);
  // Two points a fraction of a cell apart.
  CHECK_THROWS_CODE(validate_divisor_points(g, {ChartPoint::finite(0.3), ChartPoint::finite(0.305)}, "zeros"),
                    ErrorCode::InvalidInput);
}

TEST_CASE("CSV dump") {
  const SphericalGrid g(16, 32);
  ScalarField f(g, 0.1);
  std::ostringstream os;
  write_csv(os, f);
  const std::string s = os.str();
  CHECK(s.rfind("theta,phi,value\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 1 + 16 * 32);
  CHECK(s.find("0.10000000000000001") != std::string::npos);
}

}  // TEST_SUITE
