#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "vortexlab/moduli.hpp"

using namespace vortexlab;

namespace {

constexpr double kPi = std::numbers::pi;

ModuliQuery query(int g, int d, double V, double eSq = 1.0, double tau = 1.0, double alphaSum = 0.0,
                  int n = 1) {
  ModuliQuery q;
  q.g = g;
  q.d = d;
  q.n = n;
  q.V = V;
  q.couplings = {eSq, tau};
  q.alphaSum = alphaSum;
  return q;
}

// Random admissible query: V chosen inside the Bradlow region with margin.
ModuliQuery random_query(std::mt19937_64& rng, int gMax, int dMin, int dMax, bool fixE = false) {
  std::uniform_int_distribution<int> gi(0, gMax), di(dMin, dMax);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ModuliQuery q;
  q.g = gi(rng);
  q.d = std::max(di(rng), 2 * q.g - 1);
  q.couplings = {fixE ? 0.5 : 0.2 + 2.0 * u(rng), 0.3 + 2.0 * u(rng)};
  q.alphaSum = 2.0 * u(rng);
  q.V = 2.0 * kPi * (q.d + q.alphaSum) / (q.couplings.tau * q.couplings.eSq) * (1.05 + 2.0 * u(rng));
  return q;
}

// Neville extrapolation of samples (x_j, y_j) to x = 0.
double extrapolate_to_zero(std::vector<double> x, std::vector<double> y) {
  const std::size_t n = x.size();
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t j = 0; j + m < n; ++j) {
      y[j] = (x[j + m] * y[j] - x[j] * y[j + 1]) / (x[j + m] - x[j]);
    }
  }
  return y[0];
}

}  // namespace

TEST_SUITE("moduli") {

TEST_CASE("regularity exponent") {
  CHECK_FALSE(regularity_k(0.0, 0.0).has_value());
  CHECK(regularity_k(0.5, -0.5) == 0);
  CHECK(regularity_k(1.3, 0.4) == 2);
  CHECK(regularity_k(0.5, 1.0) == 3);
  CHECK(regularity_k(0.25, 2.0 + 1e-13) == 4);
  // Integer alpha and beta >= 0: smooth; beta < 0: k = 0.
  for (int a = 0; a <= 4; ++a) {
    for (int b = 0; b <= 4; ++b) CHECK_FALSE(regularity_k(a, b).has_value());
    for (double b : {-0.9, -0.5, -0.1}) CHECK(regularity_k(a + 0.3, b) == 0);
  }
  CHECK_THROWS_CODE(regularity_k(-0.1, 0.0), ErrorCode::DomainError);
  CHECK_THROWS_CODE(regularity_k(0.0, -1.0), ErrorCode::DomainError);
}

TEST_CASE("Kahler class") {
  const KahlerClass k = kahler_class_coefficients(query(0, 1, 4.0 * kPi));
  CHECK(k.etaCoeff == doctest::Approx(2.0 * kPi * kPi));
  CHECK(k.thetaCoeff == doctest::Approx(2.0 * kPi * kPi));
  for (double s : {0.1, 1.0, 3.5}) {
    const ModuliQuery q = query(1, 2, 9.0 * kPi, 0.7, 1.3, 0.4);
    ModuliQuery shifted = q;
    shifted.V += 2.0 * kPi * s / (q.couplings.eSq * q.couplings.tau);
    shifted.alphaSum += s;
    CHECK(rel_err(kahler_class_coefficients(shifted).etaCoeff, kahler_class_coefficients(q).etaCoeff) <= 1e-13);
  }
  CHECK_THROWS_CODE(kahler_class_coefficients(query(0, 1, 2.0 * kPi)), ErrorCode::BradlowViolation);
}

TEST_CASE("volume and curvature examples") {
  CHECK(moduli_volume(query(0, 1, 4.0 * kPi)).value == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));
  CHECK(moduli_volume(query(1, 1, 4.0 * kPi)).value == doctest::Approx(6.0 * kPi * kPi).epsilon(1e-14));
  CHECK(moduli_total_scalar_curvature(query(0, 1, 4.0 * kPi)).value == doctest::Approx(4.0 * kPi).epsilon(1e-14));
  CHECK(semilocal_volume(query(0, 1, 4.0 * kPi, 1.0, 1.0, 0.0, 2)).value ==
        doctest::Approx(4.0 / 3.0 * std::pow(kPi, 6)).epsilon(1e-14));
  // Large genus and degree stay finite (exact coefficients).
  CHECK(std::isfinite(moduli_volume(query(30, 40, 200.0 * kPi)).value));

  // Boundary: tagged zero for g = 0.
  const ModuliValue b = moduli_volume(query(0, 2, 4.0 * kPi));
  CHECK(b.boundary);
  CHECK(b.value == 0.0);
  CHECK_THROWS_CODE(moduli_volume(query(0, 3, 4.0 * kPi)), ErrorCode::BradlowViolation);
  CHECK_THROWS_CODE(moduli_total_scalar_curvature(query(0, 3, 4.0 * kPi)), ErrorCode::BradlowViolation);
  CHECK_THROWS_CODE(semilocal_volume(query(0, 3, 4.0 * kPi)), ErrorCode::HypothesisViolation);
  CHECK_THROWS_CODE(semilocal_volume(query(3, 3, 40.0 * kPi)), ErrorCode::HypothesisViolation);
  CHECK_THROWS_CODE(moduli_volume(query(0, 1, -1.0)), ErrorCode::DomainError);
  CHECK_THROWS_CODE(moduli_volume(query(0, 1, 4.0 * kPi, 1.0, 1.0, 0.0, 2)), ErrorCode::DomainError);
}

TEST_CASE("effective volume substitution") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    const ModuliQuery q = random_query(rng, 3, 1, 6);
    ModuliQuery eff = q;
    eff.V -= 2.0 * kPi * q.alphaSum / (q.couplings.eSq * q.couplings.tau);
    eff.alphaSum = 0.0;
    CHECK(rel_err(moduli_volume(eff).value, moduli_volume(q).value) <= 1e-12);
    CHECK(rel_err(moduli_total_scalar_curvature(eff).value, moduli_total_scalar_curvature(q).value) <= 1e-12);
  }
}

TEST_CASE("monotone in the weights") {
  double last = semilocal_volume(query(1, 3, 20.0 * kPi, 1.0, 1.0, 0.0, 2)).value;
  for (double a : {0.5, 1.0, 2.0, 4.0}) {
    const double v = semilocal_volume(query(1, 3, 20.0 * kPi, 1.0, 1.0, a, 2)).value;
    CHECK(v < last);
    CHECK(v > 0.0);
    last = v;
  }
}

TEST_CASE("n = 1 semilocal agrees with the vortex volume") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const ModuliQuery g0 = random_query(rng, 0, 1, 8);
    CHECK(rel_err(semilocal_volume(g0).value, moduli_volume(g0).value) <= 1e-12);
    const ModuliQuery gh = random_query(rng, 3, 1, 8, true);
    CHECK(rel_err(semilocal_volume(gh).value, moduli_volume(gh).value) <= 1e-12);
  }
}

TEST_CASE("strong coupling limit") {
  CHECK(map_space_volume_limit(0, 1, 2, 1.0, 4.0 * kPi) ==
        doctest::Approx(std::pow(4.0 * kPi * kPi, 3) / 6.0).epsilon(1e-14));
  CHECK_THROWS_CODE(map_space_volume_limit(2, 3, 1, 1.0, 10.0), ErrorCode::HypothesisViolation);

  struct Case {
    int g, d, n;
    double tau, V, alphaSum;
  };
  for (const Case c : {Case{0, 1, 2, 1.0, 4.0 * kPi, 0.0}, Case{1, 2, 1, 0.7, 10.0, 1.0},
                       Case{2, 5, 3, 1.5, 30.0, 7.0}, Case{1, 4, 2, 2.0, 6.0, 0.5}}) {
    // Richardson in eps = 1/e^2 over e^2 = 10^k, k = 3..8.
    std::vector<double> x, y;
    for (int k = 3; k <= 8; ++k) {
      const double eps = std::pow(10.0, -k);
      x.push_back(eps);
      y.push_back(semilocal_volume(query(c.g, c.d, c.V, 1.0 / eps, c.tau, c.alphaSum, c.n)).value);
    }
    const double limit = map_space_volume_limit(c.g, c.d, c.n, c.tau, c.V);
    CHECK(rel_err(extrapolate_to_zero(x, y), limit) <= 1e-12);
  }
}

TEST_CASE("Z_b example") {
  const ModuliValue b = zb_example_volume(2, 1, 0, 1, 4.0 * kPi, 1.0, 1.0);
  CHECK(b.boundary);
  CHECK(b.value == 0.0);
  // b = 1, no pinned vortices: plain g = 0 volume.
  CHECK(rel_err(zb_example_volume(3, 0, 0, 1, 10.0 * kPi, 1.0, 1.0).value,
                moduli_volume(query(0, 3, 10.0 * kPi)).value) <= 1e-14);

  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> mi(0, 8), li(0, 3), bi(1, 5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  while (checked < 50) {
    const int lN = li(rng), lS = li(rng), m = lN + lS + mi(rng), b = bi(rng);
    const double eSq = 0.3 + u(rng), tau = 0.3 + u(rng);
    const double need = 2.0 * kPi * (b * (m - lN - lS) + lN + lS) / (eSq * tau);
    const double VolY = need * (1.05 + u(rng)) + 0.1;
    const ModuliValue z = zb_example_volume(m, lN, lS, b, VolY, eSq, tau);
    const ModuliValue v = moduli_volume(zb_equivalent_query(m, lN, lS, b, VolY, eSq, tau));
    CHECK(rel_err(z.value, v.value) <= 1e-12);
    ++checked;
  }
  CHECK_THROWS_CODE(zb_example_volume(1, 1, 1, 1, 10.0, 1.0, 1.0), ErrorCode::DomainError);
  CHECK_THROWS_CODE(zb_example_volume(3, 0, 0, 0, 10.0, 1.0, 1.0), ErrorCode::DomainError);
}

}  // TEST_SUITE
