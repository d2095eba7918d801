#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "vortexlab/hyperbolic.hpp"

using namespace vortexlab;

namespace {

const KRSWeights kSym{-0.8, -0.8, -0.8};
const KRSWeights kX{-0.6, -0.7, -0.8};
const KRSWeights kY{-0.8, -0.8, -0.9};

// Area-uniform points of 0.05 < |z| < 0.9 with |z - 1| > 0.05, off the real axis.
std::vector<complex> annulus_points(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<complex> out;
  while (static_cast<int>(out.size()) < n) {
    const double r = std::sqrt(0.05 * 0.05 + u(rng) * (0.81 - 0.0025));
    const complex z = std::polar(r, 2.0 * std::numbers::pi * u(rng));
    if (std::abs(z - 1.0) <= 0.05 || std::abs(z.imag()) < 1e-3) continue;
    out.push_back(z);
  }
  return out;
}

}  // namespace

TEST_SUITE("hyperbolic") {

TEST_CASE("frozen constants") {
  const KRSParams p = krs_params(kSym);
  CHECK(p.lambda == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(p.delta == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(p.gamma == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(rel_err(p.K1, -0.618033988749895) <= 1e-12);
  CHECK(rel_err(p.K2, -0.618033988749895) <= 1e-12);
  CHECK(rel_err(p.K3, 0.104640125087835) <= 1e-12);
  const KRSParams q = krs_params(kX);
  CHECK(rel_err(q.K1, -0.923652121947492) <= 1e-12);
  CHECK(rel_err(q.K2, -0.946574338659753) <= 1e-12);
  CHECK(rel_err(q.K3, 0.00970852737314156) <= 1e-11);
}

TEST_CASE("printed delta violates its own constraints") {
  CHECK_THROWS_CODE(krs_params(kSym, KRSFormula::AsPrinted), ErrorCode::ConstraintViolation);
  CHECK_THROWS_CODE(krs_params({0.1, -0.8, -0.8}), ErrorCode::ConstraintViolation);
  CHECK_THROWS_CODE(krs_params({-0.5, -0.5, -0.5}), ErrorCode::ConstraintViolation);
}

TEST_CASE("curvature is -1") {
  const std::vector<KRSWeights> triples{
      kSym, kX, kY, {-0.9, -0.7, -0.6}, {-0.95, -0.9, -0.5}};
  for (const auto& w : triples) {
    const KRSParams p = krs_params(w);
    auto g = [&](complex z) { return krs_density(p, z); };
    double worst = 0.0;
    for (const complex z : annulus_points(100, 7)) {
      worst = std::max(worst, std::abs(gaussian_curvature(g, z, {0.0, 1.0}) + 1.0));
    }
    CHECK(worst <= 1e-4);
  }
}

TEST_CASE("density shape") {
  const KRSParams p = krs_params(kSym);
  // |z|^{2 b0} near the puncture.
  const double half = fit_local_weight([&](complex z) { return krs_density(p, z); }, 0.0);
  CHECK(std::abs(2.0 * half - 2.0 * kSym.b0) <= 0.02);
  for (const complex z : annulus_points(20, 3)) {
    const double a = krs_density(p, z), b = krs_density(p, std::conj(z));
    CHECK(std::abs(a - b) <= 1e-12 * a);
    // Symmetric weights: z <-> 1 - z.
    CHECK(rel_err(krs_density(p, 1.0 - z), a) <= 1e-10);
  }
  CHECK_THROWS_CODE(krs_density(p, 0.0), ErrorCode::EvaluationAtPuncture);
  CHECK_THROWS_CODE(krs_density(p, 1.0), ErrorCode::EvaluationAtPuncture);
  CHECK_THROWS_CODE(krs_density(p, -0.5), ErrorCode::DomainCut);
  CHECK_THROWS_CODE(krs_density(p, 2.0), ErrorCode::DomainCut);
  CHECK(krs_density(p, 0.5) > 0.0);
  CHECK(cone_weight(kX, {0.0, false}) == -0.6);
  CHECK(cone_weight(kX, {0.0, true}) == -0.8);
  CHECK(cone_weight(kX, {0.3, false}) == 0.0);
}

TEST_CASE("explicit vortex") {
  const PullbackVortex same = explicit_vortex(kSym, kSym);
  for (const complex z : annulus_points(10, 5)) {
    CHECK(same.h(z) == 1.0);
    CHECK(std::abs(same.residual(z)) <= 1e-12);
  }

  const PullbackVortex v = explicit_vortex(kX, kY);
  const KRSParams px = krs_params(kX), py = krs_params(kY);
  double worst = 0.0;
  int used = 0;
  for (const complex z : annulus_points(100, 11)) {
    if (krs_density(px, z) < 1e-6 || krs_density(py, z) < 1e-6) continue;
    worst = std::max(worst, std::abs(v.residual(z)));
    ++used;
  }
  CHECK(used >= 90);
  CHECK(worst < 1e-4);
  CHECK(v.eSq() * v.tau() == 1.0);

  // Weight 0.2 at the origin, and the weights add up.
  const double fit = fit_local_weight([&](complex z) { return v.h(z); }, 0.0);
  CHECK(std::abs(fit - 0.2) <= 0.02);
  double total = 0.0;
  for (const SpherePoint q : {SpherePoint{0.0, false}, SpherePoint{1.0, false}, SpherePoint{0.0, true}}) {
    total += cone_weight(kX, q) - cone_weight(kY, q);
  }
  CHECK(total == doctest::Approx((kX.b0 + kX.b1 + kX.binf) - (kY.b0 + kY.b1 + kY.binf)).epsilon(1e-15));

  // Identity pullback agrees with the explicit form.
  const PullbackVortex id = pullback_vortex(parse_rational_map("z"), kX, kY);
  for (const complex z : annulus_points(10, 13)) {
    CHECK(std::abs(id.h(z) - v.h(z)) <= 1e-12 * v.h(z));
    CHECK(std::abs(id.phi_norm_sq(z) - v.phi_norm_sq(z)) <= 1e-12 * v.phi_norm_sq(z));
  }

  CHECK_THROWS_CODE(explicit_vortex(kY, kX), ErrorCode::WeightOrderViolation);
}

TEST_CASE("pullback along z^2") {
  const PullbackVortex v = pullback_vortex(parse_rational_map("z^2"), kSym, kSym);
  int used = 0;
  double worst = 0.0;
  for (const complex z : annulus_points(200, 17)) {
    bool near = false;
    for (const complex s : v.singular_set()) near = near || std::abs(z - s) < 0.05;
    // f(z) = z^2 must also stay off the cuts of g_X.
    if (near || std::abs(std::arg(z * z)) < 0.05 || std::abs(std::abs(std::arg(z * z)) - std::numbers::pi) < 0.05) {
      continue;
    }
    worst = std::max(worst, std::abs(v.residual(z)));
    if (++used == 50) break;
  }
  CHECK(used == 50);
  CHECK(worst < 1e-3);
  CHECK_THROWS_CODE(pullback_vortex(parse_rational_map("z^2/(z^2)"), kSym, kSym), ErrorCode::ConstantMap);
}

TEST_CASE("local parabolic weights") {
  CHECK(local_parabolic_weight(parse_rational_map("z"), 0.0, {-0.6, -0.8, -0.8}, kSym) ==
        doctest::Approx(0.2).epsilon(1e-14));
  // Unramified point away from the punctures: weight alpha'.
  CHECK(local_parabolic_weight(parse_rational_map("z"), {0.3, 0.2}, kSym, kSym, 0.25) == 0.25);

  // k = 2 at a regular point of Y over a regular point of X: weight 1, and
  // phi vanishes there.
  const RationalMap j = parse_rational_map("(z^2-1)/(2z)");
  const complex i(0.0, 1.0);
  CHECK(local_parabolic_weight(j, i, kSym, kSym) == doctest::Approx(1.0));
  const PullbackVortex vj = pullback_vortex(j, kSym, kSym);
  CHECK(vj.phi_norm_sq(i) == 0.0);
  CHECK(std::abs(fit_local_weight([&](complex z) { return vj.h(z); }, i) - 1.0) <= 0.03);

  // k = 2 over the puncture 0 of X from a regular point of Y: 1 + 2 (-0.8) = -0.6.
  const RationalMap sq = parse_rational_map("(2z-1)^2");
  CHECK(local_parabolic_weight(sq, 0.5, kSym, kSym) == doctest::Approx(-0.6));
  const PullbackVortex vs = pullback_vortex(sq, kSym, kSym);
  CHECK(std::abs(fit_local_weight([&](complex z) { return vs.h(z); }, 0.5) + 0.6) <= 0.03);

  // k = 3 at the shared puncture: 2 + 3 (-0.8) + 0.8 = 0.4. The fit starts at
  // r = 1e-3 so that f(z) = z^3 stays 1e-9 away from the cut.
  const RationalMap cube = parse_rational_map("z^3");
  CHECK(local_parabolic_weight(cube, 0.0, kSym, kSym) == doctest::Approx(0.4));
  const PullbackVortex vc = pullback_vortex(cube, kSym, kSym);
  CHECK(std::abs(fit_local_weight([&](complex z) { return vc.h(z); }, 0.0, 0.7, 1e-3) - 0.4) <= 0.03);
}

}  // TEST_SUITE
