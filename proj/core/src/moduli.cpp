#include "vortexlab/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "vortexlab/error.hpp"

namespace vortexlab {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

constexpr double kPi = std::numbers::pi;
constexpr double kIntTol = 1e-12;
constexpr double kBoundaryTol = 1e-12;

cpp_int factorial(int n) {
  cpp_int r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

// g! n^(g-i) / (i! (l-i)! (g-i)!), exact.
double coefficient(int g, int i, int l, int n = 1, int extra = 1) {
  cpp_rational c(factorial(g) * boost::multiprecision::pow(cpp_int(n), static_cast<unsigned>(g - i)) *
                     extra,
                 factorial(i) * factorial(l - i) * factorial(g - i));
  return static_cast<double>(c);
}

void check_query(const ModuliQuery& q) {
  const auto& c = q.couplings;
  if (q.g < 0 || q.d < 0 || q.n < 1 || !(q.V > 0.0) || !(c.eSq > 0.0) || !(c.tau > 0.0) ||
      !(q.alphaSum >= 0.0)) {
    throw Error(ErrorCode::DomainError,
                "moduli query needs g, d >= 0, n >= 1, V, eSq, tau > 0 and alphaSum >= 0");
  }
}

// Classifies the Bradlow margin: true on the boundary, throws outside.
bool bradlow_gate(const ModuliQuery& q, ErrorCode code) {
  const double m = bradlow_margin(q);
  if (std::abs(m) <= kBoundaryTol * std::max(1.0, q.V)) return true;
  if (m < 0.0) {
    std::ostringstream os;
    os << "Bradlow bound violated: V - 2 pi (d + alphaSum)/(tau e^2) = " << m;
    throw Error(code, os.str());
  }
  return false;
}

// tau (V - 2 pi alphaSum / (e^2 tau)) - (2 pi / e^2) d
double bracket(const ModuliQuery& q) {
  const double e2 = q.couplings.eSq, tau = q.couplings.tau;
  return tau * (q.V - 2.0 * kPi * q.alphaSum / (e2 * tau)) - 2.0 * kPi / e2 * q.d;
}

bool is_integer(double x) { return std::abs(x - std::round(x)) <= kIntTol; }

}  // namespace

std::optional<int> regularity_k(double alpha, double beta) {
  if (!(alpha >= 0.0) || !(beta > -1.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw Error(ErrorCode::DomainError, "regularity_k needs alpha >= 0 and beta > -1");
  }
  if (beta < 0.0 && !is_integer(beta)) return 0;
  auto nu = [](double x) -> std::optional<int> {
    if (is_integer(x)) return std::nullopt;
    return static_cast<int>(std::floor(x));
  };
  const auto a = nu(beta), b = nu(alpha + beta);
  if (!a && !b) return std::nullopt;
  if (!a) return 2 + *b;
  if (!b) return 2 + *a;
  return 2 + std::min(*a, *b);
}

double bradlow_margin(const ModuliQuery& q) {
  return q.V - 2.0 * kPi * (q.d + q.alphaSum) / (q.couplings.tau * q.couplings.eSq);
}

KahlerClass kahler_class_coefficients(const ModuliQuery& q) {
  check_query(q);
  if (bradlow_gate(q, ErrorCode::BradlowViolation)) {
    throw Error(ErrorCode::BradlowViolation, "Kahler class needs the strict Bradlow interior");
  }
  const double e2 = q.couplings.eSq, tau = q.couplings.tau;
  return {kPi * (tau * q.V - 2.0 * kPi / e2 * (q.d + q.alphaSum)), 2.0 * kPi * kPi / e2};
}

ModuliValue moduli_volume(const ModuliQuery& q) {
  check_query(q);
  if (q.n != 1) throw Error(ErrorCode::DomainError, "moduli_volume needs n = 1");
  const bool boundary = bradlow_gate(q, ErrorCode::BradlowViolation);
  if (boundary && q.d >= 1 && q.g == 0) return {0.0, true};
  const double X = boundary ? 0.0 : bracket(q);
  double sum = 0.0;
  for (int i = 0; i <= std::min(q.g, q.d); ++i) {
    sum += coefficient(q.g, i, q.d) * std::pow(4.0 * kPi, i) * std::pow(X, q.d - i);
  }
  return {std::pow(kPi, q.d) * sum, boundary};
}

ModuliValue moduli_total_scalar_curvature(const ModuliQuery& q) {
  check_query(q);
  if (q.n != 1) throw Error(ErrorCode::DomainError, "total scalar curvature needs n = 1");
  if (q.d < 1) throw Error(ErrorCode::DomainError, "total scalar curvature needs d >= 1");
  const bool boundary = bradlow_gate(q, ErrorCode::BradlowViolation);
  const double Y = boundary ? 0.0 : 0.5 * bracket(q);
  double sum = 0.0;
  for (int i = 0; i <= std::min(q.g, q.d); ++i) {
    if (q.d - 1 - i < 0) continue;
    sum += coefficient(q.g, i, q.d - 1, 1, q.d + 1 - 2 * q.g + i) * std::pow(2.0 * kPi, i) *
           std::pow(Y, q.d - 1 - i);
  }
  return {std::pow(2.0 * kPi, q.d) * sum, boundary};
}

ModuliValue semilocal_volume(const ModuliQuery& q) {
  check_query(q);
  if (!(q.d > 2 * q.g - 2)) {
    throw Error(ErrorCode::HypothesisViolation, "semilocal volume needs d > 2g - 2");
  }
  const bool boundary = bradlow_gate(q, ErrorCode::HypothesisViolation);
  const int l = q.g + q.n * (q.d + 1 - q.g) - 1;
  if (boundary && l >= 1 && q.g == 0) return {0.0, true};
  const double X = boundary ? 0.0 : bracket(q);
  const double e2 = q.couplings.eSq;
  double sum = 0.0;
  for (int i = 0; i <= std::min(q.g, l); ++i) {
    sum += coefficient(q.g, i, l, q.n) * std::pow(2.0 * kPi / e2, i) * std::pow(X, l - i);
  }
  return {std::pow(kPi, l) * sum, boundary};
}

double map_space_volume_limit(int g, int d, int n, double tau, double V) {
  if (g < 0 || n < 1 || !(tau > 0.0) || !(V > 0.0)) {
    throw Error(ErrorCode::DomainError, "map_space_volume_limit needs g >= 0, n >= 1, tau, V > 0");
  }
  if (d < 2 * g) throw Error(ErrorCode::HypothesisViolation, "map space limit needs d >= 2g");
  const int l = n * (d + 1 - g) + g - 1;
  const cpp_rational c(boost::multiprecision::pow(cpp_int(n), static_cast<unsigned>(g)), factorial(l));
  return static_cast<double>(c) * std::pow(kPi * tau * V, l);
}

ModuliQuery zb_equivalent_query(int m, int lN, int lS, int b, double VolY, double eSq,
                                double tau) {
  if (m < lN + lS || lN < 0 || lS < 0 || b < 1) {
    throw Error(ErrorCode::DomainError, "Z_b example needs m >= lN + lS >= 0 and b >= 1");
  }
  ModuliQuery q;
  q.g = 0;
  q.d = m - lN - lS;
  q.n = 1;
  q.V = (VolY - 2.0 * kPi * (lN + lS) / (eSq * tau)) / b;
  q.couplings = {eSq, tau};
  q.alphaSum = 0.0;
  return q;
}

ModuliValue zb_example_volume(int m, int lN, int lS, int b, double VolY, double eSq, double tau) {
  const ModuliQuery q = zb_equivalent_query(m, lN, lS, b, VolY, eSq, tau);
  if (!(VolY > 0.0) || !(eSq > 0.0) || !(tau > 0.0)) {
    throw Error(ErrorCode::DomainError, "Z_b example needs VolY, eSq, tau > 0");
  }
  const int d = q.d;
  const double X = tau / b * (VolY - 2.0 * kPi / (eSq * tau) * (lN + lS)) - 2.0 * kPi / eSq * d;
  const double scale = tau * VolY / b;
  if (std::abs(X) <= kBoundaryTol * std::max(1.0, scale)) {
    return {d == 0 ? 1.0 : 0.0, true};
  }
  if (X < 0.0) throw Error(ErrorCode::BradlowViolation, "Z_b example outside the Bradlow region");
  const cpp_rational inv(1, factorial(d));
  return {static_cast<double>(inv) * std::pow(kPi, d) * std::pow(X, d), false};
}

}  // namespace vortexlab
