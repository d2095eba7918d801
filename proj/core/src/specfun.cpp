#include "vortexlab/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/special_functions/digamma.hpp>

#include "vortexlab/error.hpp"

namespace vortexlab::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLadderRadius = 0.6;
constexpr double kNearIntegerTol = 1e-8;
constexpr double kPerturbStep = 1e-3;

// Lanczos coefficients, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && std::floor(x) == x;
}

// sin(pi x) with exact argument reduction.
double sinpi(double x) {
  double r = std::fmod(x, 2.0);
  if (r > 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  if (r > 0.5) return std::sin(kPi * (1.0 - r));
  if (r < -0.5) return -std::sin(kPi * (1.0 + r));
  return std::sin(kPi * r);
}

double lanczos_gamma(double x) {
  x -= 1.0;
  double acc = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    acc += kLanczos[i] / (x + static_cast<double>(i));
  }
  const double t = x + kLanczosG + 0.5;
  // Split the power to delay overflow for large x.
  const double half = std::pow(t, 0.5 * (x + 0.5));
  return std::sqrt(2.0 * kPi) * half * std::exp(-t) * half * acc;
}

double distance_to_integer(double x) { return std::abs(x - std::round(x)); }

complex maclaurin(double a, double b, double c, complex x) {
  complex term{1.0, 0.0};
  complex sum{1.0, 0.0};
  int small = 0;
  for (int n = 0; n < 20000; ++n) {
    const double dn = static_cast<double>(n);
    term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * x;
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) {
      if (++small >= 2) return sum;
    } else {
      small = 0;
    }
  }
  std::ostringstream os;
  os << "hyp2f1: Maclaurin series did not converge at x=" << x;
  throw Error(ErrorCode::NoConvergence, os.str());
}

// Connection formula around x = 1 for non-integer c - a - b.
complex one_minus_z_regular(double a, double b, double c, complex x) {
  const complex y = 1.0 - x;
  const double s = c - a - b;
  const double g_c = gamma(c);
  const complex first = g_c * gamma(s) * rgamma(c - a) * rgamma(c - b) *
                        maclaurin(a, b, 1.0 - s, y);
  const double coef2 = g_c * gamma(-s) * rgamma(a) * rgamma(b);
  if (coef2 == 0.0) return first;
  if (y == complex{0.0, 0.0}) return first;
  return first + coef2 * std::pow(y, s) * maclaurin(c - a, c - b, 1.0 + s, y);
}

// Logarithmic connection formula for c = a + b + m, m a non-negative
// integer; a series in y = 1 - x with digamma coefficients.
complex one_minus_z_log(double a, double b, int m, complex x) {
  const complex y = 1.0 - x;
  const double c = a + b + m;
  complex finite{0.0, 0.0};
  if (m > 0) {
    complex term{1.0, 0.0};
    for (int n = 0; n < m; ++n) {
      finite += term;
      term *= (a + n) * (b + n) / ((n + 1.0) * (1.0 - m + n)) * y;
    }
    finite *= gamma(m) * gamma(c) * rgamma(a + m) * rgamma(b + m);
  }
  const double coef = gamma(c) * rgamma(a) * rgamma(b);
  if (coef == 0.0) return finite;
  if (y == complex{0.0, 0.0}) return finite;
  const complex logy = std::log(y);
  // psi(n+1), psi(n+m+1), psi(a+n+m), psi(b+n+m) advanced by recurrence.
  double p1 = boost::math::digamma(1.0);
  double p2 = boost::math::digamma(m + 1.0);
  double p3 = boost::math::digamma(a + m);
  double p4 = boost::math::digamma(b + m);
  double t = 1.0;
  for (int k = 2; k <= m; ++k) t /= k;  // 1 / m!
  complex pw{1.0, 0.0};
  complex sum{0.0, 0.0};
  int small = 0;
  for (int n = 0; n < 2000; ++n) {
    const complex term = t * pw * (logy - p1 - p2 + p3 + p4);
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) {
      if (++small >= 2) {
        const complex sign = (m % 2 == 0) ? 1.0 : -1.0;
        return finite - sign * std::pow(y, m) * coef * sum;
      }
    } else {
      small = 0;
    }
    const double dn = n;
    t *= (a + m + dn) * (b + m + dn) / ((dn + 1.0) * (dn + m + 1.0));
    p1 += 1.0 / (dn + 1.0);
    p2 += 1.0 / (dn + m + 1.0);
    p3 += 1.0 / (a + m + dn);
    p4 += 1.0 / (b + m + dn);
    pw *= y;
  }
  throw Error(ErrorCode::NoConvergence, "hyp2f1: logarithmic series did not converge");
}

complex one_minus_z(double a, double b, double c, complex x) {
  const double s = c - a - b;
  if (s == std::round(s)) {
    const int m = static_cast<int>(std::round(s));
    if (m >= 0) return one_minus_z_log(a, b, m, x);
    // Euler: F(a,b;c;x) = (1-x)^s F(c-a,c-b;c;x), the latter with c-a-b = -s.
    return std::pow(1.0 - x, s) * one_minus_z_log(c - a, c - b, -m, x);
  }
  if (distance_to_integer(s) >= kNearIntegerTol) {
    return one_minus_z_regular(a, b, c, x);
  }
  // Logarithmic case: symmetric shifts of a, Richardson in the shift size.
  auto symmetric = [&](double h) {
    return 0.5 * (one_minus_z_regular(a + h, b, c, x) +
                  one_minus_z_regular(a - h, b, c, x));
  };
  const complex s1 = symmetric(kPerturbStep);
  const complex s2 = symmetric(2.0 * kPerturbStep);
  return (4.0 * s1 - s2) / 3.0;
}

// Taylor steps of the hypergeometric ODE from z0 (value f, derivative df)
// to the target along a straight segment.
void advance(double a, double b, double c, complex& z0, complex& f, complex& df, complex x) {
  for (int step = 0; step < 10000; ++step) {
    const complex remaining = x - z0;
    if (std::abs(remaining) == 0.0) return;
    const double radius = std::min(std::abs(z0), std::abs(1.0 - z0));
    if (radius < 1e-3) {
      throw Error(ErrorCode::NoConvergence,
                  "hyp2f1: continuation path passes too close to a singular point");
    }
    complex dz = remaining;
    if (std::abs(dz) > 0.5 * radius) dz *= 0.5 * radius / std::abs(dz);

    const complex p = z0 * (1.0 - z0);
    const complex q = 1.0 - 2.0 * z0;
    const complex r = c - (a + b + 1.0) * z0;
    complex cn = f;
    complex cn1 = df;
    complex pw{1.0, 0.0};
    complex value = cn;
    complex deriv = cn1;
    int small = 0;
    for (int n = 0; n < 600; ++n) {
      const double dn = static_cast<double>(n);
      const complex cn2 =
          ((dn + a) * (dn + b) * cn - (q * dn + r) * (dn + 1.0) * cn1) /
          (p * (dn + 2.0) * (dn + 1.0));
      // pw holds dz^n here.
      const complex t1 = cn1 * pw * dz;  // c_{n+1} dz^{n+1}
      value += t1;
      deriv += (dn + 2.0) * cn2 * pw * dz;  // (n+2) c_{n+2} dz^{n+1}
      pw *= dz;
      cn = cn1;
      cn1 = cn2;
      if (std::abs(t1) <= 1e-18 * std::abs(value)) {
        if (++small >= 3) break;
      } else {
        small = 0;
      }
    }
    f = value;
    df = deriv;
    z0 = dz == remaining ? x : z0 + dz;
  }
  throw Error(ErrorCode::NoConvergence, "hyp2f1: continuation exceeded step budget");
}

// Analytic continuation from the Maclaurin disc to x. The ray from
// 0.5 x/|x| is used unless it grazes x = 1; then the path keeps to the
// half-plane of x, staying 0.5 away from 1.
complex continuation(double a, double b, double c, complex x) {
  const double mod = std::abs(x);
  if (mod <= 0.5) return maclaurin(a, b, c, x);
  std::vector<complex> legs;
  complex z0 = 0.5 * x / mod;
  if (x.real() > 1.0 && std::abs(x.imag()) < 0.25 * mod) {
    const double s = x.imag() < 0.0 ? -1.0 : 1.0;
    z0 = complex(0.0, 0.5 * s);
    const double h = std::max(std::abs(x.imag()), 0.5);
    legs = {complex(0.5, h * s), complex(x.real(), h * s)};
  }
  legs.push_back(x);
  complex f = maclaurin(a, b, c, z0);
  complex df = (a * b / c) * maclaurin(a + 1.0, b + 1.0, c + 1.0, z0);
  for (const complex target : legs) advance(a, b, c, z0, f, df, target);
  return f;
}

complex pfaff(double a, double b, double c, complex x, bool use_series) {
  const complex w = x / (x - 1.0);
  const complex pre = std::pow(1.0 - x, -a);
  return pre * (use_series ? maclaurin(a, c - b, c, w) : one_minus_z(a, c - b, c, w));
}

void check_parameters(double c) {
  if (is_nonpositive_integer(c)) {
    throw Error(ErrorCode::DomainError, "hyp2f1: c must not be zero or a negative integer");
  }
}

// x is the hypergeometric argument; reject points of the cut (1, inf).
void check_cut(double a, double b, double c, complex x) {
  const bool polynomial = is_nonpositive_integer(a) || is_nonpositive_integer(b);
  if (polynomial) return;
  const double re = x.real();
  const double im = std::abs(x.imag());
  if (re > 1.0 && im <= 1e-12) {
    std::ostringstream os;
    os << "hyp2f1: argument " << x << " lies on the branch cut [1, inf)";
    throw Error(ErrorCode::DomainCut, os.str());
  }
  if (std::abs(x - 1.0) <= 1e-12 && c - a - b <= 0.0) {
    throw Error(ErrorCode::DomainCut, "hyp2f1: divergent at x = 1 for c - a - b <= 0");
  }
}

}  // namespace

double gamma(double x) {
  if (is_nonpositive_integer(x)) {
    std::ostringstream os;
    os << "gamma: pole at x=" << x;
    throw Error(ErrorCode::PoleArgument, os.str());
  }
  if (x < 0.5) return kPi / (sinpi(x) * lanczos_gamma(1.0 - x));
  return lanczos_gamma(x);
}

double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  return 1.0 / gamma(x);
}

complex hyp2f1_via(double a, double b, double c, complex x, Path path) {
  check_parameters(c);
  check_cut(a, b, c, x);
  if (path == Path::Auto) {
    if (std::abs(x) <= kLadderRadius) {
      path = Path::Maclaurin;
    } else if (std::abs(1.0 - x) <= kLadderRadius) {
      path = Path::OneMinusZ;
    } else {
      const complex w = x / (x - 1.0);
      if (std::abs(w) <= kLadderRadius) {
        path = Path::PfaffMaclaurin;
      } else if (std::abs(1.0 - w) <= kLadderRadius) {
        path = Path::PfaffOneMinusZ;
      } else {
        path = Path::Continuation;
      }
    }
  }
  switch (path) {
    case Path::Maclaurin: return maclaurin(a, b, c, x);
    case Path::OneMinusZ: return one_minus_z(a, b, c, x);
    case Path::PfaffMaclaurin: return pfaff(a, b, c, x, true);
    case Path::PfaffOneMinusZ: return pfaff(a, b, c, x, false);
    case Path::Continuation: return continuation(a, b, c, x);
    case Path::Auto: break;
  }
  throw Error(ErrorCode::NoConvergence, "hyp2f1: no evaluation path");
}

complex hyp2f1(const Hyp2F1Query& q) {
  const complex x = q.branch == Branch::Principal ? q.z : 1.0 - q.z;
  return hyp2f1_via(q.a, q.b, q.c, x, Path::Auto);
}

complex hyp2f1_derivative(const Hyp2F1Query& q) {
  check_parameters(q.c);
  const double scale = q.a * q.b / q.c;
  if (scale == 0.0) return {0.0, 0.0};
  Hyp2F1Query shifted = q;
  shifted.a += 1.0;
  shifted.b += 1.0;
  shifted.c += 1.0;
  const complex d = scale * hyp2f1(shifted);
  return q.branch == Branch::Principal ? d : -d;
}

}  // namespace vortexlab::specfun
