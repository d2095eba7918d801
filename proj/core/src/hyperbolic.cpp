#include "vortexlab/hyperbolic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vortexlab/error.hpp"
#include "vortexlab/specfun.hpp"

namespace vortexlab {

namespace {

constexpr double kPi = std::numbers::pi;

void check_weights(const KRSWeights& w) {
  for (double b : {w.b0, w.b1, w.binf}) {
    if (!(b > -1.0 && b < 0.0)) {
      std::ostringstream os;
      os << "KRS weights must lie in (-1, 0), got " << b;
      throw Error(ErrorCode::ConstraintViolation, os.str());
    }
  }
  if (!(w.b0 + w.b1 + w.binf < -2.0)) {
    throw Error(ErrorCode::ConstraintViolation, "KRS weights must satisfy b0 + b1 + binf < -2");
  }
}

bool near(complex a, complex b) { return std::abs(a - b) <= 1e-10; }

double laplacian_log(const std::function<double(complex)>& f, complex z, double h) {
  auto L = [&](complex w) { return std::log(f(w)); };
  double nearSum = 0.0, farSum = 0.0;
  for (const complex d : {complex(h, 0), complex(-h, 0), complex(0, h), complex(0, -h)}) {
    nearSum += L(z + d);
    farSum += L(z + 2.0 * d);
  }
  return (16.0 * nearSum - farSum - 60.0 * L(z)) / (12.0 * h * h);
}

}  // namespace

KRSParams krs_params(const KRSWeights& w, KRSFormula formula) {
  check_weights(w);
  KRSParams p;
  p.weights = w;
  p.lambda = -(w.b0 + w.b1 - w.binf) / 2.0;
  p.gamma = -w.b0;
  p.delta = formula == KRSFormula::Corrected ? -(w.b0 + w.b1 + w.binf + 2.0) / 2.0
                                             : -(w.b0 + w.b1 + w.binf - 2.0) / 2.0;
  const double l = p.lambda, d = p.delta, g = p.gamma;
  if (!(0.0 < d && d <= l && l + d < g && g < 1.0)) {
    std::ostringstream os;
    os << "KRS constants out of range: lambda=" << l << " delta=" << d << " gamma=" << g
       << " (need 0 < delta <= lambda, lambda + delta < gamma < 1)";
    throw Error(ErrorCode::ConstraintViolation, os.str());
  }
  using specfun::gamma;
  p.K1 = -gamma(g - l) * gamma(g - d) / (gamma(g) * gamma(g - l - d));
  p.K2 = -gamma(l + 1.0 - g) * gamma(d + 1.0 - g) / (gamma(1.0 - g) * gamma(l + d + 1.0 - g));
  const double ratio = std::sin(kPi * l) * std::sin(kPi * d) /
                       (std::sin(kPi * (g - l)) * std::sin(kPi * (g - d)));
  if (!(ratio > 0.0)) throw Error(ErrorCode::ConstraintViolation, "KRS: K3 radicand not positive");
  p.K3 = std::sqrt(ratio) * gamma(l + d + 1.0 - g) * gamma(g) / (gamma(l) * gamma(d));
  for (const complex z : {complex(0.5, 0.0), complex(0.5, 0.5), complex(-1.0, 1.0), complex(2.0, -1.0)}) {
    const double v = krs_density(p, z);
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::ConstraintViolation, "KRS: density not positive at a probe point");
    }
  }
  return p;
}

double krs_density(const KRSParams& p, complex z) {
  if (z == complex(0.0, 0.0) || z == complex(1.0, 0.0)) {
    throw Error(ErrorCode::EvaluationAtPuncture, "krs_density: evaluation at a puncture");
  }
  if (std::abs(z.imag()) <= 1e-12 && (z.real() <= 0.0 || z.real() >= 1.0)) {
    std::ostringstream os;
    os << "krs_density: " << z << " lies on a hypergeometric cut";
    throw Error(ErrorCode::DomainCut, os.str());
  }
  using specfun::Branch;
  const complex phi1 = specfun::hyp2f1({p.lambda, p.delta, p.gamma, z, Branch::Principal});
  const complex phi2 = specfun::hyp2f1(
      {p.lambda, p.delta, p.lambda + p.delta - p.gamma + 1.0, z, Branch::Reflected});
  // phi2(zbar) = conj(phi2(z)) for real parameters.
  const double Q = p.K1 * std::norm(phi1) + p.K2 * std::norm(phi2) +
                   2.0 * (phi1 * std::conj(phi2)).real();
  const double v = 2.0 * std::pow(std::abs(z), p.weights.b0) *
                   std::pow(std::abs(1.0 - z), p.weights.b1) * p.K3 / Q;
  return v * v;
}

double krs_density(const KRSWeights& w, complex z) { return krs_density(krs_params(w), z); }

double cone_weight(const KRSWeights& w, const SpherePoint& p) {
  if (p.infinity) return w.binf;
  if (near(p.w, 0.0)) return w.b0;
  if (near(p.w, 1.0)) return w.b1;
  return 0.0;
}

PullbackVortex::PullbackVortex(RationalMap f, const KRSWeights& wX, const KRSWeights& wY,
                               double tau, BasePrime base)
    : f_(std::move(f)), X_(krs_params(wX)), Y_(krs_params(wY)), tau_(tau), base_(std::move(base)) {
  if (!(tau > 0.0)) throw Error(ErrorCode::InvalidInput, "tau must be positive");
  if (!base_.h) base_.h = [](complex) { return 1.0; };
  if (!base_.phi) base_.phi = [s = std::sqrt(tau)](complex) { return complex(s, 0.0); };
  if (!base_.alpha) base_.alpha = [](const SpherePoint&) { return 0.0; };
}

double PullbackVortex::density_Y(complex z) const { return krs_density(Y_, z); }

double PullbackVortex::frame_metric(complex z) const {
  const SpherePoint w = f_(z);
  if (w.infinity) throw Error(ErrorCode::EvaluationAtPuncture, "pullback: f(z) is infinite");
  return krs_density(X_, w.w) * base_.h(w.w) / krs_density(Y_, z);
}

double PullbackVortex::h(complex z) const {
  return std::norm(f_.derivative(z)) * frame_metric(z);
}

double PullbackVortex::phi_norm_sq(complex z) const {
  const SpherePoint w = f_(z);
  if (w.infinity) throw Error(ErrorCode::EvaluationAtPuncture, "pullback: f(z) is infinite");
  return std::norm(f_.derivative(z)) * std::norm(base_.phi(w.w)) * frame_metric(z);
}

double PullbackVortex::residual(complex z, double step) const {
  const double lap = laplacian_log([this](complex w) { return frame_metric(w); }, z, step);
  const double e2 = eSq();
  const double r = -0.5 * lap / density_Y(z) - e2 * (tau_ - phi_norm_sq(z));
  return r / (e2 * tau_);
}

std::vector<complex> PullbackVortex::singular_set() const {
  std::vector<complex> s{0.0, 1.0};
  for (const auto& r : f_.numerator().roots()) s.push_back(r);
  for (const auto& r : (f_.numerator() - f_.denominator()).roots()) s.push_back(r);
  for (const auto& r : f_.denominator().roots()) s.push_back(r);
  for (const auto& r : f_.ramification_points()) s.push_back(r);
  return s;
}

PullbackVortex explicit_vortex(const KRSWeights& wX, const KRSWeights& wY, double tau) {
  if (wY.b0 > wX.b0 || wY.b1 > wX.b1 || wY.binf > wX.binf) {
    throw Error(ErrorCode::WeightOrderViolation,
                "explicit_vortex: need wY <= wX componentwise");
  }
  RationalMap id(Polynomial::monomial(1), Polynomial::constant(1.0));
  return PullbackVortex(id, wX, wY, tau);
}

PullbackVortex pullback_vortex(const RationalMap& f, const KRSWeights& wX, const KRSWeights& wY,
                               double tau, BasePrime base) {
  if (f.is_constant()) throw Error(ErrorCode::ConstantMap, "pullback_vortex: f is constant");
  return PullbackVortex(f.reduced(), wX, wY, tau, std::move(base));
}

double local_parabolic_weight(const RationalMap& f, complex z0, const KRSWeights& wX,
                              const KRSWeights& wY, double alphaPrime) {
  const int k = f.local_degree(z0);
  const double bX = cone_weight(wX, f(z0));
  const double bY = cone_weight(wY, {z0, false});
  return (k - 1) + k * (bX + alphaPrime) - bY;
}

double fit_local_weight(const std::function<double(complex)>& v, complex z0, double angle,
                        double rMin, double rMax, int samples) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const complex dir = std::polar(1.0, angle);
  for (int i = 0; i < samples; ++i) {
    const double t = samples > 1 ? static_cast<double>(i) / (samples - 1) : 0.0;
    const double r = rMin * std::pow(rMax / rMin, t);
    const double x = std::log(r), y = std::log(v(z0 + r * dir));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = samples;
  return 0.5 * (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace vortexlab
