#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "vortexlab/rational_map.hpp"
#include "vortexlab/surface.hpp"

namespace vortexlab {

/// Cone weights of a hyperbolic metric on the sphere punctured at 0, 1, inf.
struct KRSWeights {
  double b0 = -0.8;
  double b1 = -0.8;
  double binf = -0.8;
};

/// Which delta formula to use; AsPrinted exists to keep the typo testable.
enum class KRSFormula { Corrected, AsPrinted };

struct KRSParams {
  KRSWeights weights;
  double lambda = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
  double K1 = 0.0;
  double K2 = 0.0;
  double K3 = 0.0;
};

/// Throws ConstraintViolation when the weights or the derived constants leave
/// their ranges, or when the density is not positive at probe points.
KRSParams krs_params(const KRSWeights& w, KRSFormula formula = KRSFormula::Corrected);

/// Conformal factor g of the curvature -1 metric g dz dzbar. This is the
/// square of the quotient 2|z|^b0 |1-z|^b1 K3 / Q; the quotient alone is the
/// length element. Throws EvaluationAtPuncture at 0, 1 and DomainCut on the
/// real rays (-inf, 0] and [1, inf).
double krs_density(const KRSParams& p, complex z);
double krs_density(const KRSWeights& w, complex z);

/// Weight of the metric at a point of the sphere (0 away from 0, 1, inf).
double cone_weight(const KRSWeights& w, const SpherePoint& p);

/// Optional base data (h', phi') on L' over X; defaults to the trivial pair
/// h' = 1, phi' = sqrt(tau).
struct BasePrime {
  std::function<double(complex)> h;
  std::function<complex(complex)> phi;
  /// Parabolic weight of h' at a point of X.
  std::function<double(const SpherePoint&)> alpha;
};

/// Pulled-back vortex on Y. In the holomorphic frame e = dz^* (x) f^*d/dw (x) e'
/// the metric is H = g_X(f) h'(f) / g_Y and phi = f' phi'(f); the reported
/// "h" is |f'|^2 H (= |phi|^2_h / |phi'(f)|^2), whose vanishing order at z0 is
/// the local parabolic weight.
class PullbackVortex {
 public:
  PullbackVortex(RationalMap f, const KRSWeights& wX, const KRSWeights& wY, double tau,
                 BasePrime base = {});

  const RationalMap& map() const { return f_; }
  double tau() const { return tau_; }
  /// e^2 fixed by e^2 tau = 1.
  double eSq() const { return 1.0 / tau_; }

  double frame_metric(complex z) const;
  double h(complex z) const;
  double phi_norm_sq(complex z) const;
  double density_Y(complex z) const;

  /// (-(1/2) Delta log H / g_Y - e^2 (tau - |phi|^2_h)) / (e^2 tau), by
  /// 4th-order differences of log H with the given step.
  double residual(complex z, double step = 1e-4) const;

  /// Points to stay away from: f^{-1}{0,1,inf}, ramification points, 0, 1.
  std::vector<complex> singular_set() const;

 private:
  RationalMap f_;
  KRSParams X_;
  KRSParams Y_;
  double tau_;
  BasePrime base_;
};

/// h = g_X / g_Y with phi = sqrt(tau): the identity-map pullback. Throws
/// WeightOrderViolation unless wY <= wX componentwise.
PullbackVortex explicit_vortex(const KRSWeights& wX, const KRSWeights& wY, double tau = 1.0);

/// Throws ConstantMap.
PullbackVortex pullback_vortex(const RationalMap& f, const KRSWeights& wX,
                               const KRSWeights& wY, double tau = 1.0, BasePrime base = {});

/// (k-1) + k (beta_X(f(z0)) + alpha') - beta_Y(z0), k the local degree.
double local_parabolic_weight(const RationalMap& f, complex z0, const KRSWeights& wX,
                              const KRSWeights& wY, double alphaPrime = 0.0);

/// Half the least-squares slope of log v(z0 + r e^{i angle}) against log r,
/// r log-spaced on [rMin, rMax].
double fit_local_weight(const std::function<double(complex)>& v, complex z0, double angle = 0.7,
                        double rMin = 1e-4, double rMax = 1e-2, int samples = 9);

}  // namespace vortexlab
