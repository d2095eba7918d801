#pragma once

#include <vector>

#include "vortexlab/surface.hpp"

namespace vortexlab {

struct DivisorPoint {
  ChartPoint location;
  int multiplicity = 1;
};

struct EffectiveDivisor {
  std::vector<DivisorPoint> points;
  int degree() const;
};

struct ParabolicPoint {
  ChartPoint location;
  double alpha = 0.0;
};

struct ParabolicDivisor {
  std::vector<ParabolicPoint> points;
  double weight_sum() const;
};

struct CouplingParams {
  double eSq = 1.0;
  double tau = 1.0;
};

/// A holomorphic section of O(d): |scale| times the monic polynomial with the
/// given finite zeros; missing degree is a zero at infinity. scale = 0 is the
/// zero section.
struct Section {
  EffectiveDivisor zeros;
  double scale = 1.0;
};

struct VortexProblem {
  SurfaceSpec surface;
  EffectiveDivisor zeros;
  ParabolicDivisor parabolic;
  CouplingParams couplings;
  /// Overall scale of the section; a gauge choice absorbed into u.
  double sectionScale = 1.0;

  int degree() const { return zeros.degree(); }
  Section section() const { return {zeros, sectionScale}; }
};

/// Checks the type invariants (multiplicities, weights, couplings, distinct
/// points). Throws InvalidInput.
void validate(const VortexProblem& problem);

/// Grid-dependent placement checks for every divisor point (zeros,
/// parabolic and conical points); coincident points are allowed.
void validate_on_grid(const VortexProblem& problem, const SphericalGrid& grid);

double par_degree(int d, const ParabolicDivisor& parabolic);

struct BradlowResult {
  bool ok = false;
  double margin = 0.0;
};

/// V > (2 pi / (tau e^2)) pardeg, strict.
BradlowResult bradlow_check(const VortexProblem& problem);

/// h0 = (1+|z|^2)^{-d} prod sigma(z, p_i)^{alpha_i} in the chart of p
/// (south chart w = 1/z at infinity).
double background_hermitian(const VortexProblem& problem, const ChartPoint& p);

/// |s|^2_{h0}, chart invariant.
double section_norm_sq(const VortexProblem& problem, const Section& s, const Vec3& p);
double section_norm_sq(const VortexProblem& problem, const ChartPoint& p);

/// Gradient of log |s|^2_{h0} on the unit sphere (a tangent vector at p).
Vec3 grad_log_section_norm(const VortexProblem& problem, const Section& s, const Vec3& p);

/// iLambda_0 F_{h0} away from the parabolic points: the constant
/// 2 pi pardeg / V.
double background_flux(const VortexProblem& problem);

}  // namespace vortexlab
