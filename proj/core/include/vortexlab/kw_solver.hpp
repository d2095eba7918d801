#pragma once

#include <optional>
#include <vector>

#include "vortexlab/bundle.hpp"
#include "vortexlab/surface.hpp"

namespace vortexlab {

/// Coefficients of  Delta_0 u = K e^{2u} - K1  sampled per cell.
struct KWCoefficients {
  SurfaceSpec surface;
  ScalarField K;
  ScalarField K1;
  ScalarField rho;
  /// iLambda_0 F_{h0}, constant away from parabolic points.
  double backgroundFlux = 0.0;
};

KWCoefficients assemble(const VortexProblem& problem, const SphericalGrid& grid);

/// n-section variant: K = -e^2 rho sum_k |s_k|^2_{h0}.
KWCoefficients assemble_npair(const VortexProblem& problem,
                              const std::vector<Section>& sections,
                              const SphericalGrid& grid);

struct SolverConfig {
  double newtonTol = 1e-10;
  int maxIter = 50;
  double shrink = 0.5;
  double minStep = 1e-6;
  /// Replaces the default constant initial guess when set.
  std::optional<ScalarField> initialGuess;
};

struct KWSolution {
  ScalarField u;
  /// Area-weighted sup norm of the residual, one entry per iterate.
  std::vector<double> residualHistory;
  /// Smallest LDLT pivot of the Newton matrix at each accepted iterate.
  std::vector<double> minPivot;
  bool converged = false;
  int iterations = 0;
  /// max(newtonTol, round-off floor of the residual at the final iterate).
  double effectiveTol = 0.0;
};

/// R(u) = Delta_0 u - K e^{2u} + K1, pointwise.
ScalarField kw_residual(const KWCoefficients& c, const ScalarField& u);

/// max_c |A_c R_c| / mean(A): the norm used for convergence.
double weighted_sup(const ScalarField& r);

/// Damped Newton with sparse LDLT solves. Throws NoConvergence (the message
/// carries the residual history).
KWSolution solve(const KWCoefficients& coeffs, const SolverConfig& config = {});

/// Profile of a problem that is rotationally symmetric about the axis
/// through z = 0 and infinity, as a function of t = P . (0,0,-1).
struct RadialProfile {
  std::vector<double> t;
  std::vector<double> u;
  double operator()(double tt) const;
  double operator()(const Vec3& p) const;
  ScalarField sample(const SphericalGrid& grid) const;
};

/// 1-D finite-volume solve of the reduced equation; independent of the 2-D
/// discretisation. Throws NotRotationallySymmetric.
RadialProfile radial_oracle(const VortexProblem& problem, int cells = 200000);

}  // namespace vortexlab
