#pragma once

#include <optional>

#include "vortexlab/bundle.hpp"

namespace vortexlab {

struct ModuliQuery {
  int g = 0;
  int d = 1;
  int n = 1;
  double V = 0.0;
  CouplingParams couplings;
  double alphaSum = 0.0;
};

/// A volume-type value. On the Bradlow boundary the formulas vanish
/// continuously; the value is then 0 and `boundary` is set.
struct ModuliValue {
  double value = 0.0;
  bool boundary = false;
};

/// Regularity exponent of the solution at a singular point. nullopt means
/// infinitely smooth. A float counts as an integer within 1e-12. Throws
/// DomainError unless alpha >= 0 and beta > -1.
std::optional<int> regularity_k(double alpha, double beta);

/// V - 2 pi (d + alphaSum) / (tau e^2): positive inside the Bradlow region.
double bradlow_margin(const ModuliQuery& q);

struct KahlerClass {
  double etaCoeff = 0.0;
  double thetaCoeff = 0.0;
};
/// Needs the strict interior; throws BradlowViolation otherwise.
KahlerClass kahler_class_coefficients(const ModuliQuery& q);

/// n = 1. Throws BradlowViolation outside the closed Bradlow region.
ModuliValue moduli_volume(const ModuliQuery& q);
/// n = 1, d >= 1. Summands with d - 1 - i < 0 are dropped.
ModuliValue moduli_total_scalar_curvature(const ModuliQuery& q);

/// Any n >= 1. Needs tau e^2 V / 2 pi - alphaSum >= d > 2g - 2; throws
/// HypothesisViolation otherwise.
ModuliValue semilocal_volume(const ModuliQuery& q);

/// e^2 -> infinity limit of semilocal_volume; needs d >= 2g.
double map_space_volume_limit(int g, int d, int n, double tau, double V);

/// Z_b-invariant m-vortices on a sphere of volume VolY with lN, lS vortices
/// pinned at the poles. Throws DomainError unless m >= lN + lS and b >= 1.
ModuliValue zb_example_volume(int m, int lN, int lS, int b, double VolY, double eSq, double tau);

/// The same quantity through moduli_volume: g = 0, d = m - lN - lS on a sphere
/// of effective volume (VolY - 2 pi (lN + lS) / (e^2 tau)) / b.
ModuliQuery zb_equivalent_query(int m, int lN, int lS, int b, double VolY, double eSq,
                                double tau);

}  // namespace vortexlab
