#pragma once

#include <numbers>

#include "vortexlab/bundle.hpp"

namespace fixtures {

using namespace vortexlab;
inline constexpr double kPi = std::numbers::pi;

// Round sphere of volume V, d-fold zero at z = 0, optional parabolic point at
// infinity (which keeps the problem rotationally symmetric).
inline VortexProblem axial(double V, int d, double alpha = 0.0, double tau = 1.0, double eSq = 1.0) {
  VortexProblem p;
  p.surface = make_surface(V, {});
  if (d > 0) p.zeros.points = {{ChartPoint::finite(0.0), d}};
  if (alpha > 0.0) p.parabolic.points = {{ChartPoint::at_infinity(), alpha}};
  p.couplings = {eSq, tau};
  return p;
}

}  // namespace fixtures
