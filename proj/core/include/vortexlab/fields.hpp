#pragma once

#include <iosfwd>
#include <string>

#include "vortexlab/bundle.hpp"
#include "vortexlab/kw_solver.hpp"

namespace vortexlab {

/// Post-processed solution. All densities are per unit omega_0-area.
///   flux   = iLambda_0 F_h = B0 + Delta_0 u
///   energy = flux^2 / (2 e^2 rho) + (psi/2) |grad log psi|^2
///            + (e^2/2) rho (psi - tau)^2
/// with psi = |phi|^2_h = |s|^2_{h0} e^{2u}. The middle term is |d_A phi|^2
/// for a holomorphic section: d psi = <d_A phi, phi> + <phi, d_A phi> and
/// dbar_A phi = 0 give |d_A phi|^2 = |grad psi|^2 / (2 psi). The gradient of
/// log psi is split into the analytic gradient of log |s|^2_{h0} plus 2 grad u,
/// so the log singularities at zeros and parabolic points never meet a stencil.
struct VortexFields {
  SphericalGrid grid;
  ScalarField u;
  ScalarField h;
  ScalarField psi;
  ScalarField flux;
  ScalarField energyDensity;
  ScalarField rho;
  double volume = 0.0;
  CouplingParams couplings;
};

VortexFields reconstruct(const VortexProblem& problem, const KWSolution& solution);

/// (i / 2 pi) int F_h.
double chern_number(const VortexFields& f);

double total_energy(const VortexFields& f);

enum class ResidualStencil {
  /// The discrete operator of the solver (consistency check).
  Solver,
  /// 4th-order differences in (theta, phi), outside 20 degree polar caps.
  HighOrder,
};

struct ResidualNorms {
  double supNorm = 0.0;
  double l2Norm = 0.0;
  std::size_t samples = 0;
};

/// Pointwise flux - e^2 rho (tau - psi) over cells more than 3 cells away from
/// every zero, parabolic and conical point.
ResidualNorms vortex_residual(const VortexFields& f, const VortexProblem& problem,
                              ResidualStencil stencil = ResidualStencil::Solver);

/// Relative gap between the energy and the integrated Bogomolny rewriting
/// (squares plus tau times flux; the exact term is dropped).
double bogomolny_identity_check(const VortexFields& f, const VortexProblem& problem);

/// 8-bit binary PGM (P5), latitude-major, linear min-max scaling.
struct PgmScaling {
  double min = 0.0;
  double max = 0.0;
};
PgmScaling write_pgm(const std::string& path, const ScalarField& f);
/// Sidecar JSON with the scaling of a PGM.
void write_pgm_sidecar(const std::string& path, const ScalarField& f, const PgmScaling& s);

}  // namespace vortexlab
