#include "vortexlab/kw_solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "vortexlab/error.hpp"

namespace vortexlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_solvable(const VortexProblem& problem) {
  validate(problem);
  for (const auto& c : problem.surface.cones) {
    if (c.beta < 0.0) {
      throw Error(ErrorCode::UnsupportedNegativeCone,
                  "assemble: the scalar solver needs conical weights >= 0");
    }
  }
  const BradlowResult b = bradlow_check(problem);
  if (!b.ok) {
    std::ostringstream os;
    os << "assemble: Bradlow condition fails, margin " << b.margin;
    throw Error(ErrorCode::StabilityViolation, os.str());
  }
}

std::string history_text(const std::vector<double>& h) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < h.size(); ++i) os << (i ? ", " : "") << h[i];
  os << "]";
  return os.str();
}

double merit(const ScalarField& r) {
  const SphericalGrid& g = r.grid;
  double total = 0.0;
  for (int a = 0; a < g.nLat(); ++a) {
    double row = 0.0;
    for (int b = 0; b < g.nLon(); ++b) row += r(a, b) * r(a, b);
    total += row * g.cell_area(a);
  }
  return total;
}

}  // namespace

KWCoefficients assemble_npair(const VortexProblem& problem,
                              const std::vector<Section>& sections,
                              const SphericalGrid& grid) {
  check_solvable(problem);
  bool any = false;
  for (const auto& s : sections) any = any || s.scale != 0.0;
  if (!any) throw Error(ErrorCode::AllSectionsZero, "assemble: all sections vanish");

  KWCoefficients c{problem.surface, ScalarField(grid), ScalarField(grid),
                   sample_rho(problem.surface, grid), background_flux(problem)};
  const double e2 = problem.couplings.eSq;
  const double tau = problem.couplings.tau;
  for (int a = 0; a < grid.nLat(); ++a) {
    for (int b = 0; b < grid.nLon(); ++b) {
      const Vec3 p = grid.node(a, b);
      double psi0 = 0.0;
      for (const auto& s : sections) psi0 += section_norm_sq(problem, s, p);
      const double r = c.rho(a, b);
      c.K(a, b) = -e2 * r * psi0;
      c.K1(a, b) = c.backgroundFlux - e2 * tau * r;
    }
  }
  return c;
}

KWCoefficients assemble(const VortexProblem& problem, const SphericalGrid& grid) {
  return assemble_npair(problem, {problem.section()}, grid);
}

ScalarField kw_residual(const KWCoefficients& c, const ScalarField& u) {
  ScalarField r = laplace_apply(c.surface, u.grid, u);
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    r.values[i] += -c.K.values[i] * std::exp(2.0 * u.values[i]) + c.K1.values[i];
  }
  return r;
}

double weighted_sup(const ScalarField& r) {
  const SphericalGrid& g = r.grid;
  const double mean = 4.0 * std::numbers::pi / static_cast<double>(g.size());
  double m = 0.0;
  for (int a = 0; a < g.nLat(); ++a) {
    for (int b = 0; b < g.nLon(); ++b) m = std::max(m, std::abs(r(a, b)) * g.cell_area(a));
  }
  return m / mean;
}

KWSolution solve(const KWCoefficients& coeffs, const SolverConfig& config) {
  const SphericalGrid& g = coeffs.K.grid;
  const int nLat = g.nLat(), nLon = g.nLon();
  const auto n = static_cast<Eigen::Index>(g.size());
  const double r2 = coeffs.surface.radius_sq();
  const double meanArea = 4.0 * std::numbers::pi / static_cast<double>(g.size());

  // W (Delta_0 u) as a symmetric matrix: sum over faces w (u_c - u_nb).
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(5 * g.size());
  std::vector<double> faceSum(g.size(), 0.0);
  for (int a = 0; a < nLat; ++a) {
    const double wp = g.phi_face_weight(a);
    for (int b = 0; b < nLon; ++b) {
      const auto i = static_cast<Eigen::Index>(g.index(a, b));
      double diag = 2.0 * wp;
      trip.emplace_back(i, g.index(a, (b + 1) % nLon), -wp);
      trip.emplace_back(i, g.index(a, (b + nLon - 1) % nLon), -wp);
      if (a > 0) {
        diag += g.theta_face_weight(a);
        trip.emplace_back(i, g.index(a - 1, b), -g.theta_face_weight(a));
      }
      if (a + 1 < nLat) {
        diag += g.theta_face_weight(a + 1);
        trip.emplace_back(i, g.index(a + 1, b), -g.theta_face_weight(a + 1));
      }
      trip.emplace_back(i, i, diag);
      faceSum[i] = diag;
    }
  }
  Eigen::SparseMatrix<double> lap(n, n);
  lap.setFromTriplets(trip.begin(), trip.end());
  lap.makeCompressed();

  std::vector<double> weight(g.size());
  for (int a = 0; a < nLat; ++a) {
    for (int b = 0; b < nLon; ++b) weight[g.index(a, b)] = r2 * g.cell_area(a);
  }

  KWSolution sol{ScalarField(g), {}, {}, false, 0, 0.0};
  if (config.initialGuess) {
    sol.u = *config.initialGuess;
  } else {
    const double iK = integrate(coeffs.K, coeffs.surface.targetVolume);
    const double iK1 = integrate(coeffs.K1, coeffs.surface.targetVolume);
    if (!(iK < 0.0) || !(iK1 < 0.0)) {
      throw Error(ErrorCode::NoConvergence,
                  "solve: coefficient invariants fail (need int K < 0, int K1 < 0)");
    }
    std::fill(sol.u.values.begin(), sol.u.values.end(), 0.5 * std::log(iK1 / iK));
  }

  auto floor_of = [&](const ScalarField& u) {
    double umax = 0.0;
    for (double v : u.values) umax = std::max(umax, std::abs(v));
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double nonlin = std::abs(coeffs.K.values[i]) * std::exp(2.0 * u.values[i]) +
                            std::abs(coeffs.K1.values[i]);
      worst = std::max(worst, faceSum[i] * (umax + 1.0) + weight[i] * nonlin);
    }
    return 8.0 * kEps * worst / (r2 * meanArea);
  };

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  Eigen::SparseMatrix<double> jac = lap;
  ldlt.analyzePattern(jac);
  std::vector<double*> diagPtr(g.size());
  for (Eigen::Index i = 0; i < n; ++i) diagPtr[i] = &jac.coeffRef(i, i);

  ScalarField res = kw_residual(coeffs, sol.u);
  double m = merit(res);
  for (int it = 0;; ++it) {
    const double norm = weighted_sup(res);
    sol.residualHistory.push_back(norm);
    sol.effectiveTol = std::max(config.newtonTol, floor_of(sol.u));
    if (norm <= sol.effectiveTol) {
      sol.converged = true;
      sol.iterations = it;
      return sol;
    }
    if (it >= config.maxIter) break;

    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      *diagPtr[i] = faceSum[i] - 2.0 * weight[i] * coeffs.K.values[i] *
                                     std::exp(2.0 * sol.u.values[i]);
      rhs[i] = -weight[i] * res.values[i];
    }
    ldlt.factorize(jac);
    if (ldlt.info() != Eigen::Success) {
      throw Error(ErrorCode::NoConvergence, "solve: sparse factorisation failed");
    }
    sol.minPivot.push_back(ldlt.vectorD().minCoeff());
    const Eigen::VectorXd delta = ldlt.solve(rhs);

    double step = 1.0;
    bool accepted = false;
    ScalarField trial(g);
    while (step >= config.minStep) {
      for (Eigen::Index i = 0; i < n; ++i) trial.values[i] = sol.u.values[i] + step * delta[i];
      ScalarField tr = kw_residual(coeffs, trial);
      const double mt = merit(tr);
      if (std::isfinite(mt) && mt < (1.0 - 1e-4 * step) * m) {
        sol.u = trial;
        res = std::move(tr);
        m = mt;
        accepted = true;
        break;
      }
      step *= config.shrink;
    }
    if (!accepted) {
      // Stalled at round-off: accept if already within 10x of the floor.
      if (norm <= 10.0 * sol.effectiveTol) {
        sol.converged = true;
        sol.iterations = it;
        return sol;
      }
      throw Error(ErrorCode::NoConvergence,
                  "solve: line search failed; residual history " +
                      history_text(sol.residualHistory));
    }
  }
  throw Error(ErrorCode::NoConvergence,
              "solve: iteration limit reached; residual history " +
                  history_text(sol.residualHistory));
}

double RadialProfile::operator()(double tt) const {
  if (tt <= t.front()) return u.front();
  if (tt >= t.back()) return u.back();
  const auto it = std::upper_bound(t.begin(), t.end(), tt);
  const std::size_t i = static_cast<std::size_t>(it - t.begin());
  const double w = (tt - t[i - 1]) / (t[i] - t[i - 1]);
  return (1.0 - w) * u[i - 1] + w * u[i];
}

double RadialProfile::operator()(const Vec3& p) const { return (*this)(-p[2]); }

ScalarField RadialProfile::sample(const SphericalGrid& grid) const {
  ScalarField out(grid);
  for (int a = 0; a < grid.nLat(); ++a) {
    for (int b = 0; b < grid.nLon(); ++b) out(a, b) = (*this)(grid.node(a, b));
  }
  return out;
}

RadialProfile radial_oracle(const VortexProblem& problem, int cells) {
  validate(problem);
  auto on_axis = [](const ChartPoint& p) { return p.infinity || p.z == complex{0.0, 0.0}; };
  double m0 = 0, mInf = 0, a0 = 0, aInf = 0, b0 = 0, bInf = 0;
  for (const auto& z : problem.zeros.points) {
    if (!on_axis(z.location)) throw Error(ErrorCode::NotRotationallySymmetric, "zero off the axis");
    (z.location.infinity ? mInf : m0) += z.multiplicity;
  }
  for (const auto& p : problem.parabolic.points) {
    if (!on_axis(p.location)) throw Error(ErrorCode::NotRotationallySymmetric, "parabolic point off the axis");
    (p.location.infinity ? aInf : a0) += p.alpha;
  }
  for (const auto& c : problem.surface.cones) {
    if (!on_axis(c.location)) throw Error(ErrorCode::NotRotationallySymmetric, "cone off the axis");
    (c.location.infinity ? bInf : b0) += c.beta;
  }
  const BradlowResult br = bradlow_check(problem);
  if (!br.ok) throw Error(ErrorCode::StabilityViolation, "radial_oracle: Bradlow condition fails");

  const double V = problem.surface.targetVolume;
  const double r2 = V / (4.0 * std::numbers::pi);
  const double e2 = problem.couplings.eSq, tau = problem.couplings.tau;
  const double s2 = problem.sectionScale * problem.sectionScale;
  // Independent normalisation: 1 / B(b0 + 1, bInf + 1).
  const double C = std::tgamma(b0 + bInf + 2.0) / (std::tgamma(b0 + 1.0) * std::tgamma(bInf + 1.0));
  const double B0 = 2.0 * std::numbers::pi * (m0 + mInf + a0 + aInf) / V;

  const int M = cells;
  const double dt = 2.0 / M;
  RadialProfile prof;
  prof.t.resize(M);
  std::vector<double> K(M), K1(M), face(M + 1, 0.0);
  for (int i = 0; i < M; ++i) {
    const double t = -1.0 + (i + 0.5) * dt;
    prof.t[i] = t;
    const double x0 = 0.5 * (1.0 - t), xInf = 0.5 * (1.0 + t);
    const double rho = C * std::pow(x0, b0) * std::pow(xInf, bInf);
    const double psi0 = s2 * std::pow(x0, m0 + a0) * std::pow(xInf, mInf + aInf);
    K[i] = -e2 * rho * psi0;
    K1[i] = B0 - e2 * tau * rho;
  }
  for (int f = 1; f < M; ++f) {
    const double tf = -1.0 + f * dt;
    face[f] = (1.0 - tf * tf) / dt;
  }
  double sK = 0, sK1 = 0;
  for (int i = 0; i < M; ++i) {
    sK += K[i];
    sK1 += K1[i];
  }
  std::vector<double>& u = prof.u;
  u.assign(M, 0.5 * std::log(sK1 / sK));

  auto residual = [&](const std::vector<double>& v, std::vector<double>& g) {
    double nrm = 0.0;
    for (int i = 0; i < M; ++i) {
      double acc = 0.0;
      if (i > 0) acc += face[i] * (v[i] - v[i - 1]);
      if (i + 1 < M) acc += face[i + 1] * (v[i] - v[i + 1]);
      g[i] = acc + r2 * dt * (-K[i] * std::exp(2.0 * v[i]) + K1[i]);
      nrm += g[i] * g[i];
    }
    return nrm;
  };
  std::vector<double> g(M), diag(M), rhs(M), cp(M), delta(M), trial(M), gt(M);
  double nrm = residual(u, g);
  for (int it = 0; it < 100; ++it) {
    for (int i = 0; i < M; ++i) {
      diag[i] = face[i] + face[i + 1] - 2.0 * r2 * dt * K[i] * std::exp(2.0 * u[i]);
      rhs[i] = -g[i];
    }
    // Thomas algorithm; off-diagonals are -face.
    cp[0] = -face[1] / diag[0];
    rhs[0] /= diag[0];
    for (int i = 1; i < M; ++i) {
      const double den = diag[i] + face[i] * cp[i - 1];
      cp[i] = i + 1 < M ? -face[i + 1] / den : 0.0;
      rhs[i] = (rhs[i] + face[i] * rhs[i - 1]) / den;
    }
    delta[M - 1] = rhs[M - 1];
    for (int i = M - 2; i >= 0; --i) delta[i] = rhs[i] - cp[i] * delta[i + 1];

    double step = 1.0, nt = 0.0;
    for (;;) {
      for (int i = 0; i < M; ++i) trial[i] = u[i] + step * delta[i];
      nt = residual(trial, gt);
      if (nt < nrm || step < 1e-8) break;
      step *= 0.5;
    }
    double dmax = 0.0;
    for (int i = 0; i < M; ++i) dmax = std::max(dmax, std::abs(step * delta[i]));
    if (!(nt < nrm)) {
      if (dmax < 1e-12) return prof;
      throw Error(ErrorCode::NoConvergence, "radial_oracle: line search failed");
    }
    u.swap(trial);
    g.swap(gt);
    nrm = nt;
    if (dmax < 1e-13) return prof;
  }
  throw Error(ErrorCode::NoConvergence, "radial_oracle: Newton did not converge");
}

}  // namespace vortexlab
