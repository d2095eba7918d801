#include "vortexlab/bundle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vortexlab/error.hpp"

namespace vortexlab {

namespace {

// grad log sigma(P, Q) on the unit sphere.
Vec3 grad_log_chordal(const Vec3& p, const Vec3& q) {
  const double pq = p[0] * q[0] + p[1] * q[1] + p[2] * q[2];
  const double den = 2.0 * chordal(p, q);
  return {-(q[0] - pq * p[0]) / den, -(q[1] - pq * p[1]) / den,
          -(q[2] - pq * p[2]) / den};
}

void axpy(Vec3& y, double a, const Vec3& x) {
  y[0] += a * x[0];
  y[1] += a * x[1];
  y[2] += a * x[2];
}

int finite_multiplicity(const EffectiveDivisor& d) {
  int m = 0;
  for (const auto& p : d.points) {
    if (!p.location.infinity) m += p.multiplicity;
  }
  return m;
}

}  // namespace

int EffectiveDivisor::degree() const {
  int d = 0;
  for (const auto& p : points) d += p.multiplicity;
  return d;
}

double ParabolicDivisor::weight_sum() const {
  double s = 0.0;
  for (const auto& p : points) s += p.alpha;
  return s;
}

void validate(const VortexProblem& problem) {
  const auto& c = problem.couplings;
  if (!(c.eSq > 0.0) || !(c.tau > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "couplings: e^2 and tau must be positive");
  }
  const auto& zs = problem.zeros.points;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if (zs[i].multiplicity < 1) {
      throw Error(ErrorCode::InvalidInput, "zeros: multiplicities must be positive");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (zs[i].location == zs[j].location) {
        throw Error(ErrorCode::InvalidInput, "zeros: points must be distinct");
      }
    }
  }
  const auto& ps = problem.parabolic.points;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (!(ps[i].alpha >= 0.0)) {
      throw Error(ErrorCode::InvalidInput, "parabolic: weights must be >= 0");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (ps[i].location == ps[j].location) {
        throw Error(ErrorCode::InvalidInput, "parabolic: points must be distinct");
      }
    }
  }
}

void validate_on_grid(const VortexProblem& problem, const SphericalGrid& grid) {
  std::vector<ChartPoint> pts;
  for (const auto& z : problem.zeros.points) pts.push_back(z.location);
  for (const auto& p : problem.parabolic.points) pts.push_back(p.location);
  for (const auto& c : problem.surface.cones) pts.push_back(c.location);
  validate_divisor_points(grid, pts, "divisor point");
}

double par_degree(int d, const ParabolicDivisor& parabolic) {
  return d + parabolic.weight_sum();
}

BradlowResult bradlow_check(const VortexProblem& problem) {
  const auto& c = problem.couplings;
  const double bound =
      2.0 * std::numbers::pi / (c.tau * c.eSq) * par_degree(problem.degree(), problem.parabolic);
  const double margin = problem.surface.targetVolume - bound;
  return {margin > 0.0, margin};
}

double background_hermitian(const VortexProblem& problem, const ChartPoint& p) {
  const double n2 = p.infinity ? 0.0 : std::norm(p.z);
  double h = std::pow(1.0 + n2, -problem.degree());
  const Vec3 x = to_sphere(p);
  for (const auto& q : problem.parabolic.points) {
    if (q.alpha != 0.0) h *= std::pow(chordal(x, to_sphere(q.location)), q.alpha);
  }
  return h;
}

double section_norm_sq(const VortexProblem& problem, const Section& s, const Vec3& p) {
  if (s.scale == 0.0) return 0.0;
  const int d = problem.degree();
  const int mFinite = finite_multiplicity(s.zeros);
  if (mFinite > d) {
    throw Error(ErrorCode::InvalidInput, "section: more finite zeros than the degree");
  }
  double v = s.scale * s.scale;
  for (const auto& z : s.zeros.points) {
    if (z.location.infinity) continue;
    const double w = chordal(p, to_sphere(z.location)) * (1.0 + std::norm(z.location.z));
    v *= std::pow(w, z.multiplicity);
  }
  if (d > mFinite) v *= std::pow(chordal(p, Vec3{0.0, 0.0, 1.0}), d - mFinite);
  for (const auto& q : problem.parabolic.points) {
    if (q.alpha != 0.0) v *= std::pow(chordal(p, to_sphere(q.location)), q.alpha);
  }
  return v;
}

double section_norm_sq(const VortexProblem& problem, const ChartPoint& p) {
  return section_norm_sq(problem, problem.section(), to_sphere(p));
}

Vec3 grad_log_section_norm(const VortexProblem& problem, const Section& s, const Vec3& p) {
  Vec3 g{0.0, 0.0, 0.0};
  const int d = problem.degree();
  for (const auto& z : s.zeros.points) {
    if (z.location.infinity) continue;
    axpy(g, z.multiplicity, grad_log_chordal(p, to_sphere(z.location)));
  }
  const int rest = d - finite_multiplicity(s.zeros);
  if (rest > 0) axpy(g, rest, grad_log_chordal(p, Vec3{0.0, 0.0, 1.0}));
  for (const auto& q : problem.parabolic.points) {
    if (q.alpha != 0.0) axpy(g, q.alpha, grad_log_chordal(p, to_sphere(q.location)));
  }
  return g;
}

double background_flux(const VortexProblem& problem) {
  return 2.0 * std::numbers::pi * par_degree(problem.degree(), problem.parabolic) /
         problem.surface.targetVolume;
}

}  // namespace vortexlab
