#include "vortexlab/fields.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "vortexlab/error.hpp"

namespace vortexlab {

namespace {

constexpr double kPi = std::numbers::pi;

// Value at row a (possibly -1, -2, nLat, nLat+1) through the pole reflection.
double across(const ScalarField& u, int a, int b) {
  const SphericalGrid& g = u.grid;
  const int n = g.nLon();
  if (a < 0) return u(-a - 1, (b + n / 2) % n);
  if (a >= g.nLat()) return u(2 * g.nLat() - a - 1, (b + n / 2) % n);
  return u(a, ((b % n) + n) % n);
}

std::vector<Vec3> singular_points(const VortexProblem& problem) {
  std::vector<Vec3> s;
  for (const auto& z : problem.zeros.points) s.push_back(to_sphere(z.location));
  for (const auto& p : problem.parabolic.points) s.push_back(to_sphere(p.location));
  for (const auto& c : problem.surface.cones) {
    if (c.beta != 0.0) s.push_back(to_sphere(c.location));
  }
  return s;
}

double angle_between(const Vec3& a, const Vec3& b) {
  const double d = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  const double cx = a[1] * b[2] - a[2] * b[1];
  const double cy = a[2] * b[0] - a[0] * b[2];
  const double cz = a[0] * b[1] - a[1] * b[0];
  return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), d);
}

}  // namespace

VortexFields reconstruct(const VortexProblem& problem, const KWSolution& solution) {
  if (!solution.converged) {
    throw Error(ErrorCode::NotConverged, "reconstruct: solution did not converge");
  }
  const SphericalGrid& g = solution.u.grid;
  const ScalarField& u = solution.u;
  const SurfaceSpec& spec = problem.surface;
  const double r2 = spec.radius_sq();
  const double e2 = problem.couplings.eSq, tau = problem.couplings.tau;
  const Section sec = problem.section();

  VortexFields f{g, u, ScalarField(g), ScalarField(g), ScalarField(g),
                 ScalarField(g), sample_rho(spec, g), spec.targetVolume, problem.couplings};
  const ScalarField lap = laplace_apply(spec, g, u);
  const double B0 = background_flux(problem);
  const double dth = g.dtheta(), dph = g.dphi();

  for (int a = 0; a < g.nLat(); ++a) {
    const double th = g.theta(a);
    const double st = std::sin(th), ct = std::cos(th);
    for (int b = 0; b < g.nLon(); ++b) {
      const double ph = g.phi(b);
      const Vec3 p = g.node(a, b);
      const double psi = section_norm_sq(problem, sec, p) * std::exp(2.0 * u(a, b));
      f.psi(a, b) = psi;
      f.h(a, b) = background_hermitian(problem, from_sphere(p)) * std::exp(2.0 * u(a, b));
      const double flux = B0 + lap(a, b);
      f.flux(a, b) = flux;

      // Tangent frame at p.
      const Vec3 eth{-ct * std::sin(ph), -st, -ct * std::cos(ph)};
      const Vec3 eph{-std::cos(ph), 0.0, std::sin(ph)};
      const Vec3 G = grad_log_section_norm(problem, sec, p);
      const double gth = G[0] * eth[0] + G[1] * eth[1] + G[2] * eth[2];
      const double gph = G[0] * eph[0] + G[1] * eph[1] + G[2] * eph[2];
      const double uth = (across(u, a + 1, b) - across(u, a - 1, b)) / (2.0 * dth);
      const double uph = (across(u, a, b + 1) - across(u, a, b - 1)) / (2.0 * dph * st);
      const double gx = gth + 2.0 * uth, gy = gph + 2.0 * uph;
      const double grad2 = (gx * gx + gy * gy) / r2;

      const double rho = f.rho(a, b);
      double e = 0.5 * psi * grad2 + 0.5 * e2 * rho * (psi - tau) * (psi - tau);
      if (rho > 0.0) e += flux * flux / (2.0 * e2 * rho);
      f.energyDensity(a, b) = e;
    }
  }
  return f;
}

double chern_number(const VortexFields& f) {
  return integrate(f.flux, f.volume) / (2.0 * kPi);
}

double total_energy(const VortexFields& f) { return integrate(f.energyDensity, f.volume); }

ResidualNorms vortex_residual(const VortexFields& f, const VortexProblem& problem,
                              ResidualStencil stencil) {
  const SphericalGrid& g = f.grid;
  const double e2 = f.couplings.eSq, tau = f.couplings.tau;
  const double cell = std::max(g.dtheta(), g.dphi());
  const std::vector<Vec3> sing = singular_points(problem);
  const bool ho = stencil == ResidualStencil::HighOrder;
  const double cap = 20.0 * kPi / 180.0;
  const double exclusion = ho ? std::max(3.0 * cell, 0.2) : 3.0 * cell;
  const double r2 = problem.surface.radius_sq();
  const double B0 = background_flux(problem);
  const double dth = g.dtheta(), dph = g.dphi();

  ResidualNorms out;
  double sumSq = 0.0, sumA = 0.0;
  for (int a = 0; a < g.nLat(); ++a) {
    const double th = g.theta(a);
    if (ho && (th < cap || th > kPi - cap)) continue;
    const double st = std::sin(th);
    for (int b = 0; b < g.nLon(); ++b) {
      const Vec3 p = g.node(a, b);
      bool skip = false;
      for (const auto& s : sing) skip = skip || angle_between(p, s) <= exclusion;
      if (skip) continue;
      double r;
      if (!ho) {
        r = f.flux(a, b) - e2 * f.rho(a, b) * (tau - f.psi(a, b));
      } else {
        const ScalarField& u = f.u;
        const double um2 = across(u, a - 2, b), um1 = across(u, a - 1, b), u0 = u(a, b);
        const double up1 = across(u, a + 1, b), up2 = across(u, a + 2, b);
        const double uth = (-up2 + 8.0 * up1 - 8.0 * um1 + um2) / (12.0 * dth);
        const double uthth = (-up2 + 16.0 * up1 - 30.0 * u0 + 16.0 * um1 - um2) / (12.0 * dth * dth);
        const double vm2 = across(u, a, b - 2), vm1 = across(u, a, b - 1);
        const double vp1 = across(u, a, b + 1), vp2 = across(u, a, b + 2);
        const double uphph = (-vp2 + 16.0 * vp1 - 30.0 * u0 + 16.0 * vm1 - vm2) / (12.0 * dph * dph);
        const double lap = -(uthth + std::cos(th) / st * uth + uphph / (st * st)) / r2;
        const double rho = vortexlab::rho(problem.surface, p);
        const double psi = section_norm_sq(problem, problem.section(), p) * std::exp(2.0 * u0);
        r = (B0 + lap) - e2 * rho * (tau - psi);
      }
      out.supNorm = std::max(out.supNorm, std::abs(r));
      sumSq += r * r * g.cell_area(a);
      sumA += g.cell_area(a);
      ++out.samples;
    }
  }
  out.l2Norm = sumA > 0.0 ? std::sqrt(sumSq / sumA) : 0.0;
  return out;
}

double bogomolny_identity_check(const VortexFields& f, const VortexProblem& problem) {
  const double e2 = f.couplings.eSq, tau = f.couplings.tau;
  ScalarField rhs(f.grid);
  for (std::size_t i = 0; i < rhs.values.size(); ++i) {
    const double rho = f.rho.values[i];
    const double flux = f.flux.values[i];
    const double dev = flux - e2 * rho * (tau - f.psi.values[i]);
    rhs.values[i] = (rho > 0.0 ? dev * dev / (2.0 * e2 * rho) : 0.0) + tau * flux;
  }
  (void)problem;
  const double lhs = total_energy(f);
  const double rhsInt = integrate(rhs, f.volume);
  const double gap = std::abs(lhs - rhsInt);
  if (std::abs(lhs) < 1e-12) return gap;
  return gap / std::abs(lhs);
}

PgmScaling write_pgm(const std::string& path, const ScalarField& f) {
  PgmScaling s{f.values.front(), f.values.front()};
  for (double v : f.values) {
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  os << "P5\n" << f.grid.nLon() << " " << f.grid.nLat() << "\n255\n";
  const double span = s.max - s.min;
  std::vector<unsigned char> row(static_cast<std::size_t>(f.grid.nLon()));
  for (int a = 0; a < f.grid.nLat(); ++a) {
    for (int b = 0; b < f.grid.nLon(); ++b) {
      const double t = span > 0.0 ? (f(a, b) - s.min) / span : 0.0;
      row[static_cast<std::size_t>(b)] =
          static_cast<unsigned char>(std::lround(std::clamp(t, 0.0, 1.0) * 255.0));
    }
    os.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
  return s;
}

void write_pgm_sidecar(const std::string& path, const ScalarField& f, const PgmScaling& s) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "{\"format\": \"P5\", \"width\": %d, \"height\": %d, \"scaling\": \"linear\", "
                "\"min\": %.17g, \"max\": %.17g}\n",
                f.grid.nLon(), f.grid.nLat(), s.min, s.max);
  os << buf;
}

}  // namespace vortexlab
