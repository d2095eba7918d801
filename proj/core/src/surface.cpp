#include "vortexlab/surface.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "vortexlab/error.hpp"
#include "vortexlab/specfun.hpp"

namespace vortexlab {

namespace {

constexpr double kPi = std::numbers::pi;

double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

Vec3 normalized(Vec3 v) {
  const double n = std::sqrt(dot(v, v));
  return {v[0] / n, v[1] / n, v[2] / n};
}

double angular_distance(const Vec3& a, const Vec3& b) {
  const Vec3 c = cross(a, b);
  return std::atan2(std::sqrt(dot(c, c)), dot(a, b));
}

// 1/C: mean of prod sigma^beta over the unit sphere, by Voronoi cells in
// geodesic polar coordinates about each cone.
double inverse_normalization_quadrature(const std::vector<ConicalPoint>& cones) {
  std::vector<Vec3> q;
  for (const auto& c : cones) q.push_back(to_sphere(c.location));
  boost::math::quadrature::tanh_sinh<double> ts;
  double total = 0.0;
  for (std::size_t j = 0; j < cones.size(); ++j) {
    const Vec3& qj = q[j];
    const Vec3 helper = std::abs(qj[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    const Vec3 u1 = normalized(cross(qj, helper));
    const Vec3 u2 = cross(qj, u1);
    auto direction = [&](double psi) {
      const double c = std::cos(psi), s = std::sin(psi);
      return Vec3{c * u1[0] + s * u2[0], c * u1[1] + s * u2[1], c * u1[2] + s * u2[2]};
    };
    auto radial = [&](double psi) {
      const Vec3 d = direction(psi);
      double tmax = kPi;
      for (std::size_t k = 0; k < q.size(); ++k) {
        if (k == j) continue;
        const double cjk = dot(qj, q[k]);
        tmax = std::min(tmax, std::atan2(1.0 - cjk, dot(d, q[k])));
      }
      auto f = [&](double t) {
        if (t < 1e-200) return 0.0;
        double val = std::pow(std::sin(0.5 * t), 2.0 * cones[j].beta) * std::sin(t);
        const Vec3 p{std::cos(t) * qj[0] + std::sin(t) * d[0],
                     std::cos(t) * qj[1] + std::sin(t) * d[1],
                     std::cos(t) * qj[2] + std::sin(t) * d[2]};
        for (std::size_t k = 0; k < q.size(); ++k) {
          if (k != j) val *= std::pow(chordal(p, q[k]), cones[k].beta);
        }
        return val;
      };
      return ts.integrate(f, 0.0, tmax, 1e-13);
    };
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        radial, 0.0, 2.0 * kPi, 12, 1e-13);
  }
  return total / (4.0 * kPi);
}

// rho * prod over cones, without C.
double rho_shape(const std::vector<ConicalPoint>& cones, const Vec3& p) {
  double val = 1.0;
  for (const auto& c : cones) {
    if (c.beta == 0.0) continue;
    const double s = chordal(p, to_sphere(c.location));
    if (s == 0.0 && c.beta < 0.0) {
      throw Error(ErrorCode::EvaluationAtSingularity,
                  "rho: evaluation at a conical point of negative weight");
    }
    val *= std::pow(s, c.beta);
  }
  return val;
}

bool is_antipodal(const ChartPoint& a, const ChartPoint& b) {
  const Vec3 x = to_sphere(a);
  const Vec3 y = to_sphere(b);
  return std::abs(dot(x, y) + 1.0) < 1e-15;
}

}  // namespace

Vec3 to_sphere(const ChartPoint& p) {
  if (p.infinity) return {0.0, 0.0, 1.0};
  const double n2 = std::norm(p.z);
  const double d = 1.0 + n2;
  return {2.0 * p.z.real() / d, 2.0 * p.z.imag() / d, (n2 - 1.0) / d};
}

ChartPoint from_sphere(const Vec3& x) {
  if (x[2] <= 0.0) return ChartPoint::finite(complex(x[0], x[1]) / (1.0 - x[2]));
  const complex den(x[0], -x[1]);
  if (den == complex{0.0, 0.0}) return ChartPoint::at_infinity();
  return ChartPoint::finite((1.0 + x[2]) / den);
}

double chordal(const Vec3& p, const Vec3& q) {
  // (1 - P.Q)/2 = |P - Q|^2 / 4, without cancellation for nearby points.
  const double dx = p[0] - q[0], dy = p[1] - q[1], dz = p[2] - q[2];
  return 0.25 * (dx * dx + dy * dy + dz * dz);
}

double chordal(const ChartPoint& p, const ChartPoint& q) {
  return chordal(to_sphere(p), to_sphere(q));
}

double SurfaceSpec::radius_sq() const { return targetVolume / (4.0 * kPi); }

double rho_normalization_quadrature(const std::vector<ConicalPoint>& cones) {
  return 1.0 / inverse_normalization_quadrature(cones);
}

SurfaceSpec make_surface(double volume, std::vector<ConicalPoint> cones) {
  if (!(volume > 0.0) || !std::isfinite(volume)) {
    throw Error(ErrorCode::InvalidInput, "surface: target volume must be positive");
  }
  for (std::size_t i = 0; i < cones.size(); ++i) {
    if (!(cones[i].beta > -1.0)) {
      std::ostringstream os;
      os << "surface: cone " << i << " has weight " << cones[i].beta << " <= -1";
      throw Error(ErrorCode::InvalidInput, os.str());
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (chordal(cones[i].location, cones[j].location) == 0.0) {
        throw Error(ErrorCode::InvalidInput, "surface: conical locations must be distinct");
      }
    }
  }
  SurfaceSpec spec;
  spec.targetVolume = volume;
  spec.cones = std::move(cones);
  // Drop the bookkeeping of zero weights from the normalisation.
  std::vector<ConicalPoint> active;
  for (const auto& c : spec.cones) {
    if (c.beta != 0.0) active.push_back(c);
  }
  if (active.empty()) {
    spec.normalization = 1.0;
  } else if (active.size() == 1) {
    spec.normalization = active[0].beta + 1.0;
  } else if (active.size() == 2 && is_antipodal(active[0].location, active[1].location)) {
    // Beta integral: int_0^1 x^b0 (1-x)^b1 dx.
    const double b0 = active[0].beta, b1 = active[1].beta;
    spec.normalization = specfun::gamma(b0 + b1 + 2.0) /
                         (specfun::gamma(b0 + 1.0) * specfun::gamma(b1 + 1.0));
  } else {
    spec.normalization = rho_normalization_quadrature(active);
  }
  return spec;
}

SphericalGrid::SphericalGrid(int nLat, int nLon) : nLat_(nLat), nLon_(nLon) {
  if (nLat < 16 || nLon < 32) {
    throw Error(ErrorCode::InvalidInput, "grid: need nLat >= 16 and nLon >= 32");
  }
  dtheta_ = kPi / nLat;
  dphi_ = 2.0 * kPi / nLon;
  area_.resize(nLat);
  wPhi_.resize(nLat);
  wTheta_.assign(nLat + 1, 0.0);
  for (int a = 0; a < nLat; ++a) {
    const double s = std::sin(theta(a));
    area_[a] = 2.0 * s * std::sin(0.5 * dtheta_) * dphi_;
    wPhi_[a] = dtheta_ / (s * dphi_);
  }
  for (int a = 1; a < nLat; ++a) {
    wTheta_[a] = std::sin(a * dtheta_) * dphi_ / dtheta_;
  }
}

Vec3 SphericalGrid::point(double theta, double phi) const {
  const double st = std::sin(theta);
  return {-st * std::sin(phi), std::cos(theta), -st * std::cos(phi)};
}

std::array<double, 2> SphericalGrid::angles(const Vec3& x) const {
  const double theta = std::atan2(std::hypot(x[0], x[2]), x[1]);
  double phi = std::atan2(-x[0], -x[2]);
  if (phi < 0.0) phi += 2.0 * kPi;
  return {theta, phi};
}

double SphericalGrid::pole_distance_cells(const Vec3& x) const {
  const double theta = angles(x)[0];
  return std::min(theta, kPi - theta) / dtheta_;
}

double background_density(const SurfaceSpec& spec, const ChartPoint& p) {
  const double n2 = p.infinity ? 0.0 : std::norm(p.z);
  return (spec.targetVolume / kPi) / ((1.0 + n2) * (1.0 + n2));
}

double rho(const SurfaceSpec& spec, const Vec3& p) {
  return spec.normalization * rho_shape(spec.cones, p);
}

double rho(const SurfaceSpec& spec, const ChartPoint& p) {
  return rho(spec, to_sphere(p));
}

double cell_average(const SphericalGrid& grid, int a, int b,
                    const std::function<double(const Vec3&)>& f,
                    const std::vector<Vec3>& singular) {
  const double t0 = a * grid.dtheta(), t1 = (a + 1) * grid.dtheta();
  const double p0 = b * grid.dphi(), p1 = (b + 1) * grid.dphi();
  const double tc = grid.theta(a), pc = grid.phi(b);

  std::optional<std::array<double, 2>> apex;
  for (const auto& s : singular) {
    auto [ts, ps] = grid.angles(s);
    // Unwrap phi towards the cell.
    while (ps - pc > kPi) ps -= 2.0 * kPi;
    while (pc - ps > kPi) ps += 2.0 * kPi;
    if (std::abs(ts - tc) <= 2.5 * grid.dtheta() && std::abs(ps - pc) <= 2.5 * grid.dphi()) {
      apex = std::array<double, 2>{std::clamp(ts, t0, t1), std::clamp(ps, p0, p1)};
      break;
    }
  }
  if (!apex) return f(grid.node(a, b));

  auto integrand = [&](double th, double ph) {
    return f(grid.point(th, ph)) * std::sin(th);
  };
  const std::array<std::array<double, 2>, 4> corner = {
      std::array<double, 2>{t0, p0}, {t1, p0}, {t1, p1}, {t0, p1}};
  boost::math::quadrature::tanh_sinh<double> ts(10);
  using GL = boost::math::quadrature::gauss<double, 20>;
  double total = 0.0;
  const auto& A = *apex;
  for (int k = 0; k < 4; ++k) {
    const auto& B = corner[k];
    const auto& C = corner[(k + 1) % 4];
    const double det = std::abs((B[0] - A[0]) * (C[1] - A[1]) - (B[1] - A[1]) * (C[0] - A[0]));
    if (det <= 1e-14 * grid.dtheta() * grid.dphi()) continue;
    auto over_s = [&](double s) {
      if (s < 1e-12) return 0.0;
      auto over_t = [&](double t) {
        const double th = A[0] + s * (B[0] + t * (C[0] - B[0]) - A[0]);
        const double ph = A[1] + s * (B[1] + t * (C[1] - B[1]) - A[1]);
        return integrand(th, ph);
      };
      return s * GL::integrate(over_t, 0.0, 1.0);
    };
    total += det * ts.integrate(over_s, 0.0, 1.0, 1e-12);
  }
  return total / grid.cell_area(a);
}

ScalarField sample_rho(const SurfaceSpec& spec, const SphericalGrid& grid) {
  ScalarField out(grid);
  std::vector<Vec3> singular;
  for (const auto& c : spec.cones) {
    if (c.beta != 0.0) singular.push_back(to_sphere(c.location));
  }
  auto f = [&](const Vec3& p) { return rho(spec, p); };
  for (int a = 0; a < grid.nLat(); ++a) {
    for (int b = 0; b < grid.nLon(); ++b) {
      out(a, b) = cell_average(grid, a, b, f, singular);
    }
  }
  return out;
}

double integrate(const ScalarField& f, double volume) {
  const SphericalGrid& g = f.grid;
  const double r2 = volume / (4.0 * kPi);
  double total = 0.0;
  for (int a = 0; a < g.nLat(); ++a) {
    double row = 0.0;
    for (int b = 0; b < g.nLon(); ++b) row += f(a, b);
    total += row * g.cell_area(a);
  }
  return total * r2;
}

double volume(const SurfaceSpec& spec, const SphericalGrid& grid) {
  return integrate(sample_rho(spec, grid), spec.targetVolume);
}

ScalarField laplace_apply(const SurfaceSpec& spec, const SphericalGrid& grid,
                          const ScalarField& u) {
  ScalarField out(grid);
  const int nLat = grid.nLat(), nLon = grid.nLon();
  const double r2 = spec.radius_sq();
  for (int a = 0; a < nLat; ++a) {
    const double wn = grid.theta_face_weight(a);
    const double ws = grid.theta_face_weight(a + 1);
    const double wp = grid.phi_face_weight(a);
    const double scale = 1.0 / (r2 * grid.cell_area(a));
    for (int b = 0; b < nLon; ++b) {
      const double uc = u(a, b);
      double acc = wp * (2.0 * uc - u(a, (b + nLon - 1) % nLon) - u(a, (b + 1) % nLon));
      if (a > 0) acc += wn * (uc - u(a - 1, b));
      if (a + 1 < nLat) acc += ws * (uc - u(a + 1, b));
      out(a, b) = acc * scale;
    }
  }
  return out;
}

double gaussian_curvature(const std::function<double(complex)>& g, complex z,
                          const std::vector<complex>& singular,
                          std::optional<double> step) {
  const double h = step.value_or(1e-4 * (1.0 + std::abs(z)));
  for (const auto& s : singular) {
    if (std::abs(z - s) < 10.0 * h) {
      throw Error(ErrorCode::StepUnderflow,
                  "gaussian_curvature: point within 10 steps of a singular point");
    }
  }
  auto L = [&](complex w) { return std::log(g(w)); };
  const double l0 = L(z);
  double near = 0.0, far = 0.0;
  for (const complex d : {complex(h, 0), complex(-h, 0), complex(0, h), complex(0, -h)}) {
    near += L(z + d);
    far += L(z + 2.0 * d);
  }
  const double lap = (16.0 * near - far - 60.0 * l0) / (12.0 * h * h);
  return -lap / (2.0 * g(z));
}

void validate_divisor_points(const SphericalGrid& grid,
                             const std::vector<ChartPoint>& points,
                             const std::string& what) {
  const double cell = std::max(grid.dtheta(), grid.dphi());
  std::vector<Vec3> xs;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec3 x = to_sphere(points[i]);
    if (grid.pole_distance_cells(x) < 3.0) {
      std::ostringstream os;
      os << what << "[" << i << "]: within 3 cells of a grid pole (z = +-i)";
      throw Error(ErrorCode::InvalidInput, os.str());
    }
    auto [th, ph] = grid.angles(x);
    const int a = std::clamp(static_cast<int>(th / grid.dtheta()), 0, grid.nLat() - 1);
    const int b = static_cast<int>(ph / grid.dphi()) % grid.nLon();
    if (angular_distance(x, grid.node(a, b)) <= 1e-6) {
      std::ostringstream os;
      os << what << "[" << i << "]: lies on a cell centre";
      throw Error(ErrorCode::InvalidInput, os.str());
    }
    xs.push_back(x);
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double d = angular_distance(xs[i], xs[j]);
      if (d > 0.0 && d < 3.0 * cell) {
        std::ostringstream os;
        os << what << "[" << j << "] and [" << i << "] are closer than 3 cells";
        throw Error(ErrorCode::InvalidInput, os.str());
      }
    }
  }
}

void write_csv(std::ostream& os, const ScalarField& f) {
  os << "theta,phi,value\n";
  char buf[96];
  for (int a = 0; a < f.grid.nLat(); ++a) {
    for (int b = 0; b < f.grid.nLon(); ++b) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", f.grid.theta(a),
                    f.grid.phi(b), f(a, b));
      os << buf;
    }
  }
}

void write_csv(const std::string& path, const ScalarField& f) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  write_csv(os, f);
}

}  // namespace vortexlab
