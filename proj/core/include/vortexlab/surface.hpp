#pragma once

#include <array>
#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace vortexlab {

using complex = std::complex<double>;
using Vec3 = std::array<double, 3>;

/// Point of the Riemann sphere in the stereographic coordinate z of the
/// north chart, or the point at infinity.
struct ChartPoint {
  complex z{0.0, 0.0};
  bool infinity = false;

  static ChartPoint finite(complex w) { return {w, false}; }
  static ChartPoint at_infinity() { return {{0.0, 0.0}, true}; }

  bool operator==(const ChartPoint& o) const {
    return infinity == o.infinity && (infinity || z == o.z);
  }
};

/// Unit vector on S^2; z = 0 maps to (0,0,-1) and infinity to (0,0,1).
Vec3 to_sphere(const ChartPoint& p);
ChartPoint from_sphere(const Vec3& x);

/// Chordal factor |z-q|^2 / ((1+|z|^2)(1+|q|^2)) = (1 - P.Q)/2.
double chordal(const Vec3& p, const Vec3& q);
double chordal(const ChartPoint& p, const ChartPoint& q);

struct ConicalPoint {
  ChartPoint location;
  double beta = 0.0;
};

struct SurfaceSpec {
  double targetVolume = 4.0 * 3.14159265358979323846;
  std::vector<ConicalPoint> cones;
  double normalization = 1.0;

  /// r^2 of the round background sphere, V / 4 pi.
  double radius_sq() const;
};

/// Validates the divisor and fixes the normalisation constant C of rho.
SurfaceSpec make_surface(double volume, std::vector<ConicalPoint> cones);

/// C by adaptive quadrature, used when no closed form applies (and as an
/// oracle for the closed forms).
double rho_normalization_quadrature(const std::vector<ConicalPoint>& cones);

/// Equiangular latitude-longitude grid, cell-centred in both directions.
/// The polar axis is the sphere direction of z = i, so z = 0, +-1 and
/// infinity sit on cell corners on the equator when nLon % 4 == 0.
class SphericalGrid {
 public:
  SphericalGrid(int nLat, int nLon);

  int nLat() const { return nLat_; }
  int nLon() const { return nLon_; }
  std::size_t size() const { return static_cast<std::size_t>(nLat_) * nLon_; }
  std::size_t index(int a, int b) const {
    return static_cast<std::size_t>(a) * nLon_ + b;
  }

  double dtheta() const { return dtheta_; }
  double dphi() const { return dphi_; }
  double theta(int a) const { return (a + 0.5) * dtheta_; }
  double phi(int b) const { return (b + 0.5) * dphi_; }
  /// Area of cell (a, .) on the unit sphere.
  double cell_area(int a) const { return area_[a]; }

  Vec3 point(double theta, double phi) const;
  Vec3 node(int a, int b) const { return point(theta(a), phi(b)); }
  ChartPoint node_chart(int a, int b) const { return from_sphere(node(a, b)); }
  /// (theta, phi) of a sphere point, phi in [0, 2 pi).
  std::array<double, 2> angles(const Vec3& x) const;

  /// Laplacian face weights: theta face between rows a-1 and a (a = 0..nLat,
  /// zero at the poles), and phi faces of row a.
  double theta_face_weight(int a) const { return wTheta_[a]; }
  double phi_face_weight(int a) const { return wPhi_[a]; }

  /// Angular distance from x to the nearest grid pole, in units of dtheta.
  double pole_distance_cells(const Vec3& x) const;

 private:
  int nLat_;
  int nLon_;
  double dtheta_;
  double dphi_;
  std::vector<double> area_;
  std::vector<double> wTheta_;
  std::vector<double> wPhi_;
};

struct ScalarField {
  SphericalGrid grid;
  std::vector<double> values;

  explicit ScalarField(const SphericalGrid& g, double fill = 0.0)
      : grid(g), values(g.size(), fill) {}

  double& operator()(int a, int b) { return values[grid.index(a, b)]; }
  double operator()(int a, int b) const { return values[grid.index(a, b)]; }
};

/// Conformal factor of the round metric of area V in the chart of p (south
/// chart w = 1/z at infinity).
double background_density(const SurfaceSpec& spec, const ChartPoint& p);

double rho(const SurfaceSpec& spec, const ChartPoint& p);
double rho(const SurfaceSpec& spec, const Vec3& p);

/// Integral of f over the unit sphere cell (a, b) divided by its area. When a
/// singular direction lies within two cells, the cell is split into Duffy
/// triangles with apex at the singular point.
double cell_average(const SphericalGrid& grid, int a, int b,
                    const std::function<double(const Vec3&)>& f,
                    const std::vector<Vec3>& singular = {});

/// Sample of rho per cell: cell averages near cones, centre values elsewhere.
ScalarField sample_rho(const SurfaceSpec& spec, const SphericalGrid& grid);

/// Quadrature of rho omega_0 over the grid.
double volume(const SurfaceSpec& spec, const SphericalGrid& grid);

/// Integral of f omega_0 for a surface of area V: sum f_c r^2 A_c.
double integrate(const ScalarField& f, double volume);

/// Positive Laplacian of omega_0 (minus Laplace-Beltrami), finite volume.
ScalarField laplace_apply(const SurfaceSpec& spec, const SphericalGrid& grid,
                          const ScalarField& u);

/// -(2/g) d_z d_zbar log g by 4th-order central differences.
/// Throws StepUnderflow within 10 h of a listed singular point.
double gaussian_curvature(const std::function<double(complex)>& g, complex z,
                          const std::vector<complex>& singular = {},
                          std::optional<double> step = std::nullopt);

/// Rejects divisor points on cell centres, within 3 cells of a grid pole, or
/// within 3 cells of each other (exact coincidences are allowed).
void validate_divisor_points(const SphericalGrid& grid,
                             const std::vector<ChartPoint>& points,
                             const std::string& what);

/// CSV with header theta,phi,value, 17 significant digits.
void write_csv(std::ostream& os, const ScalarField& f);
void write_csv(const std::string& path, const ScalarField& f);

}  // namespace vortexlab
