#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "lerwkit/lattice.hpp"

namespace lerwkit {

// ---------------------------------------------------------------------------
// Union-of-squares domains on a refined grid
// ---------------------------------------------------------------------------

/// Grid nodes of mesh 1/m lying in the open union-of-squares domain of A,
/// scaled by m (node p represents the planar point p/m). m must be even so
/// that the polygon edges fall on grid lines; the outer boundary of the
/// result then lies exactly on the polygon.
LatticeDomain refine_union_of_squares(const LatticeDomain& a, int m);

/// Boundary angles, Green's function and map derivative of the Riemann map
/// f_A of the union-of-squares domain onto the unit disk (f_A(0) = 0,
/// f_A'(0) > 0), approximated on refined grids.
struct ConformalData {
  std::shared_ptr<const LatticeDomain> domain;
  std::vector<int> mesh_levels;

  /// g_A at each lattice point of A, indexed like domain->points(); +inf at
  /// the origin. Richardson-extrapolated over the two finest levels.
  std::vector<double> g_values;
  std::vector<double> g_error;

  /// theta_A at each outer boundary point, indexed like boundary().outer,
  /// in [0, 2pi). Only differences are meaningful: the anchor is the start
  /// of the first edge of the ccw cycle.
  std::vector<double> theta_boundary;
  /// Largest change of any angle difference between the two finest levels.
  double theta_error = 0;

  /// -log f_A'(0) = lim_{x->0} (g_A(x) + log|x|), and f_A'(0) itself.
  double neg_log_f_prime = 0;
  double f_prime_at_0 = 0;
  double f_prime_error = 0;  // on neg_log_f_prime

  double g(LatticePoint x) const;
  double theta(LatticePoint boundary_point) const;
  /// theta of the outer boundary point nearest to x (x itself if it is a
  /// boundary point). For near-boundary interior points this approximates
  /// arg f_A(x) up to the point's distance from the boundary.
  double theta_near(LatticePoint x) const;
};

/// Convergence order assumed by the Richardson step. The staircase polygon
/// has reentrant corners of angle 3pi/2, which limit the five-point scheme
/// to O(h^{4/3}) away from the corners.
inline constexpr double kRichardsonOrder = 4.0 / 3.0;

/// Mesh levels must be even and strictly increasing; at least one level.
ConformalData compute_conformal(const LatticeDomain& a, std::span<const int> mesh_levels,
                                double residual_tolerance = 1e-12);

/// Single-level g_A(x): harmonic extension of log|y| minus log|x|. x must
/// be a nonzero node of the refined grid (m x integral) inside the domain.
double continuum_green(const LatticeDomain& a, std::complex<double> x, int m);

/// Single-level boundary angles from the grid harmonic measure seen from 0.
std::vector<double> theta_boundary(const LatticeDomain& a, int m);

/// Single-level f_A'(0), read from the harmonic extension of log|y| at the
/// origin.
double map_deriv_at_0(const LatticeDomain& a, int m);

/// Alternative f_A'(0) estimate: average g_A(x) + log|x| over the four axis
/// directions at |x| = 1, 2, 4 and extrapolate linearly in |x| to 0.
double map_deriv_ray_fit(const LatticeDomain& a, int m);

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

/// Green's function of the unit disk, log|conj(y) x - 1| - log|y - x|.
double disk_green(std::complex<double> x, std::complex<double> y);

/// 1 / (2 pi (1 - cos(theta' - theta))).
double disk_excursion_kernel(double theta, double theta_prime);

/// Excursion kernel of the rectangle (0,L) x (0,pi) between iq and L + iq'.
double rect_excursion_kernel(double length, double q, double q_prime);

/// Poisson kernel of the same rectangle from r + iq to L + iq'.
double rect_interior_kernel(double length, double r, double q, double q_prime);

/// det[(1 - cos(x_j - y_j)) / (1 - cos(x_j - y_l))].
double lambda_disk(std::span<const double> theta_x, std::span<const double> theta_y);

/// Whether x^1..x^k, y^k..y^1 appear in counterclockwise order.
bool is_ccw_configuration(std::span<const double> theta_x, std::span<const double> theta_y);

/// k! det[sin(l q_j)] det[sin(l q'_j)] / prod(sin q_j sin q'_j) e^{-k(k-1)L/2}.
/// Requires pi > q_1 > ... > q_k > 0 and likewise for q'.
double prop15_leading(std::span<const double> q, std::span<const double> q_prime, double length);

/// Normalised excursion determinant of the rectangle built from
/// rect_excursion_kernel with no asymptotic approximation.
double lambda_rect_exact(std::span<const double> q, std::span<const double> q_prime, double length);

/// z -> e^{i phi} (z - a) / (1 - conj(a) z).
struct MobiusDisk {
  std::complex<double> a{0, 0};
  double phi = 0;

  std::complex<double> apply(std::complex<double> z) const;
  /// Image of the boundary point e^{i theta}, as an angle in [0, 2pi).
  double apply_angle(double theta) const;
};

MobiusDisk mobius_disk(std::complex<double> a, double phi);

/// |lambda_disk(T theta_x, T theta_y) - lambda_disk(theta_x, theta_y)|.
double mobius_lambda_change(const MobiusDisk& t, std::span<const double> theta_x, std::span<const double> theta_y);

/// True when the change above is at most `tolerance`.
bool covariance_check(const MobiusDisk& t, std::span<const double> theta_x, std::span<const double> theta_y,
                      double tolerance = 1e-9);

}  // namespace lerwkit
