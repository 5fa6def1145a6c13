#pragma once

#include <functional>
#include <vector>

#include "sectorlab/geometry.hpp"
#include "sectorlab/parallel.hpp"

namespace sectorlab {

struct QuadratureOptions {
  /// Relative tolerance on the whole integral (integrands are nonnegative).
  double rel_tol = 1e-12;
  int max_depth = 18;
  /// Radial panels never exceed this width; unit panels match annuli.
  double max_panel_width = 1.0;
};

/// Boundary curves of a piecewise-smooth integrand.
struct Circle {
  Complex center;
  double radius;
  friend bool operator==(const Circle&, const Circle&) = default;
};

struct Ray {
  Complex origin;
  double angle;
  friend bool operator==(const Ray&, const Ray&) = default;
};

/// Integrand that is smooth between the crossings of {|z| = rho} with the
/// listed curves. `active` (optional) reports whether a sub-arc contributes;
/// it is evaluated at the sub-arc midpoint.
struct ArcIntegrand {
  std::vector<Circle> circles;
  std::vector<Ray> rays;
  std::function<double(Complex)> value;
  std::function<bool(Complex)> active;
};

struct QuadratureResult {
  double value = 0.0;
  /// Sum of |coarse - refined| over accepted panels.
  double error_estimate = 0.0;
};

/// Integral of value(z) dz over {rho e^{i phi} : rho in [rho_lo, rho_hi],
/// phi in [phi_lo, phi_hi]}. Radial panels are cut at every radius where
/// the arc structure changes (tangencies, corners, edge crossings) and at
/// integer multiples of max_panel_width; both directions use adaptive
/// 16-point Gauss-Legendre.
QuadratureResult integrate_polar(const ArcIntegrand& integrand, double rho_lo, double rho_hi,
                                 double phi_lo, double phi_hi,
                                 const QuadratureOptions& options = {},
                                 Execution exec = Execution::serial);

/// Smooth integrand on a polar rectangle (no interior discontinuities).
QuadratureResult integrate_polar_rect(const std::function<double(Complex)>& f, double r_lo,
                                      double r_hi, double th_lo, double th_hi,
                                      const QuadratureOptions& options = {});

/// 16-point Gauss-Legendre rule on [a, b] of a scalar function.
double gauss_legendre_16(const std::function<double(double)>& g, double a, double b);

/// Adaptive 16-point Gauss-Legendre with a relative tolerance; intended
/// for nonnegative integrands.
double integrate_1d(const std::function<double(double)>& g, double a, double b,
                    double rel_tol = 1e-12, int max_depth = 18);

namespace detail {

/// Angles in (phi_lo, phi_hi) where |z| = rho crosses the curves, sorted.
std::vector<double> crossing_angles(const std::vector<Circle>& circles,
                                    const std::vector<Ray>& rays, double rho, double phi_lo,
                                    double phi_hi);

/// Radii in [rho_lo, rho_hi] where the arc structure may change, sorted,
/// including both ends.
std::vector<double> radial_breakpoints(const std::vector<Circle>& circles,
                                       const std::vector<Ray>& rays, double rho_lo,
                                       double rho_hi, double phi_lo, double phi_hi);

}  // namespace detail
}  // namespace sectorlab
