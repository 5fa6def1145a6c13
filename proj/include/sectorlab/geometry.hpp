#pragma once

#include <complex>
#include <vector>

namespace sectorlab {

using Complex = std::complex<double>;

/// Angular slack used by membership tests on the closed sector. Sums of two
/// boundary points land on the boundary up to one rounding in atan2.
inline constexpr double kAngleSlack = 1e-12;

/// The closed complex sector {r e^{i theta} : r >= 0, |theta| <= alpha}
/// with 0 < alpha < pi/2.
class Sector {
 public:
  explicit Sector(double alpha);

  double alpha() const { return alpha_; }

  /// True iff |arg p| <= alpha or p == 0.
  bool contains(Complex p) const;

  /// True iff p is in the sector and strictly away from both edges.
  bool contains_interior(Complex p) const;

  /// Lebesgue measure of the truncation {t : |t| < r}, i.e. alpha r^2.
  double truncated_measure(double r) const;

  friend bool operator==(const Sector&, const Sector&) = default;

 private:
  double alpha_;
};

/// A point of a sector. Stored in Cartesian form so that addition, the
/// semigroup operation, is a plain complex sum.
class SectorPoint {
 public:
  SectorPoint() = default;

  static SectorPoint polar(const Sector& sector, double r, double theta);
  static SectorPoint cartesian(const Sector& sector, Complex z);

  Complex z() const { return z_; }
  double x() const { return z_.real(); }
  double y() const { return z_.imag(); }
  double r() const { return std::abs(z_); }
  double theta() const { return z_ == Complex{} ? 0.0 : std::arg(z_); }

  friend SectorPoint operator+(SectorPoint a, SectorPoint b) {
    return SectorPoint(a.z_ + b.z_);
  }
  friend bool operator==(const SectorPoint&, const SectorPoint&) = default;

 private:
  explicit SectorPoint(Complex z) : z_(z) {}
  Complex z_{};
};

inline SectorPoint add_points(SectorPoint s, SectorPoint t) { return s + t; }

/// Finite, strictly increasing list of radii standing in for r -> infinity.
class RadiusSchedule {
 public:
  /// r_j = r0 * gamma^j, j = 0 .. count-1.
  static RadiusSchedule geometric(double r0, double gamma, int count);
  /// Geometric schedule extended until the last radius reaches `horizon`.
  static RadiusSchedule geometric_to(double r0, double gamma, double horizon);
  static RadiusSchedule from_radii(std::vector<double> radii);

  /// Same schedule plus every integer radius in [1, horizon]. Extremes of
  /// annuli-set densities sit on integer radii.
  RadiusSchedule with_integer_radii(double horizon) const;

  const std::vector<double>& radii() const { return radii_; }
  std::size_t size() const { return radii_.size(); }
  double back() const { return radii_.back(); }

 private:
  explicit RadiusSchedule(std::vector<double> radii);
  std::vector<double> radii_;
};

}  // namespace sectorlab
