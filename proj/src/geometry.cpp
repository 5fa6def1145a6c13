#include "sectorlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sectorlab/errors.hpp"

namespace sectorlab {

Sector::Sector(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < std::numbers::pi / 2)) {
    throw DomainError("sector angle must lie in (0, pi/2)");
  }
}

bool Sector::contains(Complex p) const {
  if (p == Complex{}) return true;
  return std::abs(std::arg(p)) <= alpha_ + kAngleSlack;
}

bool Sector::contains_interior(Complex p) const {
  if (p == Complex{}) return false;
  return std::abs(std::arg(p)) < alpha_ - kAngleSlack;
}

double Sector::truncated_measure(double r) const {
  if (!(r >= 0.0)) throw DomainError("truncation radius must be nonnegative");
  return alpha_ * r * r;
}

SectorPoint SectorPoint::polar(const Sector& sector, double r, double theta) {
  if (!(r >= 0.0)) throw DomainError("sector point needs r >= 0");
  if (std::abs(theta) > sector.alpha() + kAngleSlack) {
    throw DomainError("sector point angle outside [-alpha, alpha]");
  }
  return SectorPoint(std::polar(r, theta));
}

SectorPoint SectorPoint::cartesian(const Sector& sector, Complex z) {
  if (!sector.contains(z)) throw DomainError("point lies outside the sector");
  return SectorPoint(z);
}

RadiusSchedule::RadiusSchedule(std::vector<double> radii) : radii_(std::move(radii)) {
  if (radii_.empty()) throw DomainError("radius schedule must be nonempty");
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    if (!(radii_[i] > 0.0) || !std::isfinite(radii_[i])) {
      throw DomainError("schedule radii must be positive and finite");
    }
    if (i > 0 && !(radii_[i] > radii_[i - 1])) {
      throw DomainError("schedule radii must be strictly increasing");
    }
  }
}

RadiusSchedule RadiusSchedule::geometric(double r0, double gamma, int count) {
  if (!(r0 > 0.0) || !(gamma > 1.0) || count < 1) {
    throw DomainError("geometric schedule needs r0 > 0, gamma > 1, count >= 1");
  }
  std::vector<double> radii(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) radii[j] = r0 * std::pow(gamma, j);
  return RadiusSchedule(std::move(radii));
}

RadiusSchedule RadiusSchedule::geometric_to(double r0, double gamma, double horizon) {
  if (!(horizon >= r0)) throw DomainError("horizon must be at least r0");
  if (!(r0 > 0.0) || !(gamma > 1.0)) throw DomainError("need r0 > 0 and gamma > 1");
  const int count =
      1 + static_cast<int>(std::ceil(std::log(horizon / r0) / std::log(gamma) - 1e-12));
  return geometric(r0, gamma, count);
}

RadiusSchedule RadiusSchedule::from_radii(std::vector<double> radii) {
  return RadiusSchedule(std::move(radii));
}

RadiusSchedule RadiusSchedule::with_integer_radii(double horizon) const {
  std::vector<double> merged = radii_;
  for (int k = 1; k <= static_cast<int>(std::floor(horizon)); ++k) merged.push_back(k);
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  return RadiusSchedule(std::move(merged));
}

}  // namespace sectorlab
