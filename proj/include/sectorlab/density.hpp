#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sectorlab/geometry.hpp"
#include "sectorlab/integer_set.hpp"
#include "sectorlab/sets.hpp"

namespace sectorlab {

/// Sampled r -> mu(A cap Delta_r) / mu(Delta_r).
struct DensityProfile {
  std::vector<double> radii;
  std::vector<double> ratios;
  /// Per-radius error bound on the ratio (zero for rect unions).
  std::vector<double> errors;
};

enum class Trend { settled, rising, falling, oscillating };

std::string to_string(Trend t);

/// Tail-window surrogates for limsup / liminf. Never a claim about the limit.
struct DensityEstimate {
  double upper = 0.0;
  double lower = 0.0;
  std::size_t window = 0;
  Trend trend = Trend::settled;
  /// Largest per-radius error bound inside the window.
  double error = 0.0;
};

DensityProfile density_profile(const SectorSet& set, const Sector& sector,
                               const RadiusSchedule& schedule, const GridOptions& grid = {},
                               Execution exec = Execution::serial);

/// Tail spread below this is reported as settled.
inline constexpr double kSettledSpread = 0.01;

DensityEstimate density_estimates(const DensityProfile& profile, std::size_t window);

/// (#(K cap [1, n]) / n)^2, the lower bound on the annuli density at n.
double annuli_density_bound(const IntegerSet& K, std::int64_t n);

/// CSV with columns r,ratio,error.
void write_profile_csv(std::ostream& out, const DensityProfile& profile);

}  // namespace sectorlab
