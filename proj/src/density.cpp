#include "sectorlab/density.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "sectorlab/errors.hpp"

namespace sectorlab {

std::string to_string(Trend t) {
  switch (t) {
    case Trend::settled: return "settled";
    case Trend::rising: return "rising";
    case Trend::falling: return "falling";
    case Trend::oscillating: return "oscillating";
  }
  return "unknown";
}

DensityProfile density_profile(const SectorSet& set, const Sector& sector,
                               const RadiusSchedule& schedule, const GridOptions& grid,
                               Execution exec) {
  // Normalize once so each radius is a plain clip-and-sum.
  SectorSet work = set;
  if (auto* u = std::get_if<RectUnionSet>(&work)) *u = normalize(*u);

  const auto& radii = schedule.radii();
  // Grid estimates parallelize internally; other paths parallelize over radii.
  const bool grid_path = std::holds_alternative<OracleSet>(work) &&
                         !std::get<OracleSet>(work).has_structured_measure();
  auto measures = detail::map_indexed<MeasureEstimate>(
      radii.size(), grid_path ? Execution::serial : exec, [&](std::size_t i) {
        return measure_in_truncation(work, sector, radii[i], grid,
                                     grid_path ? exec : Execution::serial);
      });

  DensityProfile p;
  p.radii = radii;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double whole = sector.truncated_measure(radii[i]);
    p.ratios.push_back(measures[i].value / whole);
    p.errors.push_back(measures[i].error / whole);
  }
  return p;
}

DensityEstimate density_estimates(const DensityProfile& profile, std::size_t window) {
  if (window == 0) throw DomainError("density window must be positive");
  if (window > profile.ratios.size()) throw DomainError("density window exceeds profile length");
  const std::size_t start = profile.ratios.size() - window;
  DensityEstimate e;
  e.window = window;
  e.upper = *std::max_element(profile.ratios.begin() + start, profile.ratios.end());
  e.lower = *std::min_element(profile.ratios.begin() + start, profile.ratios.end());
  e.error = *std::max_element(profile.errors.begin() + start, profile.errors.end());

  if (e.upper - e.lower <= kSettledSpread) {
    e.trend = Trend::settled;
  } else {
    bool up = true, down = true;
    for (std::size_t i = start + 1; i < profile.ratios.size(); ++i) {
      if (profile.ratios[i] < profile.ratios[i - 1]) up = false;
      if (profile.ratios[i] > profile.ratios[i - 1]) down = false;
    }
    e.trend = up ? Trend::rising : down ? Trend::falling : Trend::oscillating;
  }
  return e;
}

double annuli_density_bound(const IntegerSet& K, std::int64_t n) {
  if (n < 1) throw DomainError("density bound needs n >= 1");
  const double frac = static_cast<double>(K.count_up_to(n)) / static_cast<double>(n);
  return frac * frac;
}

void write_profile_csv(std::ostream& out, const DensityProfile& profile) {
  out << "r,ratio,error\n";
  out.precision(17);
  for (std::size_t i = 0; i < profile.radii.size(); ++i) {
    out << profile.radii[i] << ',' << profile.ratios[i] << ',' << profile.errors[i] << '\n';
  }
}

}  // namespace sectorlab
