#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sectorlab/density.hpp"
#include "sectorlab/lp.hpp"

namespace sectorlab {

/// Polar grid over Delta_R: radial cell edges 0, r_min, ..., R (geometric
/// after the first cell), uniform angular cells over [-alpha, alpha].
struct GridResolution {
  int n_r = 400;
  int n_theta = 64;
  double r_min = 0.05;
};

struct OrbitOptions {
  GridResolution resolution;
  /// Truncation used for each norm. Defaults to the support radius of f
  /// (exact) or R + 40 when f has unbounded support.
  std::optional<double> inner_R;
  QuadratureOptions quad{1e-9, 16, 1.0};
};

/// t -> ||T_t f|| sampled at the cell centres of a polar grid.
class OrbitGrid {
 public:
  OrbitGrid(const Sector& sector, double R, const GridResolution& res);

  const Sector& sector() const { return sector_; }
  double R() const { return R_; }
  int n_r() const { return static_cast<int>(node_r_.size()); }
  int n_theta() const { return static_cast<int>(node_theta_.size()); }
  const std::vector<double>& radial_edges() const { return edges_; }

  Complex node(int i, int j) const { return std::polar(node_r_[i], node_theta_[j]); }
  double node_r(int i) const { return node_r_[i]; }
  double node_theta(int j) const { return node_theta_[j]; }
  double norm(int i, int j) const { return norms_[index(i, j)]; }
  std::vector<double>& norms() { return norms_; }
  const std::vector<double>& norms() const { return norms_; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_theta() + j; }

  /// Measure of cell (i, j) intersected with Delta_r.
  double cell_measure_below(int i, double r) const;
  /// Cell containing z, if z is in Delta_R.
  std::optional<std::pair<int, int>> locate(Complex z) const;

 private:
  Sector sector_;
  double R_;
  std::vector<double> edges_;
  std::vector<double> node_r_;
  std::vector<double> node_theta_;
  std::vector<double> norms_;
};

OrbitGrid orbit_profile(const LpSpace& space, const SectorFunction& f, double R,
                        const OrbitOptions& options = {}, Execution exec = Execution::serial);

enum class Side { super, sub };

/// Level sets {t : ||T_t f|| >= threshold} (super) or {... < threshold} (sub),
/// read off the grid by nearest node.
struct LevelSetProfile {
  double threshold = 0.0;
  Side side = Side::super;
  DensityProfile profile;
  OracleSet set;
};

LevelSetProfile level_density(const OrbitGrid& grid, double threshold, Side side,
                              const RadiusSchedule& schedule);

struct PairDiagnostic {
  /// Sublevel density of ||T_t x - T_t y|| at epsilon.
  LevelSetProfile proximity;
  /// Superlevel density at delta.
  LevelSetProfile separation;
  DensityEstimate proximity_estimate;
  DensityEstimate separation_estimate;
  /// "consistent with" / "inconsistent with" a DC pair at these thresholds.
  std::string verdict;
};

PairDiagnostic pair_diagnostic(const LpSpace& space, const SectorFunction& x,
                               const SectorFunction& y, double epsilon, double delta, double R,
                               const RadiusSchedule& schedule, std::size_t window = 6,
                               const OrbitOptions& options = {},
                               Execution exec = Execution::serial);

struct UnboundednessReport {
  std::vector<double> thresholds;
  std::vector<double> upper_estimates;
  /// True iff every estimate exceeds 1 - tolerance.
  bool consistent = false;
};

UnboundednessReport unboundedness_diagnostic(const OrbitGrid& grid,
                                             const std::vector<double>& thresholds,
                                             const RadiusSchedule& schedule,
                                             std::size_t window = 6, double tolerance = 0.02);

/// Semi-irregularity surrogate: a sublevel set at epsilon of upper density
/// near 1 together with a superlevel set at delta of upper density near 1,
/// on which the tail-band minimum of the norms stays positive.
struct IrregularityReport {
  double small_set_upper = 0.0;
  double large_set_upper = 0.0;
  /// Minimum norm over superlevel nodes in the tail band (liminf surrogate).
  double large_set_tail_min = 0.0;
  bool consistent = false;
};

IrregularityReport irregularity_diagnostic(const OrbitGrid& grid, double epsilon, double delta,
                                           const RadiusSchedule& schedule,
                                           std::size_t window = 6, double tolerance = 0.02);

/// CSV with columns t_r,t_theta,norm.
void write_grid_csv(std::ostream& out, const OrbitGrid& grid);

}  // namespace sectorlab
