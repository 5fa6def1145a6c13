#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sectorlab/convergence.hpp"
#include "sectorlab/dynamics.hpp"
#include "sectorlab/integer_set.hpp"
#include "sectorlab/lp.hpp"
#include "sectorlab/weights.hpp"

namespace sectorlab {

struct SeriesReport {
  std::vector<std::int64_t> indices;
  std::vector<double> terms;
  std::vector<double> partial_sums;
  TrendFit trend;
  /// Partial sum plus extrapolated remainder, when convergent.
  std::optional<double> limit_estimate;

  SeriesVerdict verdict() const { return trend.verdict; }
  double partial_sum() const { return partial_sums.empty() ? 0.0 : partial_sums.back(); }
};

/// sum_{k in K, k <= k_max} integral of v over {k <= |t| <= k+1}. The
/// exponent p does not enter: the witness is an indicator.
SeriesReport dc_sufficient_series(const Weight& v, const Sector& sector, const IntegerSet& K,
                                  std::int64_t k_max, const QuadratureOptions& quad = {},
                                  Execution exec = Execution::serial);

enum class BoundProvenance { analytic_certificate, grid_minimum };

std::string to_string(BoundProvenance b);

struct WitnessPackage {
  /// Indicator of the annuli k in K, k <= k_max.
  SectorFunction f = SectorFunction::zero();
  /// (alpha * b)^{1/p} with b a lower bound for v on the closed Delta_2.
  double delta = 0.0;
  double bound = 0.0;
  BoundProvenance provenance = BoundProvenance::analytic_certificate;
  double grid_min = 0.0;
  std::int64_t k_max = 0;
  double p = 1.0;
  SeriesReport series;
};

/// Throws WitnessInvalidError when the series shows a divergent trend, and
/// UnsupportedError when v is uncertified and `allow_grid_fallback` is off.
WitnessPackage build_witness(const Weight& v, const Sector& sector, const IntegerSet& K, double p,
                             std::int64_t k_max, bool allow_grid_fallback = true,
                             const QuadratureOptions& quad = {},
                             Execution exec = Execution::serial);

struct WitnessSampling {
  /// Deterministic nodes per annulus (radial x angular).
  int grid_radial = 3;
  int grid_angular = 4;
  /// Seeded random samples, uniform by area over the annuli.
  int random_samples = 400;
  std::uint64_t seed = 42;
  /// Allowed shortfall below delta.
  double tolerance = 1e-4;
};

struct WitnessVerification {
  std::size_t samples = 0;
  double min_norm = 0.0;
  Complex argmin{};
  double delta = 0.0;
  bool pass = false;
};

/// Samples t over the union of {k-1 <= |t| <= k}, k in K cap [1, R], and
/// checks ||T_t f|| >= delta - tolerance at every sample.
WitnessVerification verify_witness(const LpSpace& space, const WitnessPackage& pkg,
                                   const IntegerSet& K, double R,
                                   const WitnessSampling& sampling = {},
                                   Execution exec = Execution::serial);

/// sum_{k=0}^{k_max} v(k t1). t1 must lie strictly inside the sector.
SeriesReport devaney_ray_series(const Weight& v, const Sector& sector, Complex t1,
                                std::int64_t k_max);

/// Outcome of one reproducer check.
struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string comparison;
  bool pass = false;
  std::string note;
};

struct ExampleReport {
  std::string id;
  std::vector<CheckResult> checks;
  nlohmann::json details;
  /// Named exports for CSV output.
  std::vector<std::pair<std::string, OrbitGrid>> grids;
  std::vector<std::pair<std::string, DensityProfile>> profiles;
  bool pass() const;
  nlohmann::json to_json() const;
};

/// Ids of the packaged reproducers.
std::vector<std::string> example_ids();

/// Runs a packaged reproducer from its versioned scenario. Throws
/// DomainError for unknown ids.
ExampleReport run_example(const std::string& id, Execution exec = Execution::serial);

/// Runs a reproducer from an explicit scenario document.
ExampleReport run_example(const std::string& id, const nlohmann::json& scenario,
                          Execution exec = Execution::serial);

}  // namespace sectorlab
