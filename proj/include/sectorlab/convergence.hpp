#pragma once

#include <optional>
#include <string>
#include <vector>

namespace sectorlab {

enum class SeriesVerdict { convergent_trend, divergent_trend, inconclusive };

std::string to_string(SeriesVerdict v);

/// Thresholds for classifying a sequence of nonnegative increments.
struct TrendRule {
  std::size_t window = 10;
  /// Geometric shrink factor per unit index at or below which the tail
  /// counts as convergent.
  double geometric_ratio = 0.9;
  /// Log-log slope at or below which algebraic decay counts as convergent.
  double convergent_slope = -1.5;
  /// Slope at or above which decay is too slow to be summable.
  double divergent_slope = -1.0;
};

struct TrendFit {
  SeriesVerdict verdict = SeriesVerdict::inconclusive;
  /// Per-unit geometric ratio fitted over the window.
  double ratio = 0.0;
  /// Log-log slope fitted over the window.
  double slope = 0.0;
  /// Extrapolated remainder beyond the last index, when convergent.
  std::optional<double> tail;
};

/// Classifies increments a_j attached to indices k_j (strictly increasing,
/// k_j >= 1 for the algebraic fit). `index_density` is the fraction of
/// integers that carry terms beyond the window, used for the remainder.
TrendFit classify_increments(const std::vector<double>& indices,
                             const std::vector<double>& increments, const TrendRule& rule = {},
                             double index_density = 1.0);

}  // namespace sectorlab
