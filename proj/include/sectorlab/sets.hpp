#pragma once

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "sectorlab/geometry.hpp"
#include "sectorlab/integer_set.hpp"
#include "sectorlab/parallel.hpp"
#include "sectorlab/quadrature.hpp"

namespace sectorlab {

/// [r_lo, r_hi) x [th_lo, th_hi] in polar coordinates.
struct PolarRect {
  double r_lo;
  double r_hi;
  double th_lo;
  double th_hi;

  double measure() const { return (th_hi - th_lo) * (r_hi * r_hi - r_lo * r_lo) / 2.0; }
  /// Measure of the part with modulus below r.
  double measure_below(double r) const;
  bool contains(Complex z) const;

  friend bool operator==(const PolarRect&, const PolarRect&) = default;
};

/// Finite union of polar rectangles inside a sector.
class RectUnionSet {
 public:
  RectUnionSet() = default;
  /// Validates every rect against the sector (0 <= r_lo < r_hi, angles in
  /// [-alpha, alpha], th_lo < th_hi).
  RectUnionSet(const Sector& sector, std::vector<PolarRect> rects);
  /// Rects already validated against their sector.
  static RectUnionSet unchecked(std::vector<PolarRect> rects);

  const std::vector<PolarRect>& rects() const { return rects_; }
  bool empty() const { return rects_.empty(); }
  bool contains(Complex z) const;
  /// Sum of member measures (the set measure once normalized).
  double total_measure() const;
  double max_radius() const;

  friend bool operator==(const RectUnionSet&, const RectUnionSet&) = default;

 private:
  std::vector<PolarRect> rects_;
};

/// Equal set up to measure zero with pairwise-disjoint members, ordered by
/// (r_lo, th_lo). Angular slabs with identical radial coverage are merged.
RectUnionSet normalize(const RectUnionSet& u);

/// Union of the closed annuli {k <= |t| <= k+1}, k in K intersect [0, k_max].
RectUnionSet annuli_union(const IntegerSet& K, std::int64_t k_max, const Sector& sector);
RectUnionSet annuli_union(const std::vector<std::int64_t>& K, const Sector& sector);

struct MeasureEstimate {
  double value = 0.0;
  /// Bound on |value - true measure|; zero for closed forms.
  double error = 0.0;
};

/// Midpoint polar grid for oracle-set measures. Radial step h_r = rel_h * r,
/// angular step h_theta = rel_h (radians), both capped by the cell counts.
struct GridOptions {
  double rel_h = 0.01;
  int max_radial_cells = 400;
  int max_angular_cells = 400;
};

/// Set given by a membership predicate. Optionally carries a structured
/// measure routine when one is available (e.g. for translates of rect
/// unions); otherwise measures are grid estimates.
class OracleSet {
 public:
  using Membership = std::function<bool(Complex)>;
  using Measure = std::function<MeasureEstimate(double r)>;

  OracleSet(Membership membership, std::string description, Measure measure = {});

  bool contains(Complex z) const { return membership_(z); }
  const std::string& description() const { return description_; }
  bool has_structured_measure() const { return static_cast<bool>(measure_); }
  const Measure& structured_measure() const { return measure_; }

 private:
  Membership membership_;
  std::string description_;
  Measure measure_;
};

using SectorSet = std::variant<RectUnionSet, OracleSet>;

bool set_contains(const SectorSet& set, Complex z);

/// mu(A intersect Delta_r). Closed form for rect unions; structured or grid
/// estimate (with error bound) for oracle sets.
MeasureEstimate measure_in_truncation(const SectorSet& set, const Sector& sector, double r,
                                      const GridOptions& grid = {},
                                      Execution exec = Execution::serial);

/// Midpoint-grid estimate regardless of any structured measure.
MeasureEstimate grid_measure(const OracleSet::Membership& membership, const Sector& sector,
                             double r, const GridOptions& grid = {},
                             Execution exec = Execution::serial);

enum class Shift { minus, plus };

/// A - t0 = {s : s + t0 in A} or A + t0 = {s : s - t0 in Delta, s - t0 in A}.
OracleSet translate_set(const SectorSet& set, const Sector& sector, Complex t0, Shift direction,
                        const QuadratureOptions& quad = {});

}  // namespace sectorlab
