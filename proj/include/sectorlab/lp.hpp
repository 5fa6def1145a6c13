#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sectorlab/geometry.hpp"
#include "sectorlab/quadrature.hpp"
#include "sectorlab/sets.hpp"
#include "sectorlab/weights.hpp"

namespace sectorlab {

/// X = L^p_v(Delta(alpha)), 1 <= p < infinity.
struct LpSpace {
  Weight weight;
  double p;
  Sector sector;

  LpSpace(Weight weight, double p, Sector sector);
};

enum class FunctionKind { zero, indicator, bump, combination, custom };

/// Element of X with a lazily accumulated translation offset tau:
/// evaluating at s reads base(s + tau). Translation only adds offsets, so
/// T_s T_t = T_{s+t} holds on the representation itself.
class SectorFunction {
 public:
  static SectorFunction zero();
  /// scale * 1_U.
  static SectorFunction indicator(RectUnionSet set, double scale = 1.0);
  /// amplitude * (1 - |u - center|^2 / radius^2)^2 inside the disc, else 0.
  static SectorFunction bump(Complex center, double radius, double amplitude = 1.0);
  /// Arbitrary evaluator, assumed smooth. `support_radius`: f(u) = 0 for
  /// |u| >= it.
  static SectorFunction custom(std::function<double(Complex)> f,
                               std::optional<double> support_radius,
                               std::string name = "custom");
  /// sum_j c_j f_j, evaluated in the given order.
  static SectorFunction combination(std::vector<std::pair<double, SectorFunction>> terms);

  /// x - y as the combination {(1, x), (-1, y)}; cancellation happens at
  /// evaluation.
  friend SectorFunction operator-(const SectorFunction& x, const SectorFunction& y);
  SectorFunction scaled(double c) const;

  double operator()(Complex s) const;

  FunctionKind kind() const;
  Complex offset() const { return offset_; }
  /// Every jump of f lies on one of these curves (in the coordinates of
  /// the argument s).
  void collect_boundaries(std::vector<Circle>& circles, std::vector<Ray>& rays) const;
  /// False only where f is known to vanish.
  bool maybe_nonzero(Complex s) const;
  /// f(s) = 0 for every s in the sector with |s| >= the returned radius.
  std::optional<double> support_radius(const Sector& sector) const;

 private:
  struct Node;
  SectorFunction(std::shared_ptr<const Node> node, Complex offset);

  double eval_at(Complex u) const;
  void collect_shifted(Complex shift, std::vector<Circle>& circles,
                       std::vector<Ray>& rays) const;
  bool maybe_nonzero_at(Complex u) const;

  std::shared_ptr<const Node> node_;
  Complex offset_{};

  friend SectorFunction translate_function(const SectorFunction&, const Sector&, SectorPoint);
};

/// T_t f. Throws DomainError if t is outside the sector.
SectorFunction translate_function(const SectorFunction& f, const Sector& sector, SectorPoint t);

struct NormResult {
  /// (integral over Delta_R of |f|^p v)^{1/p}.
  double value = 0.0;
  /// Remainder of the integral of |f|^p v beyond R (p-th power units):
  /// exactly zero past the support, otherwise extrapolated from the last
  /// unit annuli. Meaningful only when tail_known.
  double tail = 0.0;
  bool tail_known = true;
  double R = 0.0;
  /// Quadrature error estimate on value^p.
  double quadrature_error = 0.0;
};

/// Weighted L^p norm truncated at R. Integration stops at the support
/// radius when that is smaller than R (tail then exactly zero). Without a
/// support bound the unit-annulus increments of |f|^p v below R are
/// classified; a divergent trend raises NotInSpaceError.
NormResult lp_norm(const LpSpace& space, const SectorFunction& f, double R,
                   const QuadratureOptions& quad = {}, Execution exec = Execution::serial);

/// ||T_t f|| truncated at R.
double orbit_norm(const LpSpace& space, const SectorFunction& f, SectorPoint t, double R,
                  const QuadratureOptions& quad = {});

}  // namespace sectorlab
