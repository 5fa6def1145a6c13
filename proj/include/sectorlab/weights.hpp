#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sectorlab/convergence.hpp"
#include "sectorlab/geometry.hpp"
#include "sectorlab/parallel.hpp"
#include "sectorlab/quadrature.hpp"

namespace sectorlab {

/// Constants (M, w) with v(t) <= M e^{w|t'|} v(t + t') on the sector.
struct Certificate {
  double M = 1.0;
  double w = 0.0;
};

enum class WeightFamily { exp_decay, poly_decay, vertical_exp, constant, custom };

std::string to_string(WeightFamily f);
WeightFamily weight_family_from_string(const std::string& name);

enum class TailModel { none, exp, power };

/// Positive weight on the sector with an optional admissibility certificate.
/// Uncertified weights cannot be used by bound-dependent operations.
class Weight {
 public:
  using Evaluator = std::function<double(Complex)>;

  /// e^{-|t|}, certificate (1, 1).
  static Weight exp_decay();
  /// 1 / (|t|^4 + 1), uncertified.
  static Weight poly_decay();
  /// e^{2 Im t}, certificate (1, 2).
  static Weight vertical_exp();
  /// Constant c > 0, certificate (1, 0).
  static Weight constant(double c = 1.0);
  static Weight custom(Evaluator evaluator, std::optional<Certificate> certificate,
                       std::string name = "custom", TailModel tail = TailModel::none);

  /// Evaluates v(t); throws InvalidWeightError on a non-positive or
  /// non-finite value.
  double operator()(Complex t) const;
  double unchecked(Complex t) const { return evaluator_(t); }
  /// Quadrature sample: like operator() but accepts an exact zero, which
  /// is how decaying weights underflow far from the origin.
  double sample(Complex t) const;

  const std::optional<Certificate>& certificate() const { return certificate_; }
  bool certified() const { return certificate_.has_value(); }
  WeightFamily family() const { return family_; }
  const std::string& name() const { return name_; }
  TailModel default_tail() const { return tail_; }

  Weight with_certificate(std::optional<Certificate> c) const;

 private:
  Weight(Evaluator e, std::optional<Certificate> c, WeightFamily fam, std::string name,
         TailModel tail);

  Evaluator evaluator_;
  std::optional<Certificate> certificate_;
  WeightFamily family_;
  std::string name_;
  TailModel tail_;
};

/// Pair sampling for admissibility checks: a deterministic polar grid of
/// both t and t' plus seeded uniform random pairs in Delta_radius.
struct PairSampling {
  double radius = 6.0;
  int grid_radial = 8;
  int grid_angular = 5;
  int random_pairs = 10000;
  std::uint64_t seed = 42;
};

struct Violation {
  Complex t;
  Complex t_prime;
  /// v(t) / (M e^{w|t'|} v(t + t')).
  double ratio;
};

struct AdmissibilityReport {
  std::vector<Violation> violations;
  double worst_ratio = 0.0;
  Complex worst_t{};
  Complex worst_t_prime{};
  std::size_t pairs_checked = 0;
  bool ok() const { return violations.empty(); }
};

/// Relative slack allowed before a sample counts as a violation.
inline constexpr double kAdmissibilitySlack = 1e-12;

AdmissibilityReport admissibility_check(const Weight& v, const Sector& sector, double M,
                                        double w, const PairSampling& sample = {},
                                        Execution exec = Execution::serial);

struct WeightIntegral {
  /// Quadrature over Delta_R.
  double truncated = 0.0;
  /// Model remainder beyond R (upper bound under the declared model).
  double tail = 0.0;
  double R = 0.0;
  TailModel model = TailModel::none;
  TrendFit trend;
  /// Integral over each unit annulus [k, k+1] inside Delta_R.
  std::vector<double> increments;

  double value() const { return truncated + tail; }
};

/// Integral of v over the sector: quadrature on Delta_R in unit annuli plus
/// the remainder under `tail`. A divergent trend is reported, not thrown.
WeightIntegral weight_integral(const Weight& v, const Sector& sector, double R, TailModel tail,
                               const QuadratureOptions& quad = {},
                               Execution exec = Execution::serial);

/// Integral of v over the polar rectangle [r_lo, r_hi] x [th_lo, th_hi].
double weight_on_rect(const Weight& v, double r_lo, double r_hi, double th_lo, double th_hi,
                      const QuadratureOptions& quad = {});

struct LowerBound {
  /// v(0) / (M e^{w R}); guaranteed on the closed truncation.
  double analytic = 0.0;
  /// Minimum over a polar grid including the edges (tighter, heuristic).
  double grid_min = 0.0;
  Complex grid_argmin{};
};

/// Throws UnsupportedError if v carries no certificate.
LowerBound compact_lower_bound(const Weight& v, const Sector& sector, double R);

/// Minimum of v over an inclusive polar grid of the closed truncation.
std::pair<double, Complex> grid_minimum(const Weight& v, const Sector& sector, double R,
                                        int n_r = 129, int n_theta = 129);

}  // namespace sectorlab
