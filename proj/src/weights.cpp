#include "sectorlab/weights.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "sectorlab/errors.hpp"

namespace sectorlab {

std::string to_string(WeightFamily f) {
  switch (f) {
    case WeightFamily::exp_decay: return "exp_decay";
    case WeightFamily::poly_decay: return "poly_decay";
    case WeightFamily::vertical_exp: return "vertical_exp";
    case WeightFamily::constant: return "constant";
    case WeightFamily::custom: return "custom";
  }
  return "custom";
}

WeightFamily weight_family_from_string(const std::string& name) {
  if (name == "exp_decay") return WeightFamily::exp_decay;
  if (name == "poly_decay") return WeightFamily::poly_decay;
  if (name == "vertical_exp") return WeightFamily::vertical_exp;
  if (name == "constant") return WeightFamily::constant;
  if (name == "custom") return WeightFamily::custom;
  throw DomainError("unknown weight family: " + name);
}

Weight::Weight(Evaluator e, std::optional<Certificate> c, WeightFamily fam, std::string name,
               TailModel tail)
    : evaluator_(std::move(e)),
      certificate_(c),
      family_(fam),
      name_(std::move(name)),
      tail_(tail) {
  if (!evaluator_) throw DomainError("weight needs an evaluator");
  if (certificate_ && !(certificate_->M >= 1.0)) {
    throw DomainError("certificate needs M >= 1");
  }
}

Weight Weight::exp_decay() {
  return Weight([](Complex t) { return std::exp(-std::abs(t)); }, Certificate{1.0, 1.0},
                WeightFamily::exp_decay, "exp_decay", TailModel::exp);
}

Weight Weight::poly_decay() {
  return Weight(
      [](Complex t) {
        const double r2 = std::norm(t);
        return 1.0 / (r2 * r2 + 1.0);
      },
      std::nullopt, WeightFamily::poly_decay, "poly_decay", TailModel::power);
}

Weight Weight::vertical_exp() {
  return Weight([](Complex t) { return std::exp(2.0 * t.imag()); }, Certificate{1.0, 2.0},
                WeightFamily::vertical_exp, "vertical_exp", TailModel::exp);
}

Weight Weight::constant(double c) {
  if (!(c > 0.0)) throw InvalidWeightError("constant weight must be positive");
  return Weight([c](Complex) { return c; }, Certificate{1.0, 0.0}, WeightFamily::constant,
                "constant", TailModel::none);
}

Weight Weight::custom(Evaluator evaluator, std::optional<Certificate> certificate,
                      std::string name, TailModel tail) {
  return Weight(std::move(evaluator), certificate, WeightFamily::custom, std::move(name), tail);
}

Weight Weight::with_certificate(std::optional<Certificate> c) const {
  return Weight(evaluator_, c, family_, name_, tail_);
}

double Weight::operator()(Complex t) const {
  const double v = evaluator_(t);
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidWeightError("weight " + name_ + " is not positive and finite at a sample point");
  }
  return v;
}

double Weight::sample(Complex t) const {
  const double v = evaluator_(t);
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw InvalidWeightError("weight " + name_ + " is negative or not finite at a sample point");
  }
  return v;
}

AdmissibilityReport admissibility_check(const Weight& v, const Sector& sector, double M,
                                        double w, const PairSampling& sample, Execution exec) {
  if (!(M >= 1.0)) throw DomainError("admissibility check needs M >= 1");
  const double alpha = sector.alpha();

  std::vector<Complex> grid;
  for (int i = 0; i < sample.grid_radial; ++i) {
    const double r =
        sample.grid_radial == 1 ? 0.0 : sample.radius * i / (sample.grid_radial - 1);
    for (int j = 0; j < sample.grid_angular; ++j) {
      const double th =
          sample.grid_angular == 1 ? 0.0 : -alpha + 2.0 * alpha * j / (sample.grid_angular - 1);
      grid.push_back(std::polar(r, th));
    }
  }
  std::vector<std::pair<Complex, Complex>> pairs;
  for (const auto& t : grid) {
    for (const auto& tp : grid) pairs.emplace_back(t, tp);
  }
  std::mt19937_64 rng(sample.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto draw = [&] {
    const double r = sample.radius * std::sqrt(unif(rng));
    const double th = -alpha + 2.0 * alpha * unif(rng);
    return std::polar(r, th);
  };
  for (int k = 0; k < sample.random_pairs; ++k) {
    const Complex t = draw();
    const Complex tp = draw();
    pairs.emplace_back(t, tp);
  }

  auto ratios = detail::map_indexed<double>(pairs.size(), exec, [&](std::size_t i) {
    const auto& [t, tp] = pairs[i];
    return v(t) / (M * std::exp(w * std::abs(tp)) * v(t + tp));
  });

  AdmissibilityReport report;
  report.pairs_checked = pairs.size();
  report.worst_ratio = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (ratios[i] > report.worst_ratio) {
      report.worst_ratio = ratios[i];
      report.worst_t = pairs[i].first;
      report.worst_t_prime = pairs[i].second;
    }
    if (ratios[i] > 1.0 + kAdmissibilitySlack) {
      report.violations.push_back({pairs[i].first, pairs[i].second, ratios[i]});
    }
  }
  return report;
}

double weight_on_rect(const Weight& v, double r_lo, double r_hi, double th_lo, double th_hi,
                      const QuadratureOptions& quad) {
  return integrate_polar_rect([&v](Complex z) { return v.sample(z); }, r_lo, r_hi, th_lo, th_hi, quad)
      .value;
}

namespace {

double angular_profile(const Weight& v, double alpha, double rho, double rel_tol) {
  return integrate_1d([&](double phi) { return v.sample(std::polar(rho, phi)); }, -alpha, alpha,
                      rel_tol);
}

}  // namespace

WeightIntegral weight_integral(const Weight& v, const Sector& sector, double R, TailModel tail,
                               const QuadratureOptions& quad, Execution exec) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("weight integral needs 0 < R < inf");
  const double alpha = sector.alpha();
  const auto panels = static_cast<std::size_t>(std::ceil(R - 1e-12));

  auto parts = detail::map_indexed<double>(panels, exec, [&](std::size_t k) {
    const double lo = static_cast<double>(k);
    const double hi = std::min(lo + 1.0, R);
    return weight_on_rect(v, lo, hi, -alpha, alpha, quad);
  });

  WeightIntegral out;
  out.R = R;
  out.model = tail;
  out.truncated = detail::pairwise_sum(parts);
  std::vector<double> idx;
  for (std::size_t k = 0; k < panels; ++k) {
    if (static_cast<double>(k) + 1.0 <= R + 1e-12) {
      out.increments.push_back(parts[k]);
      idx.push_back(static_cast<double>(k));
    }
  }
  out.trend = classify_increments(idx, out.increments);

  if (out.trend.verdict == SeriesVerdict::divergent_trend) {
    out.tail = std::numeric_limits<double>::infinity();
    return out;
  }
  switch (tail) {
    case TailModel::none:
      out.tail = 0.0;
      break;
    case TailModel::exp: {
      const double j_hi = angular_profile(v, alpha, R, quad.rel_tol);
      const double j_lo = angular_profile(v, alpha, R - std::min(1.0, 0.5 * R), quad.rel_tol);
      const double lambda = std::log(j_lo / j_hi) / std::min(1.0, 0.5 * R);
      out.tail = lambda > 0.0 ? j_hi * (R / lambda + 1.0 / (lambda * lambda))
                              : std::numeric_limits<double>::infinity();
      break;
    }
    case TailModel::power: {
      const double j_hi = angular_profile(v, alpha, R, quad.rel_tol);
      const double j_lo = angular_profile(v, alpha, R / 1.1, quad.rel_tol);
      const double q = std::log(j_lo / j_hi) / std::log(1.1);
      out.tail =
          q > 2.0 ? j_hi * R * R / (q - 2.0) : std::numeric_limits<double>::infinity();
      break;
    }
  }
  return out;
}

std::pair<double, Complex> grid_minimum(const Weight& v, const Sector& sector, double R, int n_r,
                                        int n_theta) {
  if (!(R >= 0.0)) throw DomainError("grid minimum needs R >= 0");
  const double alpha = sector.alpha();
  double best = std::numeric_limits<double>::infinity();
  Complex arg{};
  for (int i = 0; i < n_r; ++i) {
    const double r = n_r == 1 ? R : R * i / (n_r - 1);
    for (int j = 0; j < n_theta; ++j) {
      const double th = n_theta == 1 ? 0.0 : -alpha + 2.0 * alpha * j / (n_theta - 1);
      const Complex z = std::polar(r, th);
      const double val = v(z);
      if (val < best) {
        best = val;
        arg = z;
      }
    }
  }
  return {best, arg};
}

LowerBound compact_lower_bound(const Weight& v, const Sector& sector, double R) {
  if (!v.certified()) {
    throw UnsupportedError("compact lower bound needs an admissibility certificate");
  }
  if (!(R >= 0.0)) throw DomainError("compact lower bound needs R >= 0");
  const auto& c = *v.certificate();
  LowerBound b;
  b.analytic = v(Complex{}) / (c.M * std::exp(c.w * R));
  const auto [m, z] = grid_minimum(v, sector, R);
  b.grid_min = m;
  b.grid_argmin = z;
  return b;
}

}  // namespace sectorlab
