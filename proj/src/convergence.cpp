#include "sectorlab/convergence.hpp"

#include <cmath>

#include "sectorlab/errors.hpp"

namespace sectorlab {
namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rss = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LineFit f;
  const double denom = n * sxx - sx * sx;
  f.slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
  f.intercept = (sy - f.slope * sx) / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    f.rss += r * r;
  }
  return f;
}

}  // namespace

std::string to_string(SeriesVerdict v) {
  switch (v) {
    case SeriesVerdict::convergent_trend: return "convergent-trend";
    case SeriesVerdict::divergent_trend: return "divergent-trend";
    case SeriesVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

TrendFit classify_increments(const std::vector<double>& indices,
                             const std::vector<double>& increments, const TrendRule& rule,
                             double index_density) {
  if (indices.size() != increments.size()) {
    throw DomainError("indices and increments differ in length");
  }
  TrendFit fit;
  const std::size_t n = increments.size();
  if (n < 3) return fit;
  const std::size_t start = n > rule.window ? n - rule.window : 0;

  std::vector<double> k, lk, la;
  bool all_zero = true;
  for (std::size_t i = start; i < n; ++i) {
    if (increments[i] < 0.0 || !std::isfinite(increments[i])) {
      throw DomainError("increments must be finite and nonnegative");
    }
    if (increments[i] > 0.0) {
      all_zero = false;
      if (indices[i] >= 1.0) {
        k.push_back(indices[i]);
        lk.push_back(std::log(indices[i]));
        la.push_back(std::log(increments[i]));
      }
    }
  }
  if (all_zero) {
    fit.verdict = SeriesVerdict::convergent_trend;
    fit.tail = 0.0;
    return fit;
  }
  if (k.size() < 3) {
    if (increments.back() == 0.0) {
      fit.verdict = SeriesVerdict::convergent_trend;
      fit.tail = 0.0;
    }
    return fit;
  }

  const LineFit geo = least_squares(k, la);
  const LineFit pow = least_squares(lk, la);
  fit.ratio = std::exp(geo.slope);
  fit.slope = pow.slope;

  if (fit.ratio >= 1.0 || fit.slope >= rule.divergent_slope) {
    fit.verdict = SeriesVerdict::divergent_trend;
    return fit;
  }
  if (fit.ratio <= rule.geometric_ratio || fit.slope <= rule.convergent_slope) {
    fit.verdict = SeriesVerdict::convergent_trend;
  } else {
    return fit;
  }

  const double last = increments.back();
  const double k_last = indices.back();
  const double spacing = index_density > 0.0 ? 1.0 / index_density : 1.0;
  const bool geometric_model = geo.rss <= pow.rss ? fit.ratio < 1.0 : !(fit.slope < -1.0);
  if (geometric_model) {
    const double step = std::pow(fit.ratio, spacing);
    fit.tail = last * step / (1.0 - step);
  } else {
    const double s = fit.slope;
    const double c = last / std::pow(k_last, s);
    fit.tail = index_density * c * std::pow(k_last + 0.5 * spacing, s + 1.0) / (-s - 1.0);
  }
  return fit;
}

}  // namespace sectorlab
