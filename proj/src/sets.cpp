#include "sectorlab/sets.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>

#include "sectorlab/errors.hpp"

namespace sectorlab {
namespace {

double polar_angle(Complex z) { return z == Complex{} ? 0.0 : std::arg(z); }

double clipped_sum(const std::vector<PolarRect>& rects, double r) {
  std::vector<double> parts;
  parts.reserve(rects.size());
  for (const auto& rect : rects) parts.push_back(rect.measure_below(r));
  return detail::pairwise_sum(parts);
}

std::string describe(Complex z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

}  // namespace

double PolarRect::measure_below(double r) const {
  if (r <= r_lo) return 0.0;
  const double top = std::min(r, r_hi);
  return (th_hi - th_lo) * (top * top - r_lo * r_lo) / 2.0;
}

bool PolarRect::contains(Complex z) const {
  const double rho = std::abs(z);
  if (rho < r_lo || rho >= r_hi) return false;
  const double th = polar_angle(z);
  return th >= th_lo - kAngleSlack && th <= th_hi + kAngleSlack;
}

RectUnionSet::RectUnionSet(const Sector& sector, std::vector<PolarRect> rects)
    : rects_(std::move(rects)) {
  for (const auto& r : rects_) {
    if (!(r.r_lo >= 0.0 && r.r_lo < r.r_hi && std::isfinite(r.r_hi))) {
      throw DomainError("polar rect needs 0 <= r_lo < r_hi < inf");
    }
    if (!(r.th_lo < r.th_hi && r.th_lo >= -sector.alpha() - kAngleSlack &&
          r.th_hi <= sector.alpha() + kAngleSlack)) {
      throw DomainError("polar rect angles must satisfy -alpha <= th_lo < th_hi <= alpha");
    }
  }
}

RectUnionSet RectUnionSet::unchecked(std::vector<PolarRect> rects) {
  RectUnionSet u;
  u.rects_ = std::move(rects);
  return u;
}

bool RectUnionSet::contains(Complex z) const {
  return std::any_of(rects_.begin(), rects_.end(),
                     [&](const PolarRect& r) { return r.contains(z); });
}

double RectUnionSet::total_measure() const {
  std::vector<double> parts;
  for (const auto& r : rects_) parts.push_back(r.measure());
  return detail::pairwise_sum(parts);
}

double RectUnionSet::max_radius() const {
  double m = 0.0;
  for (const auto& r : rects_) m = std::max(m, r.r_hi);
  return m;
}

RectUnionSet normalize(const RectUnionSet& u) {
  const auto& rects = u.rects();
  if (rects.empty()) return u;

  std::vector<double> cuts;
  for (const auto& r : rects) {
    cuts.push_back(r.th_lo);
    cuts.push_back(r.th_hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  using Intervals = std::vector<std::pair<double, double>>;
  struct Slab {
    double lo, hi;
    Intervals radial;
  };
  std::vector<Slab> slabs;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    Intervals iv;
    for (const auto& r : rects) {
      if (r.th_lo <= a && r.th_hi >= b) iv.emplace_back(r.r_lo, r.r_hi);
    }
    if (iv.empty()) continue;
    std::sort(iv.begin(), iv.end());
    Intervals merged{iv.front()};
    for (std::size_t k = 1; k < iv.size(); ++k) {
      if (iv[k].first <= merged.back().second) {
        merged.back().second = std::max(merged.back().second, iv[k].second);
      } else {
        merged.push_back(iv[k]);
      }
    }
    if (!slabs.empty() && slabs.back().hi == a && slabs.back().radial == merged) {
      slabs.back().hi = b;
    } else {
      slabs.push_back({a, b, std::move(merged)});
    }
  }

  // Pieces with the same radial interval in adjacent slabs join up; this
  // stays disjoint because within a slab the radial intervals are disjoint.
  std::vector<PolarRect> out;
  for (const auto& s : slabs) {
    for (const auto& [lo, hi] : s.radial) out.push_back({lo, hi, s.lo, s.hi});
  }
  std::sort(out.begin(), out.end(), [](const PolarRect& x, const PolarRect& y) {
    return std::tie(x.r_lo, x.r_hi, x.th_lo) < std::tie(y.r_lo, y.r_hi, y.th_lo);
  });
  std::vector<PolarRect> joined;
  for (const auto& r : out) {
    if (!joined.empty() && joined.back().r_lo == r.r_lo && joined.back().r_hi == r.r_hi &&
        joined.back().th_hi == r.th_lo) {
      joined.back().th_hi = r.th_hi;
    } else {
      joined.push_back(r);
    }
  }
  out = std::move(joined);
  std::sort(out.begin(), out.end(), [](const PolarRect& x, const PolarRect& y) {
    return std::tie(x.r_lo, x.th_lo, x.r_hi, x.th_hi) < std::tie(y.r_lo, y.th_lo, y.r_hi, y.th_hi);
  });
  return RectUnionSet::unchecked(std::move(out));
}

RectUnionSet annuli_union(const IntegerSet& K, std::int64_t k_max, const Sector& sector) {
  return annuli_union(K.members(0, k_max), sector);
}

RectUnionSet annuli_union(const std::vector<std::int64_t>& K, const Sector& sector) {
  std::vector<PolarRect> rects;
  for (auto k : K) {
    if (k < 0) throw DomainError("annulus index must be nonnegative");
    rects.push_back({static_cast<double>(k), static_cast<double>(k + 1), -sector.alpha(),
                     sector.alpha()});
  }
  return normalize(RectUnionSet(sector, std::move(rects)));
}

OracleSet::OracleSet(Membership membership, std::string description, Measure measure)
    : membership_(std::move(membership)),
      description_(std::move(description)),
      measure_(std::move(measure)) {
  if (!membership_) throw DomainError("oracle set needs a membership predicate");
}

bool set_contains(const SectorSet& set, Complex z) {
  return std::visit([&](const auto& s) { return s.contains(z); }, set);
}

MeasureEstimate grid_measure(const OracleSet::Membership& membership, const Sector& sector,
                             double r, const GridOptions& grid, Execution exec) {
  if (!(r > 0.0)) throw DomainError("measure needs r > 0");
  const double alpha = sector.alpha();
  const int n_r =
      std::clamp(static_cast<int>(std::ceil(1.0 / grid.rel_h)), 1, grid.max_radial_cells);
  const int n_t = std::clamp(static_cast<int>(std::ceil(2.0 * alpha / grid.rel_h)), 1,
                             grid.max_angular_cells);
  const double h_r = r / n_r;
  const double h_t = 2.0 * alpha / n_t;

  auto rows = detail::map_indexed<std::vector<char>>(
      static_cast<std::size_t>(n_r), exec, [&](std::size_t i) {
        std::vector<char> row(static_cast<std::size_t>(n_t));
        const double rho = (static_cast<double>(i) + 0.5) * h_r;
        for (int j = 0; j < n_t; ++j) {
          row[j] = membership(std::polar(rho, -alpha + (j + 0.5) * h_t)) ? 1 : 0;
        }
        return row;
      });

  std::vector<double> inside(n_r), boundary(n_r);
  for (int i = 0; i < n_r; ++i) {
    const double lo = i * h_r, hi = (i + 1) * h_r;
    const double area = h_t * (hi * hi - lo * lo) / 2.0;
    int count = 0, edge = 0;
    for (int j = 0; j < n_t; ++j) {
      const char m = rows[i][j];
      count += m;
      bool differs = false;
      if (j > 0 && rows[i][j - 1] != m) differs = true;
      if (j + 1 < n_t && rows[i][j + 1] != m) differs = true;
      if (i > 0 && rows[i - 1][j] != m) differs = true;
      if (i + 1 < n_r && rows[i + 1][j] != m) differs = true;
      edge += differs ? 1 : 0;
    }
    inside[i] = count * area;
    boundary[i] = edge * area;
  }
  return {detail::pairwise_sum(inside), detail::pairwise_sum(boundary)};
}

MeasureEstimate measure_in_truncation(const SectorSet& set, const Sector& sector, double r,
                                      const GridOptions& grid, Execution exec) {
  if (!(r > 0.0)) throw DomainError("measure needs r > 0");
  if (const auto* u = std::get_if<RectUnionSet>(&set)) {
    return {clipped_sum(normalize(*u).rects(), r), 0.0};
  }
  const auto& oracle = std::get<OracleSet>(set);
  if (oracle.has_structured_measure()) return oracle.structured_measure()(r);
  return grid_measure([&](Complex z) { return oracle.contains(z); }, sector, r, grid, exec);
}

OracleSet translate_set(const SectorSet& set, const Sector& sector, Complex t0, Shift direction,
                        const QuadratureOptions& quad) {
  if (!sector.contains(t0)) throw DomainError("translation vector must lie in the sector");

  const bool minus = direction == Shift::minus;
  std::string base_name = std::holds_alternative<RectUnionSet>(set)
                              ? "RectUnionSet"
                              : std::get<OracleSet>(set).description();
  std::string desc = base_name + (minus ? " translated by -" : " translated by +") + describe(t0);

  OracleSet::Membership membership;
  if (minus) {
    membership = [set, t0](Complex s) { return set_contains(set, s + t0); };
  } else {
    membership = [set, t0, sector](Complex s) {
      const Complex u = s - t0;
      return sector.contains(u) && set_contains(set, u);
    };
  }

  OracleSet::Measure measure;
  if (const auto* u = std::get_if<RectUnionSet>(&set); u && minus) {
    // The integrand does not depend on r here, so mu(. cap Delta_r) is a sum
    // of unit radial bands (cached; each band is computed the same way
    // whoever asks first) plus one partial band.
    struct Bands {
      std::mutex guard;
      std::vector<std::optional<MeasureEstimate>> done;
    };
    auto in = std::make_shared<ArcIntegrand>();
    auto rects = std::make_shared<const RectUnionSet>(normalize(*u));
    for (const auto& rect : rects->rects()) {
      if (rect.r_lo > 0.0) in->circles.push_back({-t0, rect.r_lo});
      in->circles.push_back({-t0, rect.r_hi});
      in->rays.push_back({-t0, rect.th_lo});
      in->rays.push_back({-t0, rect.th_hi});
    }
    in->value = [](Complex) { return 1.0; };
    in->active = [rects, t0](Complex s) { return rects->contains(s + t0); };
    auto bands = std::make_shared<Bands>();
    const double alpha = sector.alpha();
    measure = [in, rects, bands, alpha, quad](double r) -> MeasureEstimate {
      if (!(r > 0.0)) throw DomainError("measure needs r > 0");
      if (rects->empty()) return {0.0, 0.0};
      auto piece = [&](double lo, double hi) -> MeasureEstimate {
        const auto res = integrate_polar(*in, lo, hi, -alpha, alpha, quad);
        return {res.value, res.error_estimate + 1e-12 * res.value};
      };
      const auto whole = static_cast<std::size_t>(std::floor(r));
      std::vector<double> values, errors;
      for (std::size_t k = 0; k < whole; ++k) {
        std::optional<MeasureEstimate> band;
        {
          std::lock_guard<std::mutex> lock(bands->guard);
          if (bands->done.size() > k) band = bands->done[k];
        }
        if (!band) {
          band = piece(static_cast<double>(k), static_cast<double>(k + 1));
          std::lock_guard<std::mutex> lock(bands->guard);
          if (bands->done.size() <= k) bands->done.resize(k + 1);
          bands->done[k] = band;
        }
        values.push_back(band->value);
        errors.push_back(band->error);
      }
      if (r > static_cast<double>(whole)) {
        const auto rest = piece(static_cast<double>(whole), r);
        values.push_back(rest.value);
        errors.push_back(rest.error);
      }
      return {detail::pairwise_sum(values), detail::pairwise_sum(errors)};
    };
  } else if (const auto* u = std::get_if<RectUnionSet>(&set)) {
    const RectUnionSet rects = normalize(*u);
    const double alpha = sector.alpha();
    measure = [rects, t0, alpha, quad](double r) -> MeasureEstimate {
      if (!(r > 0.0)) throw DomainError("measure needs r > 0");
      // u in U with |u + t0| < r.
      ArcIntegrand in;
      in.value = [](Complex) { return 1.0; };
      for (const auto& rect : rects.rects()) {
        if (rect.r_lo > 0.0) in.circles.push_back({{0.0, 0.0}, rect.r_lo});
        in.circles.push_back({{0.0, 0.0}, rect.r_hi});
        in.rays.push_back({{0.0, 0.0}, rect.th_lo});
        in.rays.push_back({{0.0, 0.0}, rect.th_hi});
      }
      in.circles.push_back({-t0, r});
      in.active = [&rects, t0, r](Complex z) { return rects.contains(z) && std::abs(z + t0) < r; };
      const double rho_hi = std::min(rects.max_radius(), r + std::abs(t0));
      if (rects.empty() || rho_hi <= 0.0) return {0.0, 0.0};
      const auto res = integrate_polar(in, 0.0, rho_hi, -alpha, alpha, quad);
      return {res.value, res.error_estimate + 1e-12 * res.value};
    };
  }
  return OracleSet(std::move(membership), std::move(desc), std::move(measure));
}

}  // namespace sectorlab
