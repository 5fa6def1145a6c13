#include "sectorlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <ostream>

#include "sectorlab/errors.hpp"

namespace sectorlab {

OrbitGrid::OrbitGrid(const Sector& sector, double R, const GridResolution& res)
    : sector_(sector), R_(R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("orbit grid needs 0 < R < inf");
  if (res.n_r < 1 || res.n_theta < 1) throw DomainError("orbit grid needs positive cell counts");
  if (res.n_r > 1 && !(res.r_min > 0.0 && res.r_min < R)) {
    throw DomainError("orbit grid needs 0 < r_min < R");
  }
  edges_.push_back(0.0);
  if (res.n_r > 1) {
    const double q = std::pow(R / res.r_min, 1.0 / (res.n_r - 1));
    for (int k = 1; k < res.n_r; ++k) edges_.push_back(res.r_min * std::pow(q, k - 1));
  }
  edges_.push_back(R);
  for (int i = 0; i < res.n_r; ++i) node_r_.push_back(0.5 * (edges_[i] + edges_[i + 1]));
  const double h = 2.0 * sector.alpha() / res.n_theta;
  for (int j = 0; j < res.n_theta; ++j) node_theta_.push_back(-sector.alpha() + (j + 0.5) * h);
  norms_.assign(static_cast<std::size_t>(res.n_r) * res.n_theta, 0.0);
}

double OrbitGrid::cell_measure_below(int i, double r) const {
  const double lo = edges_[i];
  if (r <= lo) return 0.0;
  const double hi = std::min(r, edges_[i + 1]);
  const double h = 2.0 * sector_.alpha() / n_theta();
  return h * (hi * hi - lo * lo) / 2.0;
}

std::optional<std::pair<int, int>> OrbitGrid::locate(Complex z) const {
  const double rho = std::abs(z);
  if (rho >= R_ || !sector_.contains(z)) return std::nullopt;
  const int i = static_cast<int>(std::upper_bound(edges_.begin(), edges_.end(), rho) -
                                 edges_.begin()) -
                1;
  const double th = z == Complex{} ? 0.0 : std::arg(z);
  const double h = 2.0 * sector_.alpha() / n_theta();
  const int j = std::clamp(static_cast<int>(std::floor((th + sector_.alpha()) / h)), 0,
                           n_theta() - 1);
  return std::make_pair(std::clamp(i, 0, n_r() - 1), j);
}

OrbitGrid orbit_profile(const LpSpace& space, const SectorFunction& f, double R,
                        const OrbitOptions& options, Execution exec) {
  OrbitGrid grid(space.sector, R, options.resolution);
  const auto support = f.support_radius(space.sector);
  double inner = options.inner_R.value_or(support ? *support : R + 40.0);
  if (support && *support <= 0.0) return grid;
  if (!(inner > 0.0)) inner = 1.0;

  const int n_t = grid.n_theta();
  const std::size_t count = grid.norms().size();
  auto norms = detail::map_indexed<double>(count, exec, [&](std::size_t idx) {
    const int i = static_cast<int>(idx / n_t);
    const int j = static_cast<int>(idx % n_t);
    const auto t = SectorPoint::polar(space.sector, grid.node_r(i), grid.node_theta(j));
    return lp_norm(space, translate_function(f, space.sector, t), inner, options.quad).value;
  });
  grid.norms() = std::move(norms);
  return grid;
}

namespace {

struct LevelData {
  OrbitGrid grid;
  std::vector<char> flags;
  std::vector<char> boundary;
  std::vector<int> row_count;
  std::vector<int> row_boundary;

  MeasureEstimate measure(double r) const {
    std::vector<double> in(grid.n_r()), edge(grid.n_r());
    for (int i = 0; i < grid.n_r(); ++i) {
      const double cell = grid.cell_measure_below(i, r);
      in[i] = cell * row_count[i];
      edge[i] = cell * row_boundary[i];
    }
    return {detail::pairwise_sum(in), detail::pairwise_sum(edge)};
  }
};

std::shared_ptr<const LevelData> threshold_grid(const OrbitGrid& grid, double threshold,
                                                Side side) {
  auto data = std::make_shared<LevelData>(LevelData{grid, {}, {}, {}, {}});
  const int n_r = grid.n_r(), n_t = grid.n_theta();
  data->flags.resize(grid.norms().size());
  for (std::size_t k = 0; k < grid.norms().size(); ++k) {
    const double v = grid.norms()[k];
    data->flags[k] = (side == Side::super ? v >= threshold : v < threshold) ? 1 : 0;
  }
  data->boundary.assign(data->flags.size(), 0);
  data->row_count.assign(n_r, 0);
  data->row_boundary.assign(n_r, 0);
  for (int i = 0; i < n_r; ++i) {
    for (int j = 0; j < n_t; ++j) {
      const char m = data->flags[grid.index(i, j)];
      bool differs = false;
      if (j > 0 && data->flags[grid.index(i, j - 1)] != m) differs = true;
      if (j + 1 < n_t && data->flags[grid.index(i, j + 1)] != m) differs = true;
      if (i > 0 && data->flags[grid.index(i - 1, j)] != m) differs = true;
      if (i + 1 < n_r && data->flags[grid.index(i + 1, j)] != m) differs = true;
      data->boundary[grid.index(i, j)] = differs ? 1 : 0;
      data->row_count[i] += m;
      data->row_boundary[i] += differs ? 1 : 0;
    }
  }
  return data;
}

}  // namespace

LevelSetProfile level_density(const OrbitGrid& grid, double threshold, Side side,
                              const RadiusSchedule& schedule) {
  if (!(threshold > 0.0)) throw DomainError("level threshold must be positive");
  if (schedule.back() > grid.R() * (1.0 + 1e-12)) {
    throw DomainError("schedule exceeds the orbit grid radius");
  }
  auto data = threshold_grid(grid, threshold, side);

  DensityProfile profile;
  profile.radii = schedule.radii();
  for (double r : schedule.radii()) {
    const auto m = data->measure(r);
    const double whole = grid.sector().truncated_measure(r);
    profile.ratios.push_back(m.value / whole);
    profile.errors.push_back(m.error / whole);
  }

  std::string desc = std::string(side == Side::super ? "superlevel" : "sublevel") +
                     " set of orbit profile at " + std::to_string(threshold);
  OracleSet set(
      [data](Complex z) {
        const auto cell = data->grid.locate(z);
        return cell && data->flags[data->grid.index(cell->first, cell->second)] != 0;
      },
      std::move(desc), [data](double r) { return data->measure(r); });
  return {threshold, side, std::move(profile), std::move(set)};
}

PairDiagnostic pair_diagnostic(const LpSpace& space, const SectorFunction& x,
                               const SectorFunction& y, double epsilon, double delta, double R,
                               const RadiusSchedule& schedule, std::size_t window,
                               const OrbitOptions& options, Execution exec) {
  if (!(epsilon > 0.0) || !(delta > 0.0)) throw DomainError("pair thresholds must be positive");
  const OrbitGrid grid = orbit_profile(space, x - y, R, options, exec);
  auto prox = level_density(grid, epsilon, Side::sub, schedule);
  auto sep = level_density(grid, delta, Side::super, schedule);
  const auto pe = density_estimates(prox.profile, window);
  const auto se = density_estimates(sep.profile, window);

  constexpr double tol = 0.02;
  const bool proximal = pe.upper >= 1.0 - tol;
  const bool separated = se.upper >= 1.0 - tol;
  std::string verdict = std::string(proximal ? "consistent" : "inconsistent") +
                        " with proximality at eps; " +
                        (separated ? "consistent" : "inconsistent") +
                        " with separation at delta; " +
                        (proximal && separated ? "consistent" : "inconsistent") +
                        " with a distributionally chaotic pair (finite horizon)";
  return {std::move(prox), std::move(sep), pe, se, std::move(verdict)};
}

UnboundednessReport unboundedness_diagnostic(const OrbitGrid& grid,
                                             const std::vector<double>& thresholds,
                                             const RadiusSchedule& schedule, std::size_t window,
                                             double tolerance) {
  for (std::size_t i = 1; i < thresholds.size(); ++i) {
    if (!(thresholds[i] > thresholds[i - 1])) {
      throw DomainError("unboundedness thresholds must be increasing");
    }
  }
  UnboundednessReport report;
  report.thresholds = thresholds;
  report.consistent = !thresholds.empty();
  for (double m : thresholds) {
    const auto level = level_density(grid, m, Side::super, schedule);
    const double upper = density_estimates(level.profile, window).upper;
    report.upper_estimates.push_back(upper);
    if (upper < 1.0 - tolerance) report.consistent = false;
  }
  return report;
}

IrregularityReport irregularity_diagnostic(const OrbitGrid& grid, double epsilon, double delta,
                                           const RadiusSchedule& schedule, std::size_t window,
                                           double tolerance) {
  IrregularityReport r;
  r.small_set_upper =
      density_estimates(level_density(grid, epsilon, Side::sub, schedule).profile, window).upper;
  r.large_set_upper =
      density_estimates(level_density(grid, delta, Side::super, schedule).profile, window).upper;

  const auto& radii = schedule.radii();
  const double band_lo = radii[radii.size() - std::min(window, radii.size())];
  double tail_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.n_r(); ++i) {
    if (grid.node_r(i) < band_lo) continue;
    for (int j = 0; j < grid.n_theta(); ++j) {
      const double v = grid.norm(i, j);
      if (v >= delta) tail_min = std::min(tail_min, v);
    }
  }
  r.large_set_tail_min = std::isfinite(tail_min) ? tail_min : 0.0;
  r.consistent = r.small_set_upper >= 1.0 - tolerance && r.large_set_upper >= 1.0 - tolerance &&
                 r.large_set_tail_min > 0.0;
  return r;
}

void write_grid_csv(std::ostream& out, const OrbitGrid& grid) {
  out << "t_r,t_theta,norm\n";
  out.precision(17);
  for (int i = 0; i < grid.n_r(); ++i) {
    for (int j = 0; j < grid.n_theta(); ++j) {
      out << grid.node_r(i) << ',' << grid.node_theta(j) << ',' << grid.norm(i, j) << '\n';
    }
  }
}

}  // namespace sectorlab
