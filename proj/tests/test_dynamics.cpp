#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "sectorlab/criteria.hpp"
#include "sectorlab/dynamics.hpp"
#include "sectorlab/errors.hpp"

using namespace sectorlab;
using std::numbers::pi;

namespace {

const Sector kS(pi / 4);
constexpr double kA = pi / 4;

OrbitOptions coarse(int n_r, int n_t) {
  OrbitOptions o;
  o.resolution = {n_r, n_t, 0.05};
  return o;
}

RadiusSchedule schedule_to(double R) {
  std::vector<double> r;
  for (double x = 1.0; x < R; x *= 1.25) r.push_back(x);
  r.push_back(R);
  return RadiusSchedule::from_radii(r);
}

SectorFunction unit_indicator() {
  return SectorFunction::indicator(RectUnionSet(kS, {{0.0, 1.0, -kA, kA}}));
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("grid geometry") {
  const OrbitGrid g(kS, 10.0, {20, 4, 0.05});
  CHECK(g.n_r() == 20);
  CHECK(g.radial_edges().front() == 0.0);
  CHECK(g.radial_edges().back() == 10.0);
  double total = 0.0;
  for (int i = 0; i < g.n_r(); ++i) total += g.cell_measure_below(i, 10.0) * g.n_theta();
  CHECK(total == doctest::Approx(kS.truncated_measure(10.0)).epsilon(1e-12));
  const auto cell = g.locate(g.node(7, 2));
  REQUIRE(cell);
  CHECK(cell->first == 7);
  CHECK(cell->second == 2);
  CHECK_FALSE(g.locate({20.0, 0.0}));
  CHECK_THROWS_AS(OrbitGrid(kS, -1.0, {}), DomainError);
  CHECK_THROWS_AS(OrbitGrid(kS, 10.0, {0, 4, 0.05}), DomainError);
}

TEST_CASE("zero function gives an all-zero grid and empty superlevel sets") {
  const LpSpace X(Weight::exp_decay(), 1.0, kS);
  const auto g = orbit_profile(X, SectorFunction::zero(), 20.0, coarse(30, 6));
  for (double v : g.norms()) CHECK(v == 0.0);
  const auto lv = level_density(g, 0.3, Side::super, schedule_to(20.0));
  for (double r : lv.profile.ratios) CHECK(r == 0.0);
  const auto ub = unboundedness_diagnostic(g, {1.0, 10.0}, schedule_to(20.0));
  for (double u : ub.upper_estimates) CHECK(u == 0.0);
  CHECK_FALSE(ub.consistent);
}

TEST_CASE("exp_decay witness: every node in the annuli clears delta") {
  const auto pkg = build_witness(Weight::exp_decay(), kS, IntegerSet::naturals(), 2.0, 25);
  const LpSpace X(Weight::exp_decay(), 2.0, kS);
  const auto g = orbit_profile(X, pkg.f, 20.0, coarse(24, 6));
  double mn = INFINITY;
  for (double v : g.norms()) mn = std::min(mn, v);
  CHECK(mn >= pkg.delta);
  const auto lv = level_density(g, pkg.delta, Side::super, schedule_to(20.0));
  CHECK(density_estimates(lv.profile, 4).lower >= 0.98);
}

TEST_CASE("vertical_exp, indicator of the unit truncation: far nodes fall below eps") {
  const LpSpace X(Weight::vertical_exp(), 1.0, kS);
  const auto g = orbit_profile(X, unit_indicator(), 40.0, coarse(60, 16));
  for (int i = 0; i < g.n_r(); ++i) {
    for (int j = 0; j < g.n_theta(); ++j) {
      if (g.node_r(i) > 1.0) CHECK(g.norm(i, j) < 0.1);
    }
  }
  const auto sched = schedule_to(40.0);
  const auto sub = level_density(g, 0.1, Side::sub, sched);
  const auto sup = level_density(g, 0.1, Side::super, sched);
  CHECK(density_estimates(sub.profile, 6).lower >= 0.45);
  for (std::size_t i = 0; i < sub.profile.ratios.size(); ++i) {
    const double err = sub.profile.errors[i] + sup.profile.errors[i];
    CHECK(std::abs(sub.profile.ratios[i] + sup.profile.ratios[i] - 1.0) <= err + 1e-12);
  }
}

TEST_CASE("level_density validation and monotonicity in the threshold") {
  const LpSpace X(Weight::exp_decay(), 1.0, kS);
  const auto f = SectorFunction::bump({2.0, 0.3}, 1.5);
  const auto g = orbit_profile(X, f, 10.0, coarse(24, 8));
  const auto sched = schedule_to(10.0);
  CHECK_THROWS_AS(level_density(g, 0.0, Side::super, sched), DomainError);
  CHECK_THROWS_AS(level_density(g, 0.1, Side::super, schedule_to(20.0)), DomainError);
  const auto lo = level_density(g, 0.01, Side::super, sched);
  const auto hi = level_density(g, 0.05, Side::super, sched);
  const auto slo = level_density(g, 0.01, Side::sub, sched);
  const auto shi = level_density(g, 0.05, Side::sub, sched);
  for (std::size_t i = 0; i < sched.size(); ++i) {
    CHECK(hi.profile.ratios[i] <= lo.profile.ratios[i]);
    CHECK(shi.profile.ratios[i] >= slo.profile.ratios[i]);
  }
  // The level set carries the grid measure as a structured measure.
  CHECK(lo.set.has_structured_measure());
  const double r = sched.back();
  CHECK(measure_in_truncation(lo.set, kS, r).value / kS.truncated_measure(r) ==
        doctest::Approx(lo.profile.ratios.back()));
}

TEST_CASE("pair diagnostic: identical pair and symmetry") {
  const LpSpace X(Weight::exp_decay(), 1.0, kS);
  const auto x = SectorFunction::bump({1.5, 0.2}, 0.8);
  const auto y = SectorFunction::bump({3.0, -0.5}, 1.0, 2.0);
  const auto sched = schedule_to(15.0);
  const auto same = pair_diagnostic(X, x, x, 0.05, 0.05, 15.0, sched, 4, coarse(20, 6));
  for (double r : same.proximity.profile.ratios) CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
  for (double r : same.separation.profile.ratios) CHECK(r == 0.0);
  const auto xy = pair_diagnostic(X, x, y, 0.05, 0.05, 15.0, sched, 4, coarse(20, 6));
  const auto yx = pair_diagnostic(X, y, x, 0.05, 0.05, 15.0, sched, 4, coarse(20, 6));
  CHECK(xy.proximity.profile.ratios == yx.proximity.profile.ratios);
  CHECK(xy.separation.profile.ratios == yx.separation.profile.ratios);
  CHECK_THROWS_AS(pair_diagnostic(X, x, y, 0.0, 0.1, 15.0, sched), DomainError);
}

TEST_CASE("pair diagnostic: witness separation and compact proximity") {
  const LpSpace X(Weight::exp_decay(), 2.0, kS);
  const auto g = SectorFunction::bump({1.0, 0.0}, 0.5);
  const auto sched = schedule_to(20.0);
  const auto far = build_witness(Weight::exp_decay(), kS, IntegerSet::naturals(), 2.0, 25);
  const auto y1 = SectorFunction::combination({{1.0, g}, {1.0, far.f}});
  const auto sep = pair_diagnostic(X, g, y1, 0.01, 0.9 * far.delta, 20.0, sched, 4, coarse(24, 6));
  CHECK(sep.separation_estimate.upper >= 0.98);

  // Support of the difference ends at |t| = 3, so by r = 40 at most 9/1600
  // of the truncation can sit above eps.
  const auto near = build_witness(Weight::exp_decay(), kS, IntegerSet::naturals(), 2.0, 2);
  const auto y2 = SectorFunction::combination({{1.0, g}, {1.0, near.f}});
  const auto prox = pair_diagnostic(X, g, y2, 0.01, 0.9 * near.delta, 40.0, schedule_to(40.0), 4,
                                    coarse(40, 6));
  CHECK(prox.proximity_estimate.upper >= 0.98);
}

TEST_CASE("pair diagnostic: compact pair under vertical_exp") {
  const LpSpace X(Weight::vertical_exp(), 1.0, kS);
  const auto x = SectorFunction::bump({1.0, 0.2}, 0.6);
  const auto y = unit_indicator();
  const auto d = pair_diagnostic(X, x, y, 0.1, 0.1, 30.0, schedule_to(30.0), 4, coarse(40, 12));
  CHECK(d.proximity_estimate.lower >= 0.5);
  CHECK(d.separation_estimate.upper <= 0.5);
  CHECK(d.verdict.find("inconsistent with a distributionally chaotic pair") != std::string::npos);
}

TEST_CASE("separation estimate is stable under translating the pair") {
  const LpSpace X(Weight::exp_decay(), 2.0, kS);
  const auto pkg = build_witness(Weight::exp_decay(), kS, IntegerSet::naturals(), 2.0, 30);
  const auto sched = schedule_to(20.0);
  const auto base = pair_diagnostic(X, SectorFunction::zero(), pkg.f, 0.01, 0.9 * pkg.delta, 20.0,
                                    sched, 4, coarse(24, 6));
  const auto t0 = SectorPoint::polar(kS, 2.0, 0.3);
  const auto moved = pair_diagnostic(X, SectorFunction::zero(), translate_function(pkg.f, kS, t0),
                                     0.01, 0.9 * pkg.delta, 20.0, sched, 4, coarse(24, 6));
  CHECK(std::abs(base.separation_estimate.upper - moved.separation_estimate.upper) <= 0.02);
}

TEST_CASE("unboundedness diagnostic") {
  const LpSpace X(Weight::exp_decay(), 1.0, kS);
  const auto g = orbit_profile(X, SectorFunction::bump({2.0, 0.0}, 1.0), 20.0, coarse(24, 6));
  const auto rep = unboundedness_diagnostic(g, {0.5, 1.0, 5.0}, schedule_to(20.0), 4);
  for (double u : rep.upper_estimates) CHECK(u == 0.0);
  CHECK_FALSE(rep.consistent);
  CHECK_THROWS_AS(unboundedness_diagnostic(g, {2.0, 1.0}, schedule_to(20.0)), DomainError);
}

TEST_CASE("irregularity surrogate on a truncated witness") {
  const LpSpace X(Weight::exp_decay(), 2.0, kS);
  const auto pkg = build_witness(Weight::exp_decay(), kS, IntegerSet::naturals(), 2.0, 30);
  const auto g = orbit_profile(X, pkg.f, 20.0, coarse(24, 6));
  const auto rep = irregularity_diagnostic(g, 0.01, pkg.delta, schedule_to(20.0), 4);
  CHECK(rep.large_set_upper >= 0.98);
  CHECK(rep.large_set_tail_min >= pkg.delta);
  CHECK(rep.small_set_upper <= 0.02);
  CHECK_FALSE(rep.consistent);
}

TEST_CASE("grid CSV layout") {
  const LpSpace X(Weight::exp_decay(), 1.0, kS);
  const auto g = orbit_profile(X, SectorFunction::zero(), 1.0, coarse(2, 1));
  std::ostringstream s;
  write_grid_csv(s, g);
  const std::string text = s.str();
  CHECK(text.rfind("t_r,t_theta,norm\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}

}
