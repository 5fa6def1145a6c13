// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "sectorlab/criteria.hpp"
#include "sectorlab/density.hpp"
#include "sectorlab/lp.hpp"
#include "sectorlab/sets.hpp"

using namespace sectorlab;
using std::numbers::pi;

namespace {

const Sector kS(pi / 4);
constexpr double kA = pi / 4;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = budget_s <= 0.0 || secs < budget_s;
  const bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::printf("%s %d %s: %s; %.2fs%s\n", ok ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs,
              in_time ? "" : " (over budget)");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

RadiusSchedule schedule_to(double h) {
  std::vector<double> r;
  for (double x = 1.0; x < h; x *= 1.25) r.push_back(x);
  r.push_back(h);
  return RadiusSchedule::from_radii(r);
}

SectorFunction random_function(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r1 = 3.0 * u(rng), r2 = r1 + 0.2 + 2.0 * u(rng);
  const double t1 = -kA + kA * u(rng), t2 = t1 + 0.1 + (kA - t1 - 0.1) * u(rng);
  const auto ind = SectorFunction::indicator(RectUnionSet(kS, {{r1, r2, t1, t2}}), 0.5 + u(rng));
  const auto bump = SectorFunction::bump(std::polar(1.0 + 3.0 * u(rng), (2 * u(rng) - 1) * kA),
                                         0.3 + u(rng), 1.0 + u(rng));
  return SectorFunction::combination({{1.0, ind}, {0.7 * (2 * u(rng) - 1), bump}});
}

// Bounded part inside Delta_30 plus one unbounded tail starting below 30:
// a full-angle annulus or an interior wedge no wider than 0.25. Keeps the
// O(|t0| / r) finite-horizon gap under 0.02 at r = 200 for |t0| <= 5.
RectUnionSet random_union(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<PolarRect> rects;
  const int n = 1 + static_cast<int>(4 * u(rng));
  for (int i = 0; i < n; ++i) {
    const double r_lo = 25.0 * u(rng);
    const double r_hi = std::min(30.0, r_lo + 0.5 + 10.0 * u(rng));
    const double a = -kA + 1.4 * kA * u(rng);
    const double b = std::min(kA, a + 0.05 + kA * u(rng));
    rects.push_back({r_lo, r_hi, a, b});
  }
  const double R0 = 30.0 * u(rng);
  if (u(rng) < 0.5) {
    rects.push_back({R0, 1e4, -kA, kA});
  } else {
    const double w = 0.05 + 0.2 * u(rng);
    const double a = -kA + 0.05 + (2 * kA - 0.1 - w) * u(rng);
    rects.push_back({R0, 1e4, a, a + w});
  }
  return RectUnionSet(kS, rects);
}

Outcome weight_integrals() {
  using clock = std::chrono::steady_clock;
  const auto c0 = clock::now();
  const auto e = weight_integral(Weight::exp_decay(), kS, 60.0, TailModel::exp);
  const auto c1 = clock::now();
  const auto p = weight_integral(Weight::poly_decay(), kS, 60.0, TailModel::power);
  const auto c2 = clock::now();
  const double te = std::chrono::duration<double>(c1 - c0).count();
  const double tp = std::chrono::duration<double>(c2 - c1).count();
  const double re = rel(e.value(), pi / 2), rp = rel(p.value(), pi * pi / 8);
  return {re <= 1e-6 && rp <= 1e-6 && te < 5.0 && tp < 5.0,
          fmt("exp rel err %.2e, poly rel err %.2e", re, rp) +
              fmt(" (%.2fs and %.2fs)", te, tp)};
}

Outcome ray_series() {
  const auto s = devaney_ray_series(Weight::vertical_exp(), kS, {2.0, -1.0}, 50);
  const double closed = std::exp(2.0) / (std::exp(2.0) - 1.0);
  const double err = std::abs(s.partial_sum() - closed);
  return {err <= 1e-12 && s.verdict() == SeriesVerdict::convergent_trend,
          fmt("partial sum %.15f, |error| %.2e", s.partial_sum(), err)};
}

Outcome translation_invariance() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto sched = schedule_to(200.0).with_integer_radii(200.0);
  double worst_gap = 0.0, worst_sandwich = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto A = random_union(rng);
    const auto t0 = SectorPoint::polar(kS, 5.0 * u(rng), (2 * u(rng) - 1) * kA);
    const double r0 = t0.r();
    const auto moved = translate_set(A, kS, t0.z(), Shift::minus);
    const auto pa = density_profile(A, kS, sched, {}, Execution::parallel);
    const auto pm = density_profile(moved, kS, sched, {}, Execution::parallel);
    const double gap = std::abs(density_estimates(pa, 6).upper - density_estimates(pm, 6).upper);
    worst_gap = std::max(worst_gap, gap);
    for (std::size_t i = 0; i < sched.size(); ++i) {
      const double r = sched.radii()[i];
      const double mid = pm.ratios[i] * kS.truncated_measure(r);
      const double hi = measure_in_truncation(A, kS, r + r0).value;
      const double lo = hi - kS.truncated_measure(r + r0) + kS.truncated_measure(r);
      worst_sandwich = std::max({worst_sandwich, mid - hi, lo - mid});
    }
  }
  return {worst_gap <= 0.02 && worst_sandwich <= 1e-3,
          fmt("max upper-density gap %.4f, max sandwich violation %.2e", worst_gap,
              worst_sandwich)};
}

Outcome witness() {
  const auto rep = run_example("exp-decay-dc", Execution::parallel);
  const auto& w = rep.details.at("witness");
  const double delta = std::sqrt(kA * std::exp(-2.0));
  const double samples = w.at("samples").get<double>();
  const double mn = w.at("min_norm").get<double>();
  const double sup = rep.details.at("superlevel").at("upper").get<double>();
  const bool ok = samples >= 500 && mn >= delta - 1e-4 && sup >= 0.98 &&
                  rel(w.at("delta").get<double>(), delta) <= 1e-12 && w.at("R") == 50.0;
  return {ok, fmt("%.0f samples, min norm %.4f vs delta %.4f", samples, mn, delta) +
                  fmt(", superlevel upper %.4f", sup)};
}

Outcome devaney_ceiling() {
  const auto rep = run_example("devaney-not-dc", Execution::parallel);
  const double sub = rep.details.at("sublevel").at("lower").get<double>();
  const double sup = rep.details.at("superlevel").at("upper").get<double>();
  const bool ray = rep.details.at("ray_series").at("verdict") == "convergent-trend";
  const bool dc = rep.details.at("dc_series").at("verdict") == "divergent-trend";
  const bool ok = sub >= 0.45 && sup <= 0.55 && ray && dc && rep.details.at("orbit_R") == 150.0;
  return {ok, fmt("sublevel lower %.4f, superlevel upper %.4f", sub, sup) +
                  (ray ? ", ray convergent" : ", ray NOT convergent") +
                  (dc ? ", annuli divergent" : ", annuli NOT divergent")};
}

Outcome growth_bound() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ur(0.0, 4.0), ut(-kA, kA);
  double worst = -INFINITY;
  int checked = 0;
  for (const auto& w : {Weight::exp_decay(), Weight::vertical_exp(), Weight::constant()}) {
    const auto c = *w.certificate();
    for (int k = 0; k < 100; ++k) {
      const double p = (k % 2 == 0) ? 1.0 : 2.0;
      const LpSpace X(w, p, kS);
      const auto f = random_function(rng);
      const auto t = SectorPoint::polar(kS, ur(rng), ut(rng));
      const double lhs = orbit_norm(X, f, t, 30.0);
      const double rhs =
          std::pow(c.M * std::exp(c.w * t.r()), 1.0 / p) * lp_norm(X, f, 30.0).value;
      worst = std::max(worst, lhs - rhs);
      ++checked;
    }
  }
  return {worst <= 1e-6, fmt("%.0f pairs, max(lhs - rhs) %.2e", checked, worst)};
}

Outcome semigroup() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ur(0.0, 5.0), ut(-kA, kA);
  const auto base = random_function(rng);
  int offset_mismatch = 0;
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const auto s = SectorPoint::polar(kS, ur(rng), ut(rng));
    const auto t = SectorPoint::polar(kS, ur(rng), ut(rng));
    const auto two = translate_function(translate_function(base, kS, s), kS, t);
    const auto one = translate_function(base, kS, s + t);
    if (two.offset() != one.offset()) ++offset_mismatch;
    const Complex z = std::polar(ur(rng), ut(rng));
    worst = std::max(worst, std::abs(two(z) - one(z)));
  }
  return {offset_mismatch == 0 && worst <= 1e-12,
          fmt("offset mismatches %.0f, max |eval diff| %.2e", offset_mismatch, worst)};
}

Outcome partition_oracle() {
  double worst = 0.0;
  for (const auto& w : {Weight::exp_decay(), Weight::poly_decay(), Weight::vertical_exp()}) {
    const auto series = dc_sufficient_series(w, kS, IntegerSet::naturals(), 60);
    const auto f = SectorFunction::indicator(annuli_union(IntegerSet::naturals(), 60, kS));
    const LpSpace X(w, 2.0, kS);
    const double n = lp_norm(X, f, 61.0).value;
    worst = std::max(worst, rel(n * n, series.partial_sum()));
  }
  return {worst <= 1e-10, fmt("max rel err %.2e over three weights", worst)};
}

Outcome density_bound() {
  struct Named {
    const char* name;
    IntegerSet K;
    std::function<bool(long)> member;
  };
  const std::vector<Named> sets{
      {"naturals", IntegerSet::naturals(), [](long) { return true; }},
      {"evens", IntegerSet::evens(), [](long k) { return k % 2 == 0; }},
      {"non-squares", IntegerSet::non_squares(),
       [](long k) {
         const long q = std::lround(std::sqrt(static_cast<double>(k)));
         return q * q != k;
       }}};
  double worst = INFINITY;
  for (const auto& s : sets) {
    for (long n : {10L, 50L, 100L}) {
      long count = 0;
      for (long k = 1; k <= n; ++k) count += s.member(k) ? 1 : 0;
      const double bound = std::pow(static_cast<double>(count) / n, 2);
      const auto A = annuli_union(s.K, n + 1, kS);
      const auto prof = density_profile(A, kS, RadiusSchedule::from_radii({double(n)}));
      worst = std::min(worst, prof.ratios[0] - bound);
    }
  }
  return {worst >= -1e-9, fmt("min(ratio - bound) %.4f over 9 cases", worst)};
}

}  // namespace

int main() {
  run(1, "weight integrals at R=60", 10.0, weight_integrals);
  run(2, "ray series along 2-i", 1.0, ray_series);
  run(3, "translation invariance and sandwich", 60.0, translation_invariance);
  run(4, "exp_decay witness, p=2, R=50", 120.0, witness);
  run(5, "vertical_exp level-set ceiling at R=150", 120.0, devaney_ceiling);
  run(6, "growth bound on certified weights", 30.0, growth_bound);
  run(7, "semigroup law on 10^4 triples", 0.0, semigroup);
  run(8, "partition oracle to k=60", 0.0, partition_oracle);
  run(9, "annuli density bound", 0.0, density_bound);
  return failures == 0 ? 0 : 1;
}
