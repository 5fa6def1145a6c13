#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sectorlab/criteria.hpp"
#include "sectorlab/errors.hpp"
#include "sectorlab/lp.hpp"

using namespace sectorlab;
using std::numbers::pi;

namespace {

const Sector kS(pi / 4);
constexpr double kA = pi / 4;

SectorFunction unit_indicator() {
  return SectorFunction::indicator(RectUnionSet(kS, {{0.0, 1.0, -kA, kA}}));
}

SectorFunction random_function(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r1 = 3.0 * u(rng), r2 = r1 + 0.2 + 2.0 * u(rng);
  const double t1 = -kA + kA * u(rng), t2 = t1 + 0.1 + (kA - t1 - 0.1) * u(rng);
  const auto ind = SectorFunction::indicator(RectUnionSet(kS, {{r1, r2, t1, t2}}), 0.5 + u(rng));
  const auto bump = SectorFunction::bump(std::polar(1.0 + 3.0 * u(rng), (2 * u(rng) - 1) * kA),
                                         0.3 + u(rng), 1.0 + u(rng));
  return SectorFunction::combination({{1.0, ind}, {0.7, bump}});
}

}  // namespace

TEST_SUITE("lp") {

TEST_CASE("space validation") {
  CHECK_THROWS_AS(LpSpace(Weight::exp_decay(), 0.5, kS), DomainError);
  CHECK_THROWS_AS(LpSpace(Weight::exp_decay(), INFINITY, kS), DomainError);
  CHECK_NOTHROW(LpSpace(Weight::exp_decay(), 1.0, kS));
}

TEST_CASE("indicator of the unit truncation under exp_decay, p = 1") {
  const LpSpace X(Weight::exp_decay(), 1.0, kS);
  const auto n = lp_norm(X, unit_indicator(), 10.0);
  const double closed = (pi / 2) * (1.0 - 2.0 / std::exp(1.0));
  CHECK(n.value == doctest::Approx(closed).epsilon(1e-12));
  CHECK(n.value == doctest::Approx(0.41507).epsilon(1e-5));
  CHECK(n.tail == 0.0);
  CHECK(n.tail_known);
  const double quad = oracle::polar_midpoint(
      [](Complex z) { return std::exp(-std::abs(z)); }, 0.0, 1.0, -kA, kA, 2000, 4);
  CHECK(n.value == doctest::Approx(quad).epsilon(1e-6));
}

TEST_CASE("zero function has zero norm") {
  for (double p : {1.0, 2.0, 3.5}) {
    const LpSpace X(Weight::vertical_exp(), p, kS);
    CHECK(lp_norm(X, SectorFunction::zero(), 50.0).value == 0.0);
  }
}

TEST_CASE("annuli indicator norm equals the series partial sum") {
  for (const auto& w : {Weight::exp_decay(), Weight::poly_decay(), Weight::vertical_exp()}) {
    const LpSpace X(w, 2.0, kS);
    const auto f = SectorFunction::indicator(annuli_union(IntegerSet::evens(), 12, kS));
    const auto series = dc_sufficient_series(w, kS, IntegerSet::evens(), 12);
    const double np = std::pow(lp_norm(X, f, 20.0).value, 2.0);
    CHECK(np == doctest::Approx(series.partial_sum()).epsilon(1e-10));
  }
}

TEST_CASE("translation: semigroup law, identity, bad offsets") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> ur(0.0, 3.0), ut(-kA, kA);
  const auto f = random_function(rng);
  const auto s = SectorPoint::polar(kS, 1.2, 0.3);
  const auto t = SectorPoint::polar(kS, 0.7, -0.5);
  const auto two = translate_function(translate_function(f, kS, s), kS, t);
  const auto one = translate_function(f, kS, s + t);
  CHECK(two.offset() == one.offset());
  const auto id = translate_function(f, kS, SectorPoint());
  for (int k = 0; k < 500; ++k) {
    const Complex z = std::polar(ur(rng), ut(rng));
    CHECK(two(z) == one(z));
    CHECK(id(z) == f(z));
    CHECK(one(z) == f(z + (s.z() + t.z())));
  }
  CHECK_THROWS_AS(translate_function(f, kS, SectorPoint::cartesian(Sector(1.2), {0.1, 0.2})),
                  DomainError);
}

TEST_CASE("support escape for alpha <= pi/4") {
  const auto f = unit_indicator();
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ur(0.0, 5.0), ut(-kA, kA);
  for (double th : {-kA, -0.3, 0.0, 0.5, kA}) {
    const auto g = translate_function(f, kS, SectorPoint::polar(kS, 2.0, th));
    for (int k = 0; k < 200; ++k) CHECK(g(std::polar(ur(rng), ut(rng))) == 0.0);
    CHECK(g.support_radius(kS).value() == 0.0);
    const LpSpace X(Weight::vertical_exp(), 1.0, kS);
    CHECK(orbit_norm(X, f, SectorPoint::polar(kS, 2.0, th), 10.0) == 0.0);
  }
}

TEST_CASE("orbit norms: t = 0 and far translates of a bump") {
  const LpSpace X(Weight::vertical_exp(), 2.0, kS);
  const auto bump = SectorFunction::bump({0.5, 0.1}, 0.4);
  CHECK(orbit_norm(X, bump, SectorPoint(), 10.0) == lp_norm(X, bump, 10.0).value);
  CHECK(orbit_norm(X, bump, SectorPoint::polar(kS, 5.0, kA), 10.0) == 0.0);
}

TEST_CASE("growth bound on random (f, t)") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> ur(0.0, 4.0), ut(-kA, kA);
  for (const auto& w : {Weight::exp_decay(), Weight::vertical_exp()}) {
    const auto c = *w.certificate();
    for (double p : {1.0, 2.0}) {
      const LpSpace X(w, p, kS);
      for (int k = 0; k < 6; ++k) {
        const auto f = random_function(rng);
        const auto t = SectorPoint::polar(kS, ur(rng), ut(rng));
        const double lhs = orbit_norm(X, f, t, 30.0);
        const double rhs = std::pow(c.M * std::exp(c.w * t.r()), 1.0 / p) * lp_norm(X, f, 30.0).value;
        CHECK(lhs <= rhs + 1e-6);
      }
    }
  }
}

TEST_CASE("homogeneity and triangle inequality") {
  std::mt19937_64 rng(41);
  const LpSpace X(Weight::exp_decay(), 2.0, kS);
  for (int k = 0; k < 5; ++k) {
    const auto f = random_function(rng);
    const auto g = random_function(rng);
    const double nf = lp_norm(X, f, 20.0).value;
    const double ng = lp_norm(X, g, 20.0).value;
    CHECK(lp_norm(X, f.scaled(-3.0), 20.0).value == doctest::Approx(3.0 * nf).epsilon(1e-12));
    const auto sum = SectorFunction::combination({{1.0, f}, {1.0, g}});
    CHECK(lp_norm(X, sum, 20.0).value <= nf + ng + 1e-9);
    CHECK(lp_norm(X, f - f, 20.0).value == 0.0);
  }
}

TEST_CASE("functions outside X and evaluation failures") {
  const LpSpace X(Weight::constant(), 1.0, kS);
  const auto one = SectorFunction::custom([](Complex) { return 1.0; }, std::nullopt, "one");
  CHECK_THROWS_AS(lp_norm(X, one, 40.0), NotInSpaceError);
  const auto bad = SectorFunction::custom([](Complex) { return INFINITY; }, 2.0, "inf");
  CHECK_THROWS_AS(lp_norm(X, bad, 5.0), EvaluationError);
  CHECK_THROWS_AS(lp_norm(X, unit_indicator(), 0.0), DomainError);
}

TEST_CASE("smooth function without a support bound: tail is extrapolated") {
  const LpSpace X(Weight::exp_decay(), 1.0, kS);
  const auto g = SectorFunction::custom([](Complex z) { return 1.0 / (1.0 + std::norm(z)); },
                                        std::nullopt, "lorentz");
  const auto n = lp_norm(X, g, 40.0);
  CHECK(n.R == 40.0);
  CHECK(n.tail_known);
  CHECK(n.tail >= 0.0);
  CHECK(n.tail < 1e-12);
}

TEST_CASE("normalized indicators keep their boundaries") {
  const auto f = SectorFunction::indicator(annuli_union(std::vector<std::int64_t>{1, 3}, kS));
  std::vector<Circle> circles;
  std::vector<Ray> rays;
  translate_function(f, kS, SectorPoint::polar(kS, 1.0, 0.2)).collect_boundaries(circles, rays);
  CHECK(circles.size() == 4);
  CHECK(rays.size() == 4);
  CHECK(std::abs(circles[0].center + std::polar(1.0, 0.2)) < 1e-15);
}

}
