#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sectorlab/errors.hpp"
#include "sectorlab/sets.hpp"

using namespace sectorlab;
using std::numbers::pi;

namespace {

const Sector kS(pi / 4);
constexpr double kA = pi / 4;

RectUnionSet random_union(std::mt19937_64& rng, int n, double r_max) {
  std::uniform_real_distribution<double> ur(0.0, r_max), ut(-kA, kA);
  std::vector<PolarRect> rects;
  for (int i = 0; i < n; ++i) {
    double r1 = ur(rng), r2 = ur(rng), t1 = ut(rng), t2 = ut(rng);
    if (r1 > r2) std::swap(r1, r2);
    if (t1 > t2) std::swap(t1, t2);
    rects.push_back({r1, r2 + 0.1, t1, std::min(t2 + 0.05, kA)});
  }
  return RectUnionSet(kS, rects);
}

double counted(const SectorSet& set, double r) {
  return oracle::counted_measure([&](Complex z) { return set_contains(set, z); }, kA, r, 800, 400);
}

}  // namespace

TEST_SUITE("sets") {

TEST_CASE("polar rect validation") {
  CHECK_THROWS_AS(RectUnionSet(kS, {{2.0, 1.0, -0.1, 0.1}}), DomainError);
  CHECK_THROWS_AS(RectUnionSet(kS, {{-1.0, 1.0, -0.1, 0.1}}), DomainError);
  CHECK_THROWS_AS(RectUnionSet(kS, {{0.0, 1.0, 0.2, 0.1}}), DomainError);
  CHECK_THROWS_AS(RectUnionSet(kS, {{0.0, 1.0, -1.0, 0.1}}), DomainError);
  CHECK_NOTHROW(RectUnionSet(kS, {{0.0, 1.0, -kA, kA}}));
  const PolarRect r{1.0, 2.0, -kA, kA};
  CHECK(r.measure() == doctest::Approx(kA * 3.0));
}

TEST_CASE("normalize merges overlapping full-span rects (inclusion-exclusion oracle)") {
  const RectUnionSet u(kS, {{0, 2, -kA, kA}, {1, 3, -kA, kA}});
  const auto n = normalize(u);
  REQUIRE(n.rects().size() == 1);
  CHECK(n.rects()[0] == PolarRect{0, 3, -kA, kA});
  const double m1 = PolarRect{0, 2, -kA, kA}.measure();
  const double m2 = PolarRect{1, 3, -kA, kA}.measure();
  const double m12 = PolarRect{1, 2, -kA, kA}.measure();
  CHECK(n.total_measure() == doctest::Approx(m1 + m2 - m12).epsilon(1e-15));
}

TEST_CASE("normalize: empty, disjoint input, idempotence") {
  CHECK(normalize(RectUnionSet{}).empty());
  const RectUnionSet d(kS, {{3, 4, -kA, kA}, {0, 1, -0.2, 0.3}});
  const auto n = normalize(d);
  REQUIRE(n.rects().size() == 2);
  CHECK(n.rects()[0] == PolarRect{0, 1, -0.2, 0.3});
  CHECK(n.rects()[1] == PolarRect{3, 4, -kA, kA});
  CHECK(normalize(n) == n);
}

TEST_CASE("normalize preserves measure and membership on random unions") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ur(0.0, 6.0), ut(-kA, kA);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = random_union(rng, 6, 5.0);
    const auto n = normalize(u);
    CHECK(normalize(n) == n);
    for (std::size_t i = 0; i < n.rects().size(); ++i) {
      for (std::size_t j = i + 1; j < n.rects().size(); ++j) {
        const auto& a = n.rects()[i];
        const auto& b = n.rects()[j];
        const bool overlap = a.r_lo < b.r_hi && b.r_lo < a.r_hi && a.th_lo < b.th_hi &&
                             b.th_lo < a.th_hi;
        CHECK_FALSE(overlap);
      }
    }
    for (int k = 0; k < 300; ++k) {
      const Complex z = std::polar(ur(rng), ut(rng));
      CHECK(u.contains(z) == n.contains(z));
    }
    const double grid = counted(u, 6.0);
    CHECK(n.total_measure() == doctest::Approx(grid).epsilon(0.01));
  }
}

TEST_CASE("measure_in_truncation closed form") {
  const RectUnionSet a(kS, {{1, 2, -kA, kA}});
  const auto m = measure_in_truncation(a, kS, 1.5);
  CHECK(m.value == doctest::Approx(kA * 1.25).epsilon(1e-15));
  CHECK(m.error == 0.0);
  const double quad = oracle::polar_midpoint([](Complex) { return 1.0; }, 1.0, 1.5, -kA, kA, 50, 4);
  CHECK(m.value == doctest::Approx(quad).epsilon(1e-12));
  CHECK(measure_in_truncation(RectUnionSet{}, kS, 3.0).value == 0.0);
  CHECK_THROWS_AS(measure_in_truncation(a, kS, 0.0), DomainError);
}

TEST_CASE("full sector as an oracle set") {
  const OracleSet full([](Complex) { return true; }, "full sector");
  const auto m = measure_in_truncation(full, kS, 2.0);
  CHECK(std::abs(m.value - 4.0 * kA) <= m.error + 1e-12);
  CHECK(m.value == doctest::Approx(4.0 * kA).epsilon(1e-9));
}

TEST_CASE("grid measure error bound is honest") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto u = random_union(rng, 4, 4.0);
    for (double r : {1.0, 2.5, 4.5}) {
      const auto g = grid_measure([&](Complex z) { return u.contains(z); }, kS, r);
      const double exact = measure_in_truncation(u, kS, r).value;
      CHECK(std::abs(g.value - exact) <= g.error + 1e-12);
    }
  }
}

TEST_CASE("measure is monotone in r and in inclusion") {
  std::mt19937_64 rng(9);
  const auto u = random_union(rng, 5, 8.0);
  std::vector<PolarRect> bigger = u.rects();
  bigger.push_back({2.0, 3.0, -kA, kA});
  const RectUnionSet v(kS, bigger);
  double prev = 0.0;
  for (double r = 0.5; r < 10.0; r += 0.5) {
    const double mu = measure_in_truncation(u, kS, r).value;
    CHECK(mu >= prev);
    CHECK(measure_in_truncation(v, kS, r).value >= mu - 1e-12);
    prev = mu;
  }
}

TEST_CASE("translate_set membership") {
  const RectUnionSet a(kS, {{2, 3, -kA, kA}});
  const auto minus = translate_set(a, kS, {1.0, 0.0}, Shift::minus);
  CHECK(minus.contains({1.5, 0.0}));
  CHECK_FALSE(minus.contains({0.5, 0.0}));
  CHECK_THROWS_AS(translate_set(a, kS, {0.0, 1.0}, Shift::minus), DomainError);

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ur(0.0, 8.0), ut(-kA, kA);
  const auto u = random_union(rng, 5, 6.0);
  const Complex t0 = std::polar(2.0, 0.3);
  const auto plus = translate_set(u, kS, t0, Shift::plus);
  const auto back = translate_set(plus, kS, t0, Shift::minus);
  for (int k = 0; k < 2000; ++k) {
    const Complex z = std::polar(ur(rng), ut(rng));
    CHECK(back.contains(z) == u.contains(z));
    CHECK(plus.contains(z) == (kS.contains(z - t0) && u.contains(z - t0)));
  }
}

TEST_CASE("translated measures agree with a counting oracle") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 4; ++trial) {
    const auto u = random_union(rng, 4, 5.0);
    const Complex t0 = std::polar(1.5, -0.4 + 0.2 * trial);
    for (auto dir : {Shift::minus, Shift::plus}) {
      const auto t = translate_set(u, kS, t0, dir);
      REQUIRE(t.has_structured_measure());
      for (double r : {2.0, 5.0}) {
        const double structured = measure_in_truncation(t, kS, r).value;
        const auto grid = grid_measure([&](Complex z) { return t.contains(z); }, kS, r);
        CHECK(std::abs(structured - grid.value) <= grid.error + 1e-9);
      }
    }
  }
}

TEST_CASE("sandwich inequality for A - t0") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 6; ++trial) {
    const auto u = random_union(rng, 5, 12.0);
    const Complex t0 = std::polar(0.5 + trial, 0.7 * (trial % 3 - 1) * kA);
    const double r0 = std::abs(t0);
    const auto t = translate_set(u, kS, t0, Shift::minus);
    for (double r = 1.0; r < 15.0; r *= 1.3) {
      const double mid = measure_in_truncation(t, kS, r).value;
      const double hi = measure_in_truncation(u, kS, r + r0).value;
      const double lo = hi - kS.truncated_measure(r + r0) + kS.truncated_measure(r);
      CHECK(mid <= hi + 1e-9);
      CHECK(mid >= lo - 1e-9);
    }
  }
}

TEST_CASE("annuli_union examples") {
  const auto one = annuli_union(std::vector<std::int64_t>{0}, kS);
  REQUIRE(one.rects().size() == 1);
  CHECK(one.total_measure() == doctest::Approx(pi / 4).epsilon(1e-15));
  const auto two = annuli_union(std::vector<std::int64_t>{1, 2}, kS);
  REQUIRE(two.rects().size() == 1);
  CHECK(two.rects()[0] == PolarRect{1, 3, -kA, kA});
  CHECK(two.total_measure() == doctest::Approx(2 * pi).epsilon(1e-15));
  CHECK(annuli_union(std::vector<std::int64_t>{}, kS).empty());
  CHECK_THROWS_AS(annuli_union(std::vector<std::int64_t>{-1}, kS), DomainError);
  const auto evens = annuli_union(IntegerSet::evens(), 10, kS);
  CHECK(evens.rects().size() == 6);
}

}
