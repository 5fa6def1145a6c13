#include "sectorlab/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "sectorlab/errors.hpp"
#include "sectorlab/scenario.hpp"

namespace sectorlab {

SeriesReport dc_sufficient_series(const Weight& v, const Sector& sector, const IntegerSet& K,
                                  std::int64_t k_max, const QuadratureOptions& quad,
                                  Execution exec) {
  if (k_max < 0) throw DomainError("series horizon must be nonnegative");
  SeriesReport report;
  report.indices = K.members(0, k_max);
  const double alpha = sector.alpha();
  report.terms = detail::map_indexed<double>(report.indices.size(), exec, [&](std::size_t i) {
    const double k = static_cast<double>(report.indices[i]);
    return weight_on_rect(v, k, k + 1.0, -alpha, alpha, quad);
  });
  double sum = 0.0;
  for (double t : report.terms) {
    sum += t;
    report.partial_sums.push_back(sum);
  }

  const auto top = K.max_member();
  if (top && *top <= k_max) {
    // Finite index set: the series is a finite sum.
    report.trend.verdict = SeriesVerdict::convergent_trend;
    report.trend.tail = 0.0;
  } else {
    std::vector<double> idx(report.indices.begin(), report.indices.end());
    const double density =
        k_max >= 1 ? static_cast<double>(K.count_up_to(k_max)) / static_cast<double>(k_max)
                   : 1.0;
    report.trend = classify_increments(idx, report.terms, TrendRule{}, density);
  }
  if (report.trend.verdict == SeriesVerdict::convergent_trend && report.trend.tail) {
    report.limit_estimate = report.partial_sum() + *report.trend.tail;
  }
  return report;
}

std::string to_string(BoundProvenance b) {
  return b == BoundProvenance::analytic_certificate ? "analytic-certificate" : "grid-minimum";
}

WitnessPackage build_witness(const Weight& v, const Sector& sector, const IntegerSet& K, double p,
                             std::int64_t k_max, bool allow_grid_fallback,
                             const QuadratureOptions& quad, Execution exec) {
  if (!(p >= 1.0)) throw DomainError("witness needs p >= 1");
  WitnessPackage pkg;
  pkg.series = dc_sufficient_series(v, sector, K, k_max, quad, exec);
  if (pkg.series.verdict() == SeriesVerdict::divergent_trend) {
    throw WitnessInvalidError("annuli series diverges: the witness indicator is not in X");
  }
  pkg.grid_min = grid_minimum(v, sector, 2.0).first;
  if (v.certified()) {
    pkg.bound = compact_lower_bound(v, sector, 2.0).analytic;
    pkg.provenance = BoundProvenance::analytic_certificate;
  } else if (allow_grid_fallback) {
    pkg.bound = pkg.grid_min;
    pkg.provenance = BoundProvenance::grid_minimum;
  } else {
    throw UnsupportedError("uncertified weight and grid fallback disabled");
  }
  pkg.p = p;
  pkg.k_max = k_max;
  pkg.delta = std::pow(sector.alpha() * pkg.bound, 1.0 / p);
  pkg.f = SectorFunction::indicator(annuli_union(K, k_max, sector));
  return pkg;
}

WitnessVerification verify_witness(const LpSpace& space, const WitnessPackage& pkg,
                                   const IntegerSet& K, double R,
                                   const WitnessSampling& sampling, Execution exec) {
  if (!(R >= 3.0)) throw DomainError("witness verification needs R >= 3");
  const auto top = static_cast<std::int64_t>(std::floor(R));
  const auto ks = K.members(1, top);
  if (ks.empty()) throw DomainError("no annulus of K in [1, R] to sample");
  if (pkg.k_max < ks.back()) {
    throw DomainError("witness is truncated below the sampled annuli");
  }
  const Sector& sector = space.sector;
  const double alpha = sector.alpha();

  std::vector<Complex> samples;
  for (auto k : ks) {
    const double lo = static_cast<double>(k - 1);
    for (int a = 0; a < sampling.grid_radial; ++a) {
      const double rho =
          sampling.grid_radial == 1 ? lo + 0.5 : lo + static_cast<double>(a) / (sampling.grid_radial - 1);
      for (int b = 0; b < sampling.grid_angular; ++b) {
        const double th = sampling.grid_angular == 1
                              ? 0.0
                              : -alpha + 2.0 * alpha * b / (sampling.grid_angular - 1);
        samples.push_back(std::polar(rho, th));
      }
    }
  }
  std::vector<double> cumulative;
  double total = 0.0;
  for (auto k : ks) {
    total += static_cast<double>(2 * k - 1);
    cumulative.push_back(total);
  }
  std::mt19937_64 rng(sampling.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int n = 0; n < sampling.random_samples; ++n) {
    const double pick = unif(rng) * total;
    const auto pos = std::min<std::size_t>(
        std::lower_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin(),
        ks.size() - 1);
    const double k = static_cast<double>(ks[pos]);
    const double rho = std::sqrt((k - 1.0) * (k - 1.0) + unif(rng) * (2.0 * k - 1.0));
    const double th = -alpha + 2.0 * alpha * unif(rng);
    samples.push_back(std::polar(rho, th));
  }

  const double inner = *pkg.f.support_radius(sector);
  const QuadratureOptions quad{1e-10, 16, 1.0};
  auto norms = detail::map_indexed<double>(samples.size(), exec, [&](std::size_t i) {
    const auto t = SectorPoint::cartesian(sector, samples[i]);
    return orbit_norm(space, pkg.f, t, inner, quad);
  });

  WitnessVerification out;
  out.samples = samples.size();
  out.delta = pkg.delta;
  const auto it = std::min_element(norms.begin(), norms.end());
  out.min_norm = *it;
  out.argmin = samples[static_cast<std::size_t>(it - norms.begin())];
  out.pass = out.min_norm >= pkg.delta - sampling.tolerance;
  return out;
}

SeriesReport devaney_ray_series(const Weight& v, const Sector& sector, Complex t1,
                                std::int64_t k_max) {
  if (t1 == Complex{}) throw DomainError("ray generator must be nonzero");
  if (!sector.contains(t1)) throw DomainError("ray generator lies outside the sector");
  if (!sector.contains_interior(t1)) {
    throw DomainError("ray lies on the boundary of the sector");
  }
  if (k_max < 0) throw DomainError("series horizon must be nonnegative");
  SeriesReport report;
  double sum = 0.0;
  for (std::int64_t k = 0; k <= k_max; ++k) {
    const double term = v(static_cast<double>(k) * t1);
    sum += term;
    report.indices.push_back(k);
    report.terms.push_back(term);
    report.partial_sums.push_back(sum);
  }
  std::vector<double> idx(report.indices.begin(), report.indices.end());
  report.trend = classify_increments(idx, report.terms);
  if (report.trend.verdict == SeriesVerdict::convergent_trend && report.trend.tail) {
    report.limit_estimate = sum + *report.trend.tail;
  }
  return report;
}

}  // namespace sectorlab

namespace sectorlab {
namespace {

using nlohmann::json;

double num(const json& obj, const char* key, double fallback) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : it->get<double>();
}

CheckResult at_least(std::string name, double value, double threshold, std::string note = {}) {
  return {std::move(name), value, threshold, ">=", value >= threshold, std::move(note)};
}

CheckResult at_most(std::string name, double value, double threshold, std::string note = {}) {
  return {std::move(name), value, threshold, "<=", value <= threshold, std::move(note)};
}

CheckResult flag(std::string name, bool ok, std::string note = {}) {
  return {std::move(name), ok ? 1.0 : 0.0, 1.0, "==", ok, std::move(note)};
}

double rel_err(double value, double exact) { return std::abs(value - exact) / std::abs(exact); }

json series_json(const SeriesReport& s) {
  json j;
  j["terms"] = s.terms.size();
  j["partial_sum"] = s.partial_sum();
  j["verdict"] = to_string(s.verdict());
  j["ratio"] = s.trend.ratio;
  j["slope"] = s.trend.slope;
  if (s.limit_estimate) j["limit_estimate"] = *s.limit_estimate;
  return j;
}

json estimate_json(const DensityEstimate& e) {
  return {{"upper", e.upper},     {"lower", e.lower},
          {"window", e.window},   {"trend", to_string(e.trend)},
          {"error", e.error}};
}

void admissibility_step(ExampleReport& rep, const ScenarioConfig& cfg, Execution exec) {
  Certificate cert;
  std::string note = "weight certificate";
  const auto& th = cfg.thresholds;
  if (auto it = cfg.resolved.find("candidate_certificate"); it != cfg.resolved.end()) {
    cert = {it->at("M").get<double>(), it->at("w").get<double>()};
    note = "candidate certificate";
  } else if (cfg.weight.certificate()) {
    cert = *cfg.weight.certificate();
  } else {
    throw ConfigError("admissibility step needs a certificate or candidate_certificate");
  }
  PairSampling sampling;
  sampling.seed = cfg.seed;
  sampling.random_pairs = static_cast<int>(num(th, "admissibility_pairs", 10000));
  const auto report = admissibility_check(cfg.weight, cfg.sector, cert.M, cert.w, sampling, exec);
  rep.details["admissibility"] = {{"M", cert.M},
                                  {"w", cert.w},
                                  {"pairs", report.pairs_checked},
                                  {"violations", report.violations.size()},
                                  {"worst_ratio", report.worst_ratio}};
  rep.checks.push_back(flag("admissible", report.ok(), note));
}

void integral_step(ExampleReport& rep, const ScenarioConfig& cfg, double exact, TailModel model,
                   Execution exec) {
  const double R = num(cfg.horizons, "integral_R", 60.0);
  const auto wi = weight_integral(cfg.weight, cfg.sector, R, model, {}, exec);
  rep.details["weight_integral"] = {{"R", R},
                                    {"truncated", wi.truncated},
                                    {"tail", wi.tail},
                                    {"value", wi.value()},
                                    {"exact", exact},
                                    {"trend", to_string(wi.trend.verdict)}};
  rep.checks.push_back(at_most("weight_integral_rel_error", rel_err(wi.value(), exact),
                               num(cfg.thresholds, "integral_rel_tol", 1e-6)));
}

void series_step(ExampleReport& rep, const ScenarioConfig& cfg, double exact, Execution exec) {
  const auto k_max = static_cast<std::int64_t>(num(cfg.horizons, "series_k_max", 2000));
  const auto s = dc_sufficient_series(cfg.weight, cfg.sector, *cfg.K, k_max, {}, exec);
  auto j = series_json(s);
  j["exact"] = exact;
  rep.details["dc_series"] = j;
  const double limit = s.limit_estimate.value_or(std::numeric_limits<double>::infinity());
  rep.checks.push_back(at_most("dc_series_rel_error", rel_err(limit, exact),
                               num(cfg.thresholds, "series_rel_tol", 1e-6)));
}

void witness_steps(ExampleReport& rep, const ScenarioConfig& cfg, double expected_delta,
                   Execution exec) {
  const auto& hz = cfg.horizons;
  const auto& th = cfg.thresholds;
  const auto k_max = static_cast<std::int64_t>(num(hz, "witness_k_max", 60));
  const double R = num(hz, "witness_R", 50.0);
  const auto pkg = build_witness(cfg.weight, cfg.sector, *cfg.K, cfg.p, k_max, true, {}, exec);
  rep.checks.push_back(at_most("witness_delta_rel_error", rel_err(pkg.delta, expected_delta),
                               num(th, "delta_rel_tol", 1e-12),
                               "bound from " + to_string(pkg.provenance)));

  const LpSpace space(cfg.weight, cfg.p, cfg.sector);
  WitnessSampling sampling;
  sampling.seed = cfg.seed;
  sampling.grid_radial = static_cast<int>(num(th, "witness_grid_radial", 3));
  sampling.grid_angular = static_cast<int>(num(th, "witness_grid_angular", 4));
  sampling.random_samples = static_cast<int>(num(th, "witness_random", 400));
  sampling.tolerance = num(th, "witness_tol", 1e-4);
  const auto ver = verify_witness(space, pkg, *cfg.K, R, sampling, exec);
  rep.details["witness"] = {{"delta", pkg.delta},
                            {"bound", pkg.bound},
                            {"provenance", to_string(pkg.provenance)},
                            {"grid_min", pkg.grid_min},
                            {"k_max", pkg.k_max},
                            {"R", R},
                            {"samples", ver.samples},
                            {"min_norm", ver.min_norm},
                            {"argmin", {ver.argmin.real(), ver.argmin.imag()}},
                            {"tolerance", sampling.tolerance}};
  rep.checks.push_back(at_least("witness_samples", static_cast<double>(ver.samples),
                                num(th, "witness_min_samples", 500)));
  rep.checks.push_back(at_least("witness_min_norm", ver.min_norm, pkg.delta - sampling.tolerance));

  const auto n = static_cast<std::int64_t>(std::floor(R));
  rep.details["K_density"] = {{"n", n},
                              {"count_ratio", static_cast<double>(cfg.K->count_up_to(n)) /
                                                  static_cast<double>(n)},
                              {"declared_udens", cfg.K->declared_udens()
                                                     ? json(*cfg.K->declared_udens())
                                                     : json(nullptr)}};

  OrbitOptions opts;
  opts.resolution = cfg.grid;
  const auto grid = orbit_profile(space, pkg.f, R, opts, exec);
  const auto level = level_density(grid, pkg.delta, Side::super, cfg.schedule_to(R));
  const auto est = density_estimates(level.profile, std::min(cfg.window, level.profile.radii.size()));
  rep.details["superlevel"] = estimate_json(est);
  rep.details["superlevel"]["grid"] = {{"n_r", cfg.grid.n_r}, {"n_theta", cfg.grid.n_theta}};
  rep.checks.push_back(
      at_least("superlevel_upper_density", est.upper, num(th, "superlevel_min", 0.98)));
  rep.profiles.emplace_back("superlevel", level.profile);
  rep.grids.emplace_back("witness_orbit", grid);
}

ExampleReport exp_decay_dc(const ScenarioConfig& cfg, Execution exec) {
  ExampleReport rep{"exp-decay-dc", {}, json::object(), {}, {}};
  const double exact = 2.0 * cfg.sector.alpha();  // 2 alpha * int_0^inf rho e^{-rho}
  admissibility_step(rep, cfg, exec);
  integral_step(rep, cfg, exact, TailModel::exp, exec);
  series_step(rep, cfg, exact, exec);
  const double b = std::exp(-2.0);
  witness_steps(rep, cfg, std::pow(cfg.sector.alpha() * b, 1.0 / cfg.p), exec);
  return rep;
}

ExampleReport poly_decay_dc(const ScenarioConfig& cfg, Execution exec) {
  ExampleReport rep{"poly-decay-dc", {}, json::object(), {}, {}};
  // 2 alpha * int_0^inf rho / (rho^4 + 1) = alpha * pi / 2.
  const double exact = cfg.sector.alpha() * std::numbers::pi / 2.0;
  admissibility_step(rep, cfg, exec);
  integral_step(rep, cfg, exact, TailModel::power, exec);
  series_step(rep, cfg, exact, exec);
  witness_steps(rep, cfg, std::pow(cfg.sector.alpha() / 17.0, 1.0 / cfg.p), exec);
  return rep;
}

ExampleReport devaney_not_dc(const ScenarioConfig& cfg, Execution exec) {
  ExampleReport rep{"devaney-not-dc", {}, json::object(), {}, {}};
  const auto& hz = cfg.horizons;
  const auto& th = cfg.thresholds;
  admissibility_step(rep, cfg, exec);

  const Complex t1 = parse_complex(cfg.resolved.at("t1"));
  const auto ray_k = static_cast<std::int64_t>(num(hz, "ray_k_max", 50));
  const auto ray = devaney_ray_series(cfg.weight, cfg.sector, t1, ray_k);
  const double q = cfg.weight(t1);
  const double closed = (1.0 - std::pow(q, static_cast<double>(ray_k + 1))) / (1.0 - q);
  auto rj = series_json(ray);
  rj["t1"] = {t1.real(), t1.imag()};
  rj["closed_form"] = closed;
  rep.details["ray_series"] = rj;
  rep.checks.push_back(at_most("ray_partial_sum_error", std::abs(ray.partial_sum() - closed),
                               num(th, "ray_abs_tol", 1e-12)));
  rep.checks.push_back(
      flag("ray_convergent_trend", ray.verdict() == SeriesVerdict::convergent_trend));

  const auto k_max = static_cast<std::int64_t>(num(hz, "series_k_max", 60));
  const auto dc = dc_sufficient_series(cfg.weight, cfg.sector, *cfg.K, k_max, {}, exec);
  rep.details["dc_series"] = series_json(dc);
  rep.checks.push_back(
      flag("dc_series_divergent_trend", dc.verdict() == SeriesVerdict::divergent_trend));

  bool rejected = false;
  try {
    (void)build_witness(cfg.weight, cfg.sector, *cfg.K, cfg.p, k_max, true, {}, exec);
  } catch (const WitnessInvalidError&) {
    rejected = true;
  }
  rep.checks.push_back(flag("witness_rejected", rejected));

  if (!cfg.function) throw ConfigError("devaney-not-dc needs a function");
  const double eps = num(th, "epsilon", 0.1);
  const double R = num(hz, "orbit_R", 150.0);
  const LpSpace space(cfg.weight, cfg.p, cfg.sector);
  OrbitOptions opts;
  opts.resolution = cfg.grid;
  const auto grid = orbit_profile(space, *cfg.function, R, opts, exec);
  const auto schedule = cfg.schedule_to(R);
  const auto sub = level_density(grid, eps, Side::sub, schedule);
  const auto super = level_density(grid, eps, Side::super, schedule);
  const std::size_t window = std::min(cfg.window, schedule.size());
  const auto sub_est = density_estimates(sub.profile, window);
  const auto super_est = density_estimates(super.profile, window);
  double complement = 0.0;
  for (std::size_t i = 0; i < sub.profile.ratios.size(); ++i) {
    const double tol = sub.profile.errors[i] + super.profile.errors[i] + 1e-12;
    complement = std::max(complement,
                          std::abs(sub.profile.ratios[i] + super.profile.ratios[i] - 1.0) - tol);
  }
  rep.details["epsilon"] = eps;
  rep.details["orbit_R"] = R;
  rep.details["sublevel"] = estimate_json(sub_est);
  rep.details["superlevel"] = estimate_json(super_est);
  rep.checks.push_back(
      at_least("sublevel_lower_density", sub_est.lower, num(th, "sub_lower_min", 0.45)));
  rep.checks.push_back(
      at_most("superlevel_upper_density", super_est.upper, num(th, "super_upper_max", 0.55)));
  rep.checks.push_back(at_most("complementation_excess", std::max(complement, 0.0), 0.0));
  rep.profiles.emplace_back("sublevel", sub.profile);
  rep.profiles.emplace_back("superlevel", super.profile);
  rep.grids.emplace_back("orbit", grid);
  return rep;
}

}  // namespace

bool ExampleReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

nlohmann::json ExampleReport::to_json() const {
  json j;
  j["id"] = id;
  j["pass"] = pass();
  j["checks"] = json::array();
  for (const auto& c : checks) {
    json cj = {{"name", c.name},
               {"value", c.value},
               {"threshold", c.threshold},
               {"comparison", c.comparison},
               {"pass", c.pass}};
    if (!c.note.empty()) cj["note"] = c.note;
    j["checks"].push_back(cj);
  }
  j["details"] = details;
  return j;
}

std::vector<std::string> example_ids() { return {"exp-decay-dc", "poly-decay-dc", "devaney-not-dc"}; }

ExampleReport run_example(const std::string& id, Execution exec) {
  const auto text = builtin_scenario(id);
  if (!text) throw DomainError("unknown example id: " + id);
  return run_example(id, json::parse(*text), exec);
}

ExampleReport run_example(const std::string& id, const nlohmann::json& scenario, Execution exec) {
  const auto ids = example_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
    throw DomainError("unknown example id: " + id);
  }
  const auto cfg = load_scenario(scenario);
  if (!cfg.K) throw ConfigError(id + " needs K");
  ExampleReport rep = id == "exp-decay-dc"    ? exp_decay_dc(cfg, exec)
                      : id == "poly-decay-dc" ? poly_decay_dc(cfg, exec)
                                              : devaney_not_dc(cfg, exec);
  rep.details["scenario"] = cfg.resolved;
  return rep;
}

}  // namespace sectorlab
