// sectorlab: batch front end for density profiles, criteria checks and the
// packaged reproducers.
//
// Exit codes: 0 ok, 1 acceptance or check failure, 2 config error, 64 usage.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sectorlab/criteria.hpp"
#include "sectorlab/density.hpp"
#include "sectorlab/errors.hpp"
#include "sectorlab/scenario.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sectorlab;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kConfig = 2;
constexpr int kUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::string out;
  std::uint64_t seed = 42;
  std::optional<double> horizon;
  std::string format = "json";
  std::string t0;
  std::string check;
  std::string example;
};

json read_config(const Options& o) {
  json doc = json::object();
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw ConfigError("cannot open config '" + o.config + "'");
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  }
  doc["seed"] = o.seed;
  return doc;
}

void write_file(const Options& o, const std::string& name, const std::string& text) {
  if (o.out.empty()) return;
  std::error_code ec;
  fs::create_directories(o.out, ec);
  std::ofstream f(fs::path(o.out) / name, std::ios::binary);
  if (!f) throw ConfigError("cannot write to '" + o.out + "'");
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string profile_csv(const DensityProfile& p) {
  std::ostringstream s;
  write_profile_csv(s, p);
  return s.str();
}

std::string grid_csv(const OrbitGrid& g) {
  std::ostringstream s;
  write_grid_csv(s, g);
  return s.str();
}

json estimate_json(const DensityEstimate& e) {
  return {{"upper", e.upper},   {"lower", e.lower}, {"window", e.window},
          {"trend", to_string(e.trend)}, {"error", e.error}};
}

int cmd_density(const Options& o) {
  const json doc = read_config(o);
  const auto cfg = load_scenario(doc);
  if (!cfg.set) throw ConfigError("density needs a 'set' (rect literal or {annuli, k_max})");

  const double horizon = o.horizon.value_or(cfg.schedule().back());
  if (!(horizon >= cfg.schedule_r0)) throw ConfigError("horizon must be at least schedule r0");
  const auto schedule = cfg.schedule_to(horizon).with_integer_radii(horizon);

  SectorSet set = *cfg.set;
  json meta = {{"set_rects", cfg.set->rects().size()}, {"horizon", horizon}};
  if (!o.t0.empty()) {
    Complex t0;
    try {
      t0 = parse_complex(json(o.t0));
    } catch (const ConfigError& e) {
      throw UsageError(std::string("--t0: ") + e.what());
    }
    if (!cfg.sector.contains(t0)) throw ConfigError("--t0 lies outside the sector");
    set = translate_set(set, cfg.sector, t0, Shift::minus);
    meta["t0"] = {t0.real(), t0.imag()};
  }
  const auto profile = density_profile(set, cfg.sector, schedule, {}, Execution::parallel);
  const auto est = density_estimates(profile, std::min(cfg.window, profile.radii.size()));

  json summary = {{"command", "density"}, {"estimate", estimate_json(est)}, {"meta", meta}};
  write_file(o, "density_profile.csv", profile_csv(profile));
  write_file(o, "density_summary.json", dump(summary));
  if (o.format == "csv") {
    std::cout << profile_csv(profile);
  } else {
    json full = summary;
    full["profile"] = {{"r", profile.radii}, {"ratio", profile.ratios}, {"error", profile.errors}};
    std::cout << dump(full);
  }
  return kOk;
}

std::string flat_csv(const json& report) {
  std::ostringstream s;
  s.precision(17);
  s << "key,value\n";
  for (const auto& [k, v] : report.items()) {
    if (v.is_primitive()) s << k << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
  return s.str();
}

int cmd_check(const Options& o) {
  const json doc = read_config(o);
  const auto cfg = load_scenario(doc);
  const auto exec = Execution::parallel;
  json r = {{"command", "check"}, {"check", o.check}, {"weight", to_string(cfg.weight.family())}};
  bool pass = false;

  if (o.check == "admissible") {
    Certificate cert;
    if (doc.contains("candidate_certificate")) {
      cert = {doc["candidate_certificate"]["M"].get<double>(),
              doc["candidate_certificate"]["w"].get<double>()};
    } else if (cfg.weight.certificate()) {
      cert = *cfg.weight.certificate();
    } else {
      throw ConfigError("admissible check needs a certificate or candidate_certificate");
    }
    PairSampling sampling;
    sampling.seed = cfg.seed;
    if (o.horizon) sampling.radius = *o.horizon;
    const auto rep = admissibility_check(cfg.weight, cfg.sector, cert.M, cert.w, sampling, exec);
    pass = rep.ok();
    r.update({{"M", cert.M},
              {"w", cert.w},
              {"pairs", rep.pairs_checked},
              {"violations", rep.violations.size()},
              {"worst_ratio", rep.worst_ratio},
              {"worst_t", {rep.worst_t.real(), rep.worst_t.imag()}},
              {"worst_t_prime", {rep.worst_t_prime.real(), rep.worst_t_prime.imag()}}});
  } else if (o.check == "dc-sufficient") {
    const auto K = cfg.K.value_or(IntegerSet::naturals());
    const auto k_max = static_cast<std::int64_t>(o.horizon.value_or(2000));
    const auto s = dc_sufficient_series(cfg.weight, cfg.sector, K, k_max, {}, exec);
    pass = s.verdict() == SeriesVerdict::convergent_trend;
    r.update({{"K", K.name()},
              {"k_max", k_max},
              {"partial_sum", s.partial_sum()},
              {"verdict", to_string(s.verdict())},
              {"ratio", s.trend.ratio},
              {"slope", s.trend.slope},
              {"limit_estimate", s.limit_estimate ? json(*s.limit_estimate) : json(nullptr)},
              {"tail", s.trend.tail ? json(*s.trend.tail) : json(nullptr)}});
  } else if (o.check == "devaney-ray") {
    if (!doc.contains("t1")) throw ConfigError("devaney-ray needs 't1' in the config");
    const Complex t1 = parse_complex(doc["t1"]);
    const auto k_max = static_cast<std::int64_t>(o.horizon.value_or(50));
    SeriesReport s;
    try {
      s = devaney_ray_series(cfg.weight, cfg.sector, t1, k_max);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
    pass = s.verdict() == SeriesVerdict::convergent_trend;
    r.update({{"t1", {t1.real(), t1.imag()}},
              {"k_max", k_max},
              {"partial_sum", s.partial_sum()},
              {"verdict", to_string(s.verdict())},
              {"limit_estimate", s.limit_estimate ? json(*s.limit_estimate) : json(nullptr)}});
  } else if (o.check == "witness") {
    const auto K = cfg.K.value_or(IntegerSet::naturals());
    const double R = o.horizon.value_or(50.0);
    const auto k_max = static_cast<std::int64_t>(std::ceil(R)) + 10;
    try {
      const auto pkg = build_witness(cfg.weight, cfg.sector, K, cfg.p, k_max, true, {}, exec);
      WitnessSampling sampling;
      sampling.seed = cfg.seed;
      const auto v = verify_witness(LpSpace(cfg.weight, cfg.p, cfg.sector), pkg, K, R, sampling,
                                    exec);
      pass = v.pass;
      r.update({{"K", K.name()},
                {"p", cfg.p},
                {"R", R},
                {"delta", pkg.delta},
                {"bound", pkg.bound},
                {"provenance", to_string(pkg.provenance)},
                {"grid_min", pkg.grid_min},
                {"samples", v.samples},
                {"min_norm", v.min_norm},
                {"tolerance", sampling.tolerance}});
    } catch (const WitnessInvalidError& e) {
      pass = false;
      r["error"] = e.what();
    } catch (const UnsupportedError& e) {
      pass = false;
      r["error"] = e.what();
    }
  } else {
    throw UsageError("unknown check '" + o.check +
                     "' (expected admissible, dc-sufficient, devaney-ray or witness)");
  }
  r["pass"] = pass;
  const std::string text = o.format == "csv" ? flat_csv(r) : dump(r);
  write_file(o, "check_" + o.check + (o.format == "csv" ? ".csv" : ".json"), text);
  std::cout << text;
  return pass ? kOk : kFail;
}

int cmd_reproduce(const Options& o) {
  const auto ids = example_ids();
  if (std::find(ids.begin(), ids.end(), o.example) == ids.end()) {
    throw UsageError("unknown example id '" + o.example + "'");
  }
  json doc;
  if (o.config.empty()) {
    doc = json::parse(*builtin_scenario(o.example));
    doc["seed"] = o.seed;
  } else {
    doc = read_config(o);
  }
  if (o.horizon) {
    const char* key = o.example == "devaney-not-dc" ? "orbit_R" : "witness_R";
    doc["horizons"][key] = *o.horizon;
  }
  const auto rep = run_example(o.example, doc, Execution::parallel);
  const json j = rep.to_json();
  write_file(o, o.example + ".json", dump(j));
  for (const auto& [name, p] : rep.profiles) write_file(o, o.example + "_" + name + ".csv", profile_csv(p));
  for (const auto& [name, g] : rep.grids) write_file(o, o.example + "_" + name + "_grid.csv", grid_csv(g));
  if (o.format == "csv") {
    std::ostringstream s;
    s.precision(17);
    s << "check,value,comparison,threshold,pass\n";
    for (const auto& c : rep.checks) {
      s << c.name << ',' << c.value << ',' << c.comparison << ',' << c.threshold << ','
        << (c.pass ? "true" : "false") << '\n';
    }
    std::cout << s.str();
  } else {
    std::cout << dump(j);
  }
  return rep.pass() ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sectorlab: translation semigroups on weighted Lp spaces over sectors"};
  app.require_subcommand(1);
  Options o;
  auto common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config, "Scenario JSON file");
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--seed", o.seed, "Sampling seed")->capture_default_str();
    sub->add_option("--horizon", o.horizon, "Horizon R (radius or series length)");
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  };
  auto* density = app.add_subcommand("density", "Density profile of the configured set");
  common(density);
  density->add_option("--t0", o.t0, "Translate the set by -t0 first (e.g. 3+1i)");
  auto* check = app.add_subcommand("check", "Run one criterion check");
  common(check);
  check->add_option("name", o.check, "admissible | dc-sufficient | devaney-ray | witness")
      ->required();
  auto* reproduce = app.add_subcommand("reproduce", "Run a packaged reproducer");
  common(reproduce);
  reproduce->add_option("id", o.example, "exp-decay-dc | poly-decay-dc | devaney-not-dc")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*density) return cmd_density(o);
    if (*check) return cmd_check(o);
    return cmd_reproduce(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
}
