#include "sectorlab/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

#include "sectorlab/errors.hpp"

namespace sectorlab {

using nlohmann::json;

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

double get_number(const json& j, const std::string& key) {
  require(j.contains(key) && j.at(key).is_number(), "'" + key + "' must be a number");
  return j.at(key).get<double>();
}

std::int64_t get_int(const json& j, const std::string& key) {
  require(j.contains(key) && j.at(key).is_number_integer(), "'" + key + "' must be an integer");
  return j.at(key).get<std::int64_t>();
}

void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  require(j.is_object(), where + " must be an object");
  for (const auto& [k, _] : j.items()) {
    const bool known =
        std::any_of(keys.begin(), keys.end(), [&](const char* s) { return k == s; });
    require(known, "unknown key '" + k + "' in " + where);
  }
}

// Re-throws library validation failures as config errors.
template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

SectorFunction parse_function_impl(const json& j, const Sector& sector);

RectUnionSet parse_set_spec(const json& j, const Sector& sector) {
  if (j.is_array()) return parse_set_literal(j, sector);
  only_keys(j, {"annuli", "k_max"}, "set");
  require(j.contains("annuli"), "set object needs 'annuli'");
  const auto K = parse_integer_set(j.at("annuli"));
  const auto k_max = get_int(j, "k_max");
  require(k_max >= 0, "'k_max' must be nonnegative");
  return annuli_union(K, k_max, sector);
}

SectorFunction parse_function_impl(const json& j, const Sector& sector) {
  only_keys(j, {"kind", "params", "offset"}, "function");
  require(j.contains("kind") && j.at("kind").is_string(), "function needs a string 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  const json params = j.value("params", json::object());
  require(params.is_object(), "function 'params' must be an object");
  SectorFunction f = SectorFunction::zero();
  if (kind == "zero") {
    only_keys(params, {}, "zero params");
  } else if (kind == "indicator") {
    only_keys(params, {"set", "scale"}, "indicator params");
    require(params.contains("set"), "indicator needs params.set");
    f = SectorFunction::indicator(parse_set_spec(params.at("set"), sector),
                                  params.value("scale", 1.0));
  } else if (kind == "bump") {
    only_keys(params, {"center", "radius", "amplitude"}, "bump params");
    require(params.contains("center"), "bump needs params.center");
    const double radius = get_number(params, "radius");
    require(radius > 0.0, "bump radius must be positive");
    f = SectorFunction::bump(parse_complex(params.at("center")), radius,
                             params.value("amplitude", 1.0));
  } else if (kind == "combination") {
    only_keys(params, {"terms"}, "combination params");
    require(params.contains("terms") && params.at("terms").is_array(),
            "combination needs params.terms");
    std::vector<std::pair<double, SectorFunction>> terms;
    for (const auto& t : params.at("terms")) {
      only_keys(t, {"coefficient", "function"}, "combination term");
      require(t.contains("function"), "combination term needs 'function'");
      terms.emplace_back(t.value("coefficient", 1.0), parse_function_impl(t.at("function"), sector));
    }
    f = SectorFunction::combination(std::move(terms));
  } else {
    throw ConfigError("unknown function kind '" + kind + "'");
  }
  if (j.contains("offset")) {
    const Complex tau = parse_complex(j.at("offset"));
    require(sector.contains(tau), "function offset lies outside the sector");
    f = translate_function(f, sector, SectorPoint::cartesian(sector, tau));
  }
  return f;
}

}  // namespace

Complex parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array()) {
    require(j.size() == 2 && j[0].is_number() && j[1].is_number(),
            "complex array must be [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
  }
  if (j.is_object()) {
    only_keys(j, {"x", "y"}, "complex");
    return {j.value("x", 0.0), j.value("y", 0.0)};
  }
  require(j.is_string(), "complex value must be a number, string, [x, y] or {x, y}");
  std::string s = j.get<std::string>();
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  static const std::regex re(
      R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?:([+-])((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?[ij])?$)");
  static const std::regex pure_imag(R"(^([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?[ij]$)");
  std::smatch m;
  if (std::regex_match(s, m, pure_imag)) {
    const double mag = m[2].matched ? std::stod(m[2].str()) : 1.0;
    return {0.0, m[1].str() == "-" ? -mag : mag};
  }
  require(!s.empty() && std::regex_match(s, m, re) && m[1].matched,
          "cannot parse complex number '" + j.get<std::string>() + "'");
  const double re_part = std::stod(m[1].str());
  double im_part = 0.0;
  if (m[2].matched) {
    im_part = m[3].matched ? std::stod(m[3].str()) : 1.0;
    if (m[2].str() == "-") im_part = -im_part;
  }
  return {re_part, im_part};
}

Weight parse_weight(const json& j) {
  json obj = j.is_string() ? json{{"family", j}} : j;
  only_keys(obj, {"family", "params", "certificate"}, "weight");
  require(obj.contains("family") && obj.at("family").is_string(),
          "weight needs a string 'family'");
  const auto family = obj.at("family").get<std::string>();
  const json params = obj.value("params", json::object());
  require(params.is_object(), "weight 'params' must be an object");
  Weight v = Weight::exp_decay();
  if (family == "exp_decay") {
    only_keys(params, {}, "exp_decay params");
  } else if (family == "poly_decay") {
    only_keys(params, {}, "poly_decay params");
    v = Weight::poly_decay();
  } else if (family == "vertical_exp") {
    only_keys(params, {}, "vertical_exp params");
    v = Weight::vertical_exp();
  } else if (family == "constant") {
    only_keys(params, {"c"}, "constant params");
    const double c = params.value("c", 1.0);
    require(c > 0.0 && std::isfinite(c), "constant weight needs c > 0");
    v = Weight::constant(c);
  } else {
    throw ConfigError("unknown weight family '" + family + "'");
  }
  if (obj.contains("certificate")) {
    const auto& c = obj.at("certificate");
    if (c.is_null()) {
      v = v.with_certificate(std::nullopt);
    } else {
      only_keys(c, {"M", "w"}, "certificate");
      const double M = get_number(c, "M");
      require(M >= 1.0, "certificate needs M >= 1");
      v = v.with_certificate(Certificate{M, get_number(c, "w")});
    }
  }
  return v;
}

IntegerSet parse_integer_set(const json& j) {
  if (j.is_string()) return parse_integer_set(json{{"kind", j}});
  if (j.is_array()) return parse_integer_set(json{{"kind", "finite"}, {"members", j}});
  require(j.is_object() && j.contains("kind") && j.at("kind").is_string(),
          "K must be a name, an array or an object with 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "naturals" || kind == "evens" || kind == "non_squares") {
    only_keys(j, {"kind"}, "K");
    return kind == "naturals" ? IntegerSet::naturals()
           : kind == "evens"  ? IntegerSet::evens()
                              : IntegerSet::non_squares();
  }
  if (kind == "finite") {
    only_keys(j, {"kind", "members"}, "K");
    require(j.contains("members") && j.at("members").is_array(), "finite K needs 'members'");
    std::set<std::int64_t> members;
    for (const auto& m : j.at("members")) {
      require(m.is_number_integer() && m.get<std::int64_t>() >= 0,
              "K members must be nonnegative integers");
      members.insert(m.get<std::int64_t>());
    }
    return IntegerSet::finite(std::move(members));
  }
  if (kind == "progression") {
    only_keys(j, {"kind", "start", "step", "last"}, "K");
    const auto start = get_int(j, "start");
    const auto step = get_int(j, "step");
    std::optional<std::int64_t> last;
    if (j.contains("last")) last = get_int(j, "last");
    return guarded([&] { return IntegerSet::progression(start, step, last); });
  }
  throw ConfigError("unknown K kind '" + kind + "'");
}

RectUnionSet parse_set_literal(const json& j, const Sector& sector) {
  require(j.is_array(), "set literal must be an array of rects");
  std::vector<PolarRect> rects;
  for (const auto& r : j) {
    only_keys(r, {"r_lo", "r_hi", "th_lo", "th_hi"}, "rect");
    rects.push_back({get_number(r, "r_lo"), get_number(r, "r_hi"), get_number(r, "th_lo"),
                     get_number(r, "th_hi")});
  }
  return guarded([&] { return RectUnionSet(sector, std::move(rects)); });
}

json to_json(const RectUnionSet& set) {
  json out = json::array();
  for (const auto& r : set.rects()) {
    out.push_back({{"r_lo", r.r_lo}, {"r_hi", r.r_hi}, {"th_lo", r.th_lo}, {"th_hi", r.th_hi}});
  }
  return out;
}

SectorFunction parse_function(const json& j, const Sector& sector) {
  return guarded([&] { return parse_function_impl(j, sector); });
}

RadiusSchedule ScenarioConfig::schedule() const {
  return RadiusSchedule::geometric(schedule_r0, schedule_gamma, schedule_count);
}

RadiusSchedule ScenarioConfig::schedule_to(double horizon) const {
  std::vector<double> radii;
  for (double r = schedule_r0; r < horizon * (1.0 - 1e-12); r *= schedule_gamma) radii.push_back(r);
  radii.push_back(horizon);
  return RadiusSchedule::from_radii(std::move(radii));
}

ScenarioConfig load_scenario(const json& doc) {
  only_keys(doc,
            {"$schema", "version", "id", "description", "sector", "weight", "p", "K", "schedule",
             "window", "grid", "seed", "set", "function", "t1", "candidate_certificate",
             "horizons", "thresholds", "out"},
            "scenario");
  if (doc.contains("version")) {
    require(doc.at("version").is_number_integer() && doc.at("version").get<int>() == 1,
            "unsupported scenario version");
  }
  ScenarioConfig cfg;
  json resolved = doc;
  resolved["version"] = 1;

  json sector = doc.value("sector", json{{"alpha", std::numbers::pi / 4.0}});
  only_keys(sector, {"alpha"}, "sector");
  const double alpha = get_number(sector, "alpha");
  cfg.sector = guarded([&] { return Sector(alpha); });
  resolved["sector"] = {{"alpha", alpha}};

  if (doc.contains("weight")) cfg.weight = parse_weight(doc.at("weight"));
  {
    json w = {{"family", to_string(cfg.weight.family())}};
    if (cfg.weight.family() == WeightFamily::constant && doc.contains("weight") &&
        doc.at("weight").is_object()) {
      w["params"] = doc.at("weight").value("params", json::object());
    }
    w["certificate"] = cfg.weight.certificate()
                           ? json{{"M", cfg.weight.certificate()->M},
                                  {"w", cfg.weight.certificate()->w}}
                           : json(nullptr);
    resolved["weight"] = w;
  }

  if (doc.contains("p")) cfg.p = get_number(doc, "p");
  require(cfg.p >= 1.0 && std::isfinite(cfg.p), "'p' must be in [1, inf)");
  resolved["p"] = cfg.p;

  if (doc.contains("K")) cfg.K = parse_integer_set(doc.at("K"));

  json sched = doc.value("schedule", json::object());
  only_keys(sched, {"r0", "gamma", "count"}, "schedule");
  if (sched.contains("r0")) cfg.schedule_r0 = get_number(sched, "r0");
  if (sched.contains("gamma")) cfg.schedule_gamma = get_number(sched, "gamma");
  if (sched.contains("count")) cfg.schedule_count = static_cast<int>(get_int(sched, "count"));
  require(cfg.schedule_r0 > 0.0, "schedule r0 must be positive");
  require(cfg.schedule_gamma > 1.0, "schedule gamma must exceed 1");
  require(cfg.schedule_count >= 1, "schedule count must be at least 1");
  resolved["schedule"] = {
      {"r0", cfg.schedule_r0}, {"gamma", cfg.schedule_gamma}, {"count", cfg.schedule_count}};

  if (doc.contains("window")) {
    const auto w = get_int(doc, "window");
    require(w >= 1, "'window' must be at least 1");
    cfg.window = static_cast<std::size_t>(w);
  }
  resolved["window"] = cfg.window;

  json grid = doc.value("grid", json::object());
  only_keys(grid, {"n_r", "n_theta", "r_min"}, "grid");
  if (grid.contains("n_r")) cfg.grid.n_r = static_cast<int>(get_int(grid, "n_r"));
  if (grid.contains("n_theta")) cfg.grid.n_theta = static_cast<int>(get_int(grid, "n_theta"));
  if (grid.contains("r_min")) cfg.grid.r_min = get_number(grid, "r_min");
  require(cfg.grid.n_r >= 2 && cfg.grid.n_theta >= 1 && cfg.grid.r_min > 0.0,
          "grid needs n_r >= 2, n_theta >= 1, r_min > 0");
  resolved["grid"] = {
      {"n_r", cfg.grid.n_r}, {"n_theta", cfg.grid.n_theta}, {"r_min", cfg.grid.r_min}};

  if (doc.contains("seed")) {
    require(doc.at("seed").is_number_unsigned(), "'seed' must be a nonnegative integer");
    cfg.seed = doc.at("seed").get<std::uint64_t>();
  }
  resolved["seed"] = cfg.seed;

  if (doc.contains("set")) cfg.set = guarded([&] { return parse_set_spec(doc.at("set"), cfg.sector); });
  if (doc.contains("function")) cfg.function = parse_function(doc.at("function"), cfg.sector);
  if (doc.contains("t1")) (void)parse_complex(doc.at("t1"));
  if (doc.contains("candidate_certificate")) {
    const auto& c = doc.at("candidate_certificate");
    only_keys(c, {"M", "w"}, "candidate_certificate");
    require(get_number(c, "M") >= 1.0, "candidate certificate needs M >= 1");
    (void)get_number(c, "w");
  }

  for (const char* key : {"horizons", "thresholds"}) {
    const json section = doc.value(key, json::object());
    require(section.is_object(), std::string("'") + key + "' must be an object");
    for (const auto& [k, v] : section.items()) {
      require(v.is_number(), std::string(key) + "." + k + " must be a number");
    }
    (std::string(key) == "horizons" ? cfg.horizons : cfg.thresholds) = section;
    resolved[key] = section;
  }

  if (doc.contains("out")) {
    require(doc.at("out").is_string(), "'out' must be a string");
    cfg.out_dir = doc.at("out").get<std::string>();
  }
  resolved["out"] = cfg.out_dir;
  cfg.resolved = std::move(resolved);
  return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("invalid JSON in '" + path + "': " + e.what());
  }
  return load_scenario(doc);
}

}  // namespace sectorlab
