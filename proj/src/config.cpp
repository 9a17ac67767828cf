#include "basinmap/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace basinmap {

using nlohmann::json;

bool known_preset(const std::string& name) {
  return name == "z2m1" || name == "z3m1" || name == "z7m1";
}

std::vector<cdouble> preset_coefficients(const std::string& name) {
  auto z_pow_minus_one = [](int n) {
    std::vector<cdouble> c(static_cast<std::size_t>(n) + 1, cdouble{0.0, 0.0});
    c[0] = -1.0;
    c.back() = 1.0;
    return c;
  };
  if (name == "z2m1") return z_pow_minus_one(2);
  if (name == "z3m1") return z_pow_minus_one(3);
  if (name == "z7m1") return z_pow_minus_one(7);
  throw std::invalid_argument("unknown polynomial preset: " + name);
}

Polynomial JobConfig::polynomial() const {
  if (!preset.empty()) return Polynomial(preset_coefficients(preset));
  if (coefficients.empty()) throw std::invalid_argument("no polynomial given (coefficients or preset)");
  return Polynomial(coefficients);
}

MapSpec JobConfig::map() const {
  if (map_kind == "modified") return MapSpec::modified(a0, a1);
  if (map_kind == "generalized") {
    if (exponents.empty()) throw std::invalid_argument("generalized map needs an exponent list");
    return MapSpec::generalized(exponents);
  }
  if (map_kind == "gerlach") return MapSpec::gerlach(gerlach_n);
  throw std::invalid_argument("unknown map kind: " + map_kind);
}

namespace {

json complex_to_json(cdouble z) { return json::array({z.real(), z.imag()}); }

cdouble complex_from_json(const json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace

std::string to_json(const JobConfig& cfg) {
  json j;
  if (!cfg.preset.empty()) j["preset"] = cfg.preset;
  if (!cfg.coefficients.empty()) {
    json coeffs = json::array();
    for (auto c : cfg.coefficients) coeffs.push_back(complex_to_json(c));
    j["coefficients"] = coeffs;
  }
  j["map"] = cfg.map_kind;
  j["a0"] = cfg.a0;
  j["a1"] = cfg.a1;
  if (!cfg.exponents.empty()) j["exponents"] = cfg.exponents;
  j["gerlach_n"] = cfg.gerlach_n;
  j["epsilon"] = cfg.epsilon;
  j["max_iter"] = cfg.max_iter;
  j["domain"] = {{"x_min", cfg.domain.x_min}, {"x_max", cfg.domain.x_max},
                 {"y_min", cfg.domain.y_min}, {"y_max", cfg.domain.y_max},
                 {"nx", cfg.domain.nx},       {"ny", cfg.domain.ny}};
  j["x_range"] = {{"lo", cfg.x_range.lo}, {"hi", cfg.x_range.hi}, {"n", cfg.x_range.n}};
  j["a1_range"] = {{"lo", cfg.a1_range.lo}, {"hi", cfg.a1_range.hi}, {"n", cfg.a1_range.n}};
  if (cfg.z0) j["z0"] = complex_to_json(*cfg.z0);
  if (!cfg.out.empty()) j["out"] = cfg.out;
  j["format"] = cfg.format;
  j["palette"] = cfg.palette;
  return j.dump(2);
}

JobConfig config_from_json(const std::string& json_text) {
  json j = json::parse(json_text);
  JobConfig cfg;
  if (j.contains("preset")) cfg.preset = j["preset"].get<std::string>();
  if (j.contains("coefficients"))
    for (const auto& c : j["coefficients"]) cfg.coefficients.push_back(complex_from_json(c));
  if (j.contains("map")) cfg.map_kind = j["map"].get<std::string>();
  if (j.contains("a0")) cfg.a0 = j["a0"].get<double>();
  if (j.contains("a1")) cfg.a1 = j["a1"].get<double>();
  if (j.contains("exponents")) cfg.exponents = j["exponents"].get<std::vector<double>>();
  if (j.contains("gerlach_n")) cfg.gerlach_n = j["gerlach_n"].get<int>();
  if (j.contains("epsilon")) cfg.epsilon = j["epsilon"].get<double>();
  if (j.contains("max_iter")) cfg.max_iter = j["max_iter"].get<int>();
  if (j.contains("domain")) {
    const auto& d = j["domain"];
    cfg.domain = {d.at("x_min").get<double>(), d.at("x_max").get<double>(),
                  d.at("y_min").get<double>(), d.at("y_max").get<double>(),
                  d.at("nx").get<int>(),       d.at("ny").get<int>()};
  }
  if (j.contains("x_range")) {
    const auto& r = j["x_range"];
    cfg.x_range = {r.at("lo").get<double>(), r.at("hi").get<double>(), r.at("n").get<int>()};
  }
  if (j.contains("a1_range")) {
    const auto& r = j["a1_range"];
    cfg.a1_range = {r.at("lo").get<double>(), r.at("hi").get<double>(), r.at("n").get<int>()};
  }
  if (j.contains("z0")) cfg.z0 = complex_from_json(j["z0"]);
  if (j.contains("out")) cfg.out = j["out"].get<std::string>();
  if (j.contains("format")) cfg.format = j["format"].get<std::string>();
  if (j.contains("palette")) cfg.palette = j["palette"].get<std::string>();
  return cfg;
}

JobConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

}  // namespace basinmap
