#include "sesq/config.hpp"

#include <stdexcept>

namespace sesq {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw std::invalid_argument("config key '" + key + "': " + why);
}

double get_number(const json& v, const std::string& key) {
  if (!v.is_number()) bad(key, "expected a number");
  return v.get<double>();
}

std::int64_t get_integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) bad(key, "expected an integer");
  return v.get<std::int64_t>();
}

std::string get_string(const json& v, const std::string& key) {
  if (!v.is_string()) bad(key, "expected a string");
  return v.get<std::string>();
}

template <class Fn>
void read_object(const json& obj, const std::string& prefix, const std::set<std::string>& known, Fn&& apply) {
  if (!obj.is_object()) bad(prefix, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    const std::string full = prefix.empty() ? key : prefix + "." + key;
    if (!known.count(key)) bad(full, "unknown key");
    apply(key, value, full);
  }
}

}  // namespace

VqeConfig vqe_config_from_json(const json& doc, const std::set<std::string>& extra_keys) {
  if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
  VqeConfig cfg;
  std::set<std::string> known{"ansatz",    "protocol", "shots",   "optimizer",         "max_evaluations",
                              "seed",      "layers",   "prep",    "penalty",           "plateau_tolerance",
                              "simplex",   "spsa",     "plateau_window_per_param"};
  known.insert(extra_keys.begin(), extra_keys.end());
  read_object(doc, "", known, [&](const std::string& key, const json& v, const std::string& full) {
    try {
      if (key == "ansatz") cfg.ansatz = parse_ansatz(get_string(v, full));
      else if (key == "protocol") cfg.protocol = parse_protocol(get_string(v, full));
      else if (key == "optimizer") cfg.optimizer = parse_optimizer(get_string(v, full));
    } catch (const std::invalid_argument& e) {
      if (std::string(e.what()).rfind("config key", 0) == 0) throw;
      bad(full, e.what());
    }
    if (key == "shots") {
      if (v.is_null() || (v.is_string() && v.get<std::string>() == "exact")) cfg.shots.reset();
      else {
        const auto s = get_integer(v, full);
        if (s < 1) bad(full, "must be >= 1 or \"exact\"");
        cfg.shots = static_cast<std::uint64_t>(s);
      }
    } else if (key == "max_evaluations") {
      const auto m = get_integer(v, full);
      if (m < 1 || m > 100000000) bad(full, "must be in [1, 1e8]");
      cfg.max_evaluations = static_cast<int>(m);
    } else if (key == "seed") {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        bad(full, "expected a non-negative integer");
      cfg.seed = v.get<std::uint64_t>();
    } else if (key == "layers") {
      const auto l = get_integer(v, full);
      if (l < 0 || l > 1000) bad(full, "must be in [0, 1000]");
      cfg.layers = static_cast<int>(l);
    } else if (key == "prep") {
      const auto s = get_string(v, full);
      if (s == "incremental") cfg.prep = PrepStrategy::Incremental;
      else if (s == "from_zero") cfg.prep = PrepStrategy::FromZero;
      else bad(full, "expected \"incremental\" or \"from_zero\"");
    } else if (key == "penalty") {
      if (v.is_null() || (v.is_string() && v.get<std::string>() == "default")) {
        cfg.penalty.reset();
      } else {
        double c_p = 0.0;
        read_object(v, full, {"c_p"}, [&](const std::string&, const json& x, const std::string& f) {
          c_p = get_number(x, f);
          if (!(c_p > 0)) bad(f, "must be positive");
        });
        if (!v.contains("c_p")) bad(full, "needs 'c_p' or the string \"default\"");
        cfg.penalty = PenaltyConfig{c_p, 0};
      }
    } else if (key == "plateau_tolerance") {
      cfg.plateau_tolerance = get_number(v, full);
      if (!(cfg.plateau_tolerance >= 0)) bad(full, "must be >= 0");
    } else if (key == "plateau_window_per_param") {
      const auto w = get_integer(v, full);
      if (w < 1) bad(full, "must be >= 1");
      cfg.plateau_window_per_param = static_cast<int>(w);
    } else if (key == "simplex") {
      read_object(v, full, {"initial_step", "collapse_tolerance"}, [&](const std::string& k, const json& x, const std::string& f) {
        const double d = get_number(x, f);
        if (!(d > 0)) bad(f, "must be positive");
        (k == "initial_step" ? cfg.simplex.initial_step : cfg.simplex.collapse_tolerance) = d;
      });
    } else if (key == "spsa") {
      read_object(v, full, {"a", "c", "alpha", "gamma", "stability_fraction"},
                  [&](const std::string& k, const json& x, const std::string& f) {
                    const double d = get_number(x, f);
                    if (!(d >= 0)) bad(f, "must be >= 0");
                    if (k == "a") cfg.spsa.a = d;
                    else if (k == "c") cfg.spsa.c = d;
                    else if (k == "alpha") cfg.spsa.alpha = d;
                    else if (k == "gamma") cfg.spsa.gamma = d;
                    else cfg.spsa.stability_fraction = d;
                  });
    }
  });
  return cfg;
}

json to_json(const VqeConfig& cfg) {
  json j{{"ansatz", to_string(cfg.ansatz)},
         {"protocol", to_string(cfg.protocol)},
         {"optimizer", to_string(cfg.optimizer)},
         {"max_evaluations", cfg.max_evaluations},
         {"seed", cfg.seed},
         {"layers", cfg.layers},
         {"prep", cfg.prep == PrepStrategy::Incremental ? "incremental" : "from_zero"},
         {"plateau_tolerance", cfg.plateau_tolerance},
         {"plateau_window_per_param", cfg.plateau_window_per_param},
         {"simplex", {{"initial_step", cfg.simplex.initial_step}, {"collapse_tolerance", cfg.simplex.collapse_tolerance}}},
         {"spsa",
          {{"a", cfg.spsa.a},
           {"c", cfg.spsa.c},
           {"alpha", cfg.spsa.alpha},
           {"gamma", cfg.spsa.gamma},
           {"stability_fraction", cfg.spsa.stability_fraction}}}};
  j["shots"] = cfg.shots ? json(*cfg.shots) : json("exact");
  j["penalty"] = cfg.penalty ? json{{"c_p", cfg.penalty->c_p}} : json("default");
  return j;
}

}  // namespace sesq
