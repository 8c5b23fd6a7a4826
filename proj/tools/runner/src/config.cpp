#include <fstream>

#include "mzm/runner.hpp"

namespace mzm::runner {

namespace {

template <typename T>
T get_as(const Json& j, std::string_view key) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config: '" + std::string(key) + "' has the wrong type");
  }
}

void reject_unknown(const Json& j, std::initializer_list<std::string_view> known,
                    std::string_view where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("config: unknown key '" + std::string(where) + key + "'");
  }
}

Shots parse_shots(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "exact") return Shots::exact_probabilities();
    throw ConfigError("config: shots must be a positive integer or \"exact\"");
  }
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    throw ConfigError("config: shots must be a positive integer or \"exact\"");
  }
  return Shots::sampled(j.get<std::uint64_t>());
}

Complex parse_phase(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ConfigError("config: basis_map phases must be numbers or [re, im] pairs");
}

template <typename F>
void wrap_invalid(F&& f) {
  try {
    f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::verify: return "verify";
    case Command::tomography: return "tomography";
    case Command::bell: return "bell";
    case Command::resilience: return "resilience";
    case Command::fit_p: return "fit-p";
  }
  return "verify";
}

Command parse_command(std::string_view name) {
  for (Command c : {Command::verify, Command::tomography, Command::bell, Command::resilience,
                    Command::fit_p}) {
    if (to_string(c) == name) return c;
  }
  throw ConfigError("config: unknown command '" + std::string(name) + "'");
}

void RunConfig::validate() const {
  if (!shots.exact && shots.count < 1) throw ConfigError("config: shots must be >= 1");
  if (!(dephasing_p >= 0.0 && dephasing_p <= 1.0)) {
    throw ConfigError("config: dephasing_p must lie in [0, 1]");
  }
  wrap_invalid([&] { noise.validate(); });
  wrap_invalid([&] { (void)make_basis_map(); });
  if (make_basis_map().dim() != 8) throw ConfigError("config: basis_map must act on 3 qubits");
  if (output_dir.empty()) throw ConfigError("config: output_dir is empty");
  const auto& r = resilience;
  if (r.n_samples < 1) throw ConfigError("config: resilience.n_samples must be >= 1");
  if (!(r.p_step > 0.0) || r.p_stop < r.p_start || r.p_start < 0.0 || r.p_stop > 1.0) {
    throw ConfigError("config: resilience p grid must satisfy 0 <= p_start <= p_stop <= 1, "
                      "p_step > 0");
  }
}

BasisMap RunConfig::make_basis_map() const {
  if (basis_map == "table") {
    try {
      return BasisMap::from_table(basis_permutation, basis_phases);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
  try {
    return BasisMap::named(basis_map, 3);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

StudyConfig RunConfig::study_config() const {
  StudyConfig s;
  s.n_samples = resilience.n_samples;
  s.p_grid = linear_grid(resilience.p_start, resilience.p_stop, resilience.p_step);
  s.noise = noise;
  s.noise.p = 0.0;
  s.encoded_frame = resilience.frame;
  s.master_seed = seed;
  s.bootstrap_resamples = resilience.bootstrap_resamples;
  s.threads = resilience.threads;
  return s;
}

Json RunConfig::to_json() const {
  Json j;
  j["command"] = to_string(command);
  j["seed"] = seed;
  if (shots.exact) j["shots"] = "exact";
  else j["shots"] = shots.count;
  j["noise"] = {{"error", error_name}, {"p", noise.p}, {"placement", to_string(noise.placement)}};
  j["dephasing_p"] = dephasing_p;
  if (basis_map == "table") {
    Json phases = Json::array();
    for (Complex z : basis_phases) phases.push_back({z.real(), z.imag()});
    j["basis_map"] = {{"permutation", basis_permutation}, {"phases", phases}};
  } else {
    j["basis_map"] = basis_map;
  }
  const auto& r = resilience;
  j["resilience"] = {{"n_samples", r.n_samples},
                     {"p_start", r.p_start},
                     {"p_stop", r.p_stop},
                     {"p_step", r.p_step},
                     {"frame", mzm::to_string(r.frame)},
                     {"calibrate", r.calibrate},
                     {"target", r.target},
                     {"bootstrap_resamples", r.bootstrap_resamples}};
  return j;
}

RunConfig config_from_json(const Json& j, RunConfig cfg) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(j, {"command", "seed", "shots", "noise", "dephasing_p", "basis_map",
                     "output_dir", "resilience"},
                 "");
  if (j.contains("command")) cfg.command = parse_command(get_as<std::string>(j["command"], "command"));
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"] >= 0)) {
      throw ConfigError("config: seed must be a non-negative integer");
    }
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("shots")) cfg.shots = parse_shots(j["shots"]);
  if (j.contains("dephasing_p")) cfg.dephasing_p = get_as<double>(j["dephasing_p"], "dephasing_p");
  if (j.contains("output_dir")) {
    cfg.output_dir = get_as<std::string>(j["output_dir"], "output_dir");
  }
  if (j.contains("noise")) {
    const Json& n = j["noise"];
    if (!n.is_object()) throw ConfigError("config: noise must be an object");
    reject_unknown(n, {"error", "p", "placement"}, "noise.");
    if (n.contains("error")) {
      cfg.error_name = get_as<std::string>(n["error"], "noise.error");
      wrap_invalid([&] { cfg.noise.error_unitary = named_unitary(cfg.error_name); });
    }
    if (n.contains("p")) cfg.noise.p = get_as<double>(n["p"], "noise.p");
    if (n.contains("placement")) {
      wrap_invalid([&] {
        cfg.noise.placement = parse_placement(get_as<std::string>(n["placement"], "noise.placement"));
      });
    }
  }
  if (j.contains("basis_map")) {
    const Json& b = j["basis_map"];
    if (b.is_string()) {
      cfg.basis_map = b.get<std::string>();
    } else if (b.is_object()) {
      reject_unknown(b, {"permutation", "phases"}, "basis_map.");
      cfg.basis_map = "table";
      cfg.basis_permutation =
          get_as<std::vector<std::size_t>>(b.value("permutation", Json::array()), "basis_map.permutation");
      cfg.basis_phases.clear();
      if (b.contains("phases")) {
        for (const auto& ph : b["phases"]) cfg.basis_phases.push_back(parse_phase(ph));
      } else {
        cfg.basis_phases.assign(cfg.basis_permutation.size(), Complex(1.0, 0.0));
      }
    } else {
      throw ConfigError("config: basis_map must be a name or a {permutation, phases} table");
    }
  }
  if (j.contains("resilience")) {
    const Json& r = j["resilience"];
    if (!r.is_object()) throw ConfigError("config: resilience must be an object");
    reject_unknown(r, {"n_samples", "p_start", "p_stop", "p_step", "frame", "calibrate", "target",
                       "bootstrap_resamples", "threads"},
                   "resilience.");
    auto& o = cfg.resilience;
    if (r.contains("n_samples")) o.n_samples = get_as<std::size_t>(r["n_samples"], "resilience.n_samples");
    if (r.contains("p_start")) o.p_start = get_as<double>(r["p_start"], "resilience.p_start");
    if (r.contains("p_stop")) o.p_stop = get_as<double>(r["p_stop"], "resilience.p_stop");
    if (r.contains("p_step")) o.p_step = get_as<double>(r["p_step"], "resilience.p_step");
    if (r.contains("frame")) {
      wrap_invalid([&] { o.frame = parse_error_frame(get_as<std::string>(r["frame"], "resilience.frame")); });
    }
    if (r.contains("calibrate")) o.calibrate = get_as<bool>(r["calibrate"], "resilience.calibrate");
    if (r.contains("target")) o.target = get_as<double>(r["target"], "resilience.target");
    if (r.contains("bootstrap_resamples")) {
      o.bootstrap_resamples = get_as<std::size_t>(r["bootstrap_resamples"], "resilience.bootstrap_resamples");
    }
    if (r.contains("threads")) o.threads = get_as<unsigned>(r["threads"], "resilience.threads");
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return config_from_json(j, std::move(base));
}

}  // namespace mzm::runner
