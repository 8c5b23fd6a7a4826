#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mzm/runner.hpp"

namespace {

using mzm::runner::Command;
using mzm::runner::ConfigError;
using mzm::runner::RunConfig;

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> shots;
  std::optional<double> p;
  std::optional<std::string> placement;
  std::optional<std::string> out;
  std::optional<std::size_t> samples;
  std::optional<unsigned> threads;
};

RunConfig resolve(Command command, const Overrides& o) {
  RunConfig cfg;
  if (!o.config.empty()) cfg = mzm::runner::load_config(o.config);
  cfg.command = command;

  mzm::runner::Json j = mzm::runner::Json::object();
  if (o.seed) j["seed"] = *o.seed;
  if (o.shots) {
    if (*o.shots == "exact") {
      j["shots"] = "exact";
    } else {
      try {
        std::size_t used = 0;
        const long long n = std::stoll(*o.shots, &used);
        if (used != o.shots->size()) throw std::invalid_argument("trailing characters");
        j["shots"] = n;
      } catch (const std::exception&) {
        throw ConfigError("--shots expects a positive integer or 'exact'");
      }
    }
  }
  if (o.out) j["output_dir"] = *o.out;
  if (o.placement) {
    j["noise"]["placement"] = *o.placement;
    if (command == Command::resilience) j["resilience"]["calibrate"] = false;
  }
  if (o.p) {
    if (command == Command::resilience) {
      j["resilience"]["p_start"] = *o.p;
      j["resilience"]["p_stop"] = *o.p;
    } else {
      j["dephasing_p"] = *o.p;
    }
  }
  if (o.samples) j["resilience"]["n_samples"] = *o.samples;
  if (o.threads) j["resilience"]["threads"] = *o.threads;
  return mzm::runner::config_from_json(j, cfg);
}

void summarise(const mzm::runner::RunOutcome& outcome) {
  const auto& r = outcome.report;
  const std::string cmd = r.value("command", "");
  if (cmd == "verify") {
    for (const auto& c : r["checks"]) {
      std::printf("%-24s %s  residual=%.3g\n", c["name"].get<std::string>().c_str(),
                  c["pass"].get<bool>() ? "pass" : "FAIL", c["residual"].get<double>());
    }
  } else if (cmd == "resilience") {
    if (r["p_th"].is_null()) std::printf("p_th: none\n");
    else std::printf("p_th: %.4f\n", r["p_th"].get<double>());
    std::printf("placement: %s, frame: %s\n", r["placement"].get<std::string>().c_str(),
                r["frame"].get<std::string>().c_str());
  } else if (cmd == "fit-p") {
    std::printf("p_hat (mean over outputs): %.6f\n", r["p_hat_mean"].get<double>());
  } else if (cmd == "tomography") {
    const auto& m = r["mean"];
    std::printf("initial F_s spin %.4f logical %.4f\n", m["initial_spin"].get<double>(),
                m["initial_logical"].get<double>());
    std::printf("output  F_s spin %.4f logical %.4f\n", m["output_spin"].get<double>(),
                m["output_logical"].get<double>());
    std::printf("F_p intra %.4f inter %.4f\n", r["process"]["intra"]["fidelity"].get<double>(),
                r["process"]["inter"]["fidelity"].get<double>());
  } else if (cmd == "bell") {
    for (const auto& [name, s] : r["states"].items()) {
      std::printf("%s spin %.4f logical %.4f\n", name.c_str(), s["spin_fidelity"].get<double>(),
                  s["logical_fidelity"].get<double>());
    }
  }
  for (const auto& f : outcome.files) std::printf("wrote %s\n", f.string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majorana braiding CNOT simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  app.add_option("-c,--config", o.config, "JSON configuration file");
  app.add_option("--seed", o.seed, "Master seed");
  app.add_option("--shots", o.shots, "Shots per setting, or 'exact'");
  app.add_option("--p", o.p, "Dephasing p (resilience: evaluate a single grid point)");
  app.add_option("--placement", o.placement,
                 "Error placement: per_gate_participants, once_per_qubit_end, "
                 "once_per_qubit_start, per_time_step");
  app.add_option("--out", o.out, "Output directory");

  const std::pair<Command, const char*> commands[] = {
      {Command::verify, "Check zero modes, braid algebra and the CNOT word"},
      {Command::tomography, "Simulated state and process tomography"},
      {Command::bell, "Bell states through the braid CNOT"},
      {Command::resilience, "Encoded vs unencoded CNOT under local errors"},
      {Command::fit_p, "Fit the correlated dephasing probability"},
  };
  std::optional<Command> chosen;
  for (const auto& [cmd, help] : commands) {
    CLI::App* sub = app.add_subcommand(mzm::runner::to_string(cmd), help);
    sub->callback([&chosen, c = cmd] { chosen = c; });
    if (cmd == Command::resilience) {
      sub->add_option("--samples", o.samples, "Haar samples per grid point");
      sub->add_option("--threads", o.threads, "Worker threads (0: all cores)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const RunConfig cfg = resolve(*chosen, o);
    const auto outcome = mzm::runner::run(cfg);
    summarise(outcome);
    return outcome.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
