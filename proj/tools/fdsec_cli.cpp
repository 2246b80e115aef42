// Command-line front end: single solves, figure sweeps and oracle comparisons.
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fdsec/checks.hpp"
#include "fdsec/sim.hpp"

namespace {

using fdsec::sim::ExperimentSpec;

int run_solve(const std::string& method_name, double snr_db, double rho, int m_t, int m_r, int m_e,
              double epsilon, std::uint64_t seed, std::uint64_t trial) {
  const auto method = fdsec::sim::method_from_string(method_name);
  fdsec::SystemConfig cfg;
  cfg.m_t = m_t;
  cfg.m_r = m_r;
  cfg.m_e = m_e;
  cfg.rho = rho;
  cfg.p_t = std::pow(10.0, snr_db / 10.0);
  cfg.p_s = cfg.p_d = 0.5 * cfg.p_t;
  cfg.validate();
  const auto draw = fdsec::sim::draw_trial(cfg, seed, trial);
  const auto out = fdsec::sim::run_method(method, draw, cfg, cfg.p_t, epsilon);
  nlohmann::json doc = {{"method", method_name},   {"snr_db", snr_db},   {"rho", rho},
                        {"m_t", m_t},              {"m_r", m_r},         {"m_e", m_e},
                        {"seed", seed},            {"trial", trial},     {"secrecy_bits", out.rate},
                        {"p_d_used", out.p_d_used}};
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int run_sweep(const std::string& preset, const std::string& config_path,
              std::optional<int> trials, std::optional<std::uint64_t> seed,
              std::optional<int> threads, bool timing, const std::string& out_path) {
  ExperimentSpec spec = config_path.empty() ? fdsec::sim::figure_preset(preset)
                                            : fdsec::sim::load_config_file(config_path);
  if (trials) spec.trials = *trials;
  if (seed) spec.seed = *seed;
  if (threads) spec.threads = *threads;
  if (timing) spec.timing = true;
  const auto table = fdsec::sim::run_experiment(spec);
  if (out_path.empty()) {
    std::cout << fdsec::sim::format_csv(table);
  } else {
    fdsec::sim::write_csv(table, out_path);
  }
  if (table.total_failures > 0) {
    std::cerr << table.total_failures << " solver failures excluded\n";
    for (std::size_t i = 0; i < table.failure_log.size() && i < 20; ++i) {
      std::cerr << "  " << table.failure_log[i] << "\n";
    }
  }
  if (!table.valid) {
    std::cerr << "run invalid: more than 1% of the trials failed for some point\n";
    return 3;
  }
  return 0;
}

int run_oracle(const std::string& check, int instances, std::uint64_t seed) {
  fdsec::checks::CheckReport rep;
  if (check == "gt") {
    rep = fdsec::checks::check_gt(instances, 20, seed);
  } else if (check == "ht") {
    rep = fdsec::checks::check_ht(instances, 10, seed);
  } else if (check == "rank1") {
    rep = fdsec::checks::check_rank1(instances, seed);
  } else if (check == "outage") {
    rep = fdsec::checks::check_outage(1000000, seed);
  } else {
    rep = fdsec::checks::check_siso(instances, seed);
  }
  std::cout << (rep.passed() ? "PASS " : "FAIL ") << rep.summary() << "\n";
  return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Full-duplex self-jamming secrecy simulator"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Run one method on one channel draw and print JSON");
  std::string method = "fd_opt_rx";
  double snr_db = 15.0, rho = 0.5, epsilon = 0.1;
  int m_t = 2, m_r = 2, m_e = 2;
  std::uint64_t solve_seed = 20140101, trial = 0;
  solve->add_option("--method", method, "Method name")->capture_default_str();
  solve->add_option("--snr-db", snr_db, "Total transmit SNR in dB")->capture_default_str();
  solve->add_option("--rho", rho, "Loop-interference coefficient")->check(CLI::Range(0.0, 1.0));
  solve->add_option("--m-t", m_t, "Destination transmit antennas")->check(CLI::PositiveNumber);
  solve->add_option("--m-r", m_r, "Destination receive antennas")->check(CLI::PositiveNumber);
  solve->add_option("--m-e", m_e, "Eavesdropper antennas")->check(CLI::PositiveNumber);
  solve->add_option("--epsilon", epsilon, "Outage target for cdi_outage methods");
  solve->add_option("--seed", solve_seed, "Base seed")->capture_default_str();
  solve->add_option("--trial", trial, "Trial index within the seed's stream");

  auto* sweep = app.add_subcommand("sweep", "Run a Monte Carlo sweep and write CSV");
  std::string preset, config_path, out_path;
  std::optional<int> trials, threads;
  std::optional<std::uint64_t> sweep_seed;
  bool timing = false;
  auto* preset_opt = sweep->add_option("--preset", preset, "fig3 ... fig8 or custom");
  auto* config_opt = sweep->add_option("--config", config_path, "JSON experiment file")
                         ->check(CLI::ExistingFile);
  preset_opt->excludes(config_opt);
  sweep->add_option("--trials", trials, "Override the trial count");
  sweep->add_option("--seed", sweep_seed, "Override the seed");
  sweep->add_option("--threads", threads, "Worker threads (FD_SECRECY_THREADS caps this)");
  sweep->add_flag("--timing", timing, "Record solver wall time instead of writing 0");
  sweep->add_option("--out", out_path, "CSV path (stdout when omitted)");

  auto* orc = app.add_subcommand("oracle", "Compare solvers with brute-force oracles");
  std::string check;
  int instances = 50;
  std::uint64_t oracle_seed = 7;
  orc->add_option("--check", check, "Comparison to run")
      ->required()
      ->check(CLI::IsMember({"gt", "ht", "rank1", "outage", "siso"}));
  orc->add_option("--instances", instances, "Random instances")->check(CLI::PositiveNumber);
  orc->add_option("--seed", oracle_seed, "Instance seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return run_solve(method, snr_db, rho, m_t, m_r, m_e, epsilon, solve_seed, trial);
    if (*sweep) {
      if (preset.empty() && config_path.empty()) {
        std::cerr << "sweep needs --preset or --config\n";
        return 2;
      }
      return run_sweep(preset, config_path, trials, sweep_seed, threads, timing, out_path);
    }
    return run_oracle(check, instances, oracle_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
