#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fdsec/model.hpp"

// Monte Carlo experiment runner: sweeps, figure presets and CSV output.
namespace fdsec::sim {

enum class Method {
  hd,
  fd_equal_split,
  fd_opt_pa,
  fd_fixed_mmse,
  fd_opt_rx,
  fd_joint_pa,
  fd_zf,
  fd_dc_mmse_eve,
  cdi_ergodic,
  cdi_ergodic_approx,
  cdi_outage,
  cdi_outage_equal,
  cdi_outage_hd,
};

std::string to_string(Method m);
/// Throws DomainError for an unknown name.
Method method_from_string(const std::string& name);

enum class Preset { fig3, fig4, fig5, fig6, fig7, fig8, custom };

std::string to_string(Preset p);
Preset preset_from_string(const std::string& name);

enum class SweepVar { snr_db, rho };

struct Sweep {
  SweepVar variable = SweepVar::snr_db;
  double lo = 0.0;
  double hi = 30.0;
  int steps = 7;

  std::vector<double> values() const;
};

/// Receive/transmit antenna split at the destination; overrides config.m_r and config.m_t.
struct AntennaVariant {
  int m_r = 2;
  int m_t = 2;
};

struct ExperimentSpec {
  Preset preset = Preset::custom;
  std::vector<Method> methods;
  Sweep sweep;
  int trials = 500;
  std::uint64_t seed = 20140101;
  SystemConfig config;
  double snr_db = 15.0;   ///< total transmit SNR when the sweep runs over rho
  double epsilon = 0.1;   ///< outage target for the cdi_outage methods
  std::vector<AntennaVariant> variants;  ///< empty: use config's antenna counts
  int threads = 0;        ///< 0: hardware concurrency, capped by FD_SECRECY_THREADS
  bool timing = false;    ///< record wall-clock time; otherwise wall_ms is written as 0

  void validate() const;
};

struct ResultRow {
  std::string method;  ///< method name, with "@mrRmtT" appended for antenna variants
  std::string sweep_var;
  double sweep_value = 0.0;
  int trials = 0;  ///< successful trials
  double mean_rate = 0.0;
  double stderr_ = 0.0;
  double mean_pd_used = 0.0;
  double wall_ms = 0.0;
  int failures = 0;
};

struct ResultTable {
  std::vector<ResultRow> rows;  ///< sorted by (method, sweep_value)
  int total_failures = 0;
  bool valid = true;  ///< false when more than 1% of some row's trials failed
  std::vector<std::string> failure_log;

  /// Row lookup; nullptr when absent.
  const ResultRow* find(const std::string& method, double sweep_value) const;
};

struct TrialOutcome {
  double rate = 0.0;
  double p_d_used = 0.0;
};

/// Per-trial random inputs shared by every method.
struct TrialDraw {
  ChannelRealization chan;
  CVec h_sd_hd;  ///< m_t + m_r antennas, half-duplex reception
};

TrialDraw draw_trial(const SystemConfig& config, std::uint64_t seed, std::uint64_t trial);

/// Runs one method on one draw with total power p_t (config.p_t is ignored).
TrialOutcome run_method(Method method, const TrialDraw& draw, const SystemConfig& config,
                        double p_t, double epsilon);

ExperimentSpec figure_preset(const std::string& name);

ResultTable run_experiment(const ExperimentSpec& spec);

std::string format_csv(const ResultTable& table);
/// Throws Error with the path in the message when the file cannot be written.
void write_csv(const ResultTable& table, const std::string& path);

/// Applies the keys of a JSON document to `spec` (unknown keys are rejected).
void apply_json(ExperimentSpec& spec, const std::string& json_text);
ExperimentSpec load_config_file(const std::string& path);

/// Worker count: requested (or hardware concurrency), capped by FD_SECRECY_THREADS.
int resolve_threads(int requested);

}  // namespace fdsec::sim
