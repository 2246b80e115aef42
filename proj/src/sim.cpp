#include "fdsec/sim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "fdsec/cdi.hpp"
#include "fdsec/dc.hpp"
#include "fdsec/mimo.hpp"
#include "fdsec/siso.hpp"

namespace fdsec::sim {

namespace {

struct NamedMethod {
  Method method;
  const char* name;
};

constexpr NamedMethod kMethods[] = {
    {Method::hd, "hd"},
    {Method::fd_equal_split, "fd_equal_split"},
    {Method::fd_opt_pa, "fd_opt_pa"},
    {Method::fd_fixed_mmse, "fd_fixed_mmse"},
    {Method::fd_opt_rx, "fd_opt_rx"},
    {Method::fd_joint_pa, "fd_joint_pa"},
    {Method::fd_zf, "fd_zf"},
    {Method::fd_dc_mmse_eve, "fd_dc_mmse_eve"},
    {Method::cdi_ergodic, "cdi_ergodic"},
    {Method::cdi_ergodic_approx, "cdi_ergodic_approx"},
    {Method::cdi_outage, "cdi_outage"},
    {Method::cdi_outage_equal, "cdi_outage_equal"},
    {Method::cdi_outage_hd, "cdi_outage_hd"},
};

constexpr const char* kPresetNames[] = {"fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "custom"};

bool is_siso(const ChannelRealization& chan) { return chan.m_t() == 1 && chan.m_r() == 1; }

double snr_to_power(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

std::string sweep_name(SweepVar v) { return v == SweepVar::snr_db ? "snr_db" : "rho"; }

cdi::CdiSpec make_cdi_spec(const TrialDraw& draw, const SystemConfig& config, double epsilon) {
  cdi::CdiSpec spec;
  spec.config = config;
  spec.epsilon = epsilon;
  spec.h_sd = draw.chan.h_sd;
  spec.h_li = draw.chan.h_li;
  return spec;
}

std::string variant_label(const std::string& method, const AntennaVariant& v) {
  return method + "@mr" + std::to_string(v.m_r) + "mt" + std::to_string(v.m_t);
}

}  // namespace

std::string to_string(Method m) {
  for (const auto& nm : kMethods) {
    if (nm.method == m) return nm.name;
  }
  throw DomainError("unknown method");
}

Method method_from_string(const std::string& name) {
  for (const auto& nm : kMethods) {
    if (name == nm.name) return nm.method;
  }
  throw DomainError("unknown method '" + name + "'");
}

std::string to_string(Preset p) { return kPresetNames[static_cast<int>(p)]; }

Preset preset_from_string(const std::string& name) {
  for (int i = 0; i < 7; ++i) {
    if (name == kPresetNames[i]) return static_cast<Preset>(i);
  }
  throw DomainError("unknown preset '" + name + "'");
}

std::vector<double> Sweep::values() const {
  std::vector<double> out;
  if (steps == 1) return {lo};
  for (int i = 0; i < steps; ++i) out.push_back(lo + (hi - lo) * i / (steps - 1));
  return out;
}

void ExperimentSpec::validate() const {
  config.validate();
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (!(sweep.lo <= sweep.hi)) throw DomainError("sweep lo must not exceed hi");
  if (sweep.steps < 1) throw DomainError("sweep steps must be >= 1");
  if (methods.empty()) throw DomainError("at least one method is required");
  if (sweep.variable == SweepVar::rho && (sweep.lo < 0.0 || sweep.hi > 1.0)) {
    throw DomainError("rho sweep must stay inside [0, 1]");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  for (const auto& v : variants) {
    if (v.m_r < 1 || v.m_t < 1) throw DomainError("antenna variants need m_r, m_t >= 1");
  }
}

const ResultRow* ResultTable::find(const std::string& method, double sweep_value) const {
  for (const auto& row : rows) {
    if (row.method == method && std::abs(row.sweep_value - sweep_value) < 1e-9) return &row;
  }
  return nullptr;
}

TrialDraw draw_trial(const SystemConfig& config, std::uint64_t seed, std::uint64_t trial) {
  TrialDraw d;
  d.chan = sample_channels(config, derive_seed(seed, trial));
  ComplexGaussian hd_rng(derive_seed(seed, trial, 1));
  d.h_sd_hd = hd_rng.vector(config.m_t + config.m_r);
  return d;
}

TrialOutcome run_method(Method method, const TrialDraw& draw, const SystemConfig& config,
                        double p_t, double epsilon) {
  const auto& chan = draw.chan;
  const double rho = config.rho;
  const double half = 0.5 * p_t;
  switch (method) {
    case Method::hd:
      return {secrecy_rate_hd(draw.h_sd_hd, chan.h_se, p_t).secrecy, 0.0};
    case Method::fd_equal_split:
      if (is_siso(chan)) {
        const auto sol = siso::optimal_pd(siso::ScalarChannels::from(chan), half, rho, half);
        return {std::max(0.0, std::log2(sol.objective)), sol.p_d_star};
      }
      [[fallthrough]];
    case Method::fd_opt_rx: {
      const auto res = mimo::solve_optimal_receiver(chan, half, half, rho);
      return {res.secrecy, res.p_d_used};
    }
    case Method::fd_opt_pa: {
      if (is_siso(chan)) {
        const auto ja = siso::joint_alpha(siso::ScalarChannels::from(chan), rho, p_t);
        return {ja.rate, (1.0 - ja.alpha_star) * p_t};
      }
      const auto res = mimo::joint_power_allocation_optimal_r(chan, p_t, rho);
      return {res.design.secrecy, res.design.p_d_used};
    }
    case Method::fd_fixed_mmse: {
      const CVec r = mmse_receiver_fixed(chan.h_li, chan.h_sd, rho);
      const auto res = mimo::solve_fixed_receiver(chan, r, half, half, rho);
      return {res.secrecy, res.p_d_used};
    }
    case Method::fd_joint_pa: {
      const CVec r = mmse_receiver_fixed(chan.h_li, chan.h_sd, rho);
      const auto res = mimo::joint_power_allocation_fixed_r(chan, r, p_t, rho);
      return {res.design.secrecy, res.design.p_d_used};
    }
    case Method::fd_zf: {
      const auto res = mimo::solve_zf(chan, half, half, rho);
      return {res.rate.secrecy, res.p_d_used};
    }
    case Method::fd_dc_mmse_eve: {
      const auto res = dc::dc_solve(chan, half, half, rho);
      return {res.rate.secrecy, res.q_cov.trace().real()};
    }
    case Method::cdi_ergodic:
    case Method::cdi_ergodic_approx: {
      SystemConfig cfg = config;
      cfg.p_t = p_t;
      const auto split = cdi::ergodic_pa(cfg, chan.h_sd);
      if (method == Method::cdi_ergodic_approx) return {split.rate, split.p_d};
      const CVec r = mrc_receiver(chan.h_sd);
      const auto basis = cdi::null_basis_w(chan.h_li, r);
      const double x = cdi::jamming_gain(basis.w, chan.h_ed, chan.h_se);
      const double legit = std::log2(1.0 + split.p_s * chan.h_sd.squaredNorm());
      const double leak = std::log2(1.0 + split.p_s * chan.h_se.squaredNorm() /
                                              (1.0 + split.p_d * x / (chan.m_t() - 1)));
      return {std::max(0.0, legit - leak), split.p_d};
    }
    case Method::cdi_outage: {
      const auto spec = make_cdi_spec(draw, config, epsilon);
      const auto split = cdi::outage_pa(spec, p_t);
      return {split.rate, split.p_d};
    }
    case Method::cdi_outage_equal:
      return {cdi::outage_rate(make_cdi_spec(draw, config, epsilon), half, half), half};
    case Method::cdi_outage_hd:
      return {cdi::outage_rate(make_cdi_spec(draw, config, epsilon), p_t, 0.0), 0.0};
  }
  throw DomainError("unhandled method");
}

ExperimentSpec figure_preset(const std::string& name) {
  ExperimentSpec spec;
  spec.preset = preset_from_string(name);
  spec.config.m_t = 2;
  spec.config.m_r = 2;
  spec.config.m_e = 2;
  spec.config.rho = 0.5;
  switch (spec.preset) {
    case Preset::fig3:
      spec.config.m_t = spec.config.m_r = spec.config.m_e = 1;
      spec.methods = {Method::hd, Method::fd_equal_split, Method::fd_opt_pa};
      spec.sweep = {SweepVar::snr_db, 0.0, 60.0, 13};
      break;
    case Preset::fig4:
      spec.methods = {Method::hd,    Method::fd_fixed_mmse, Method::fd_opt_rx,
                      Method::fd_joint_pa, Method::fd_zf, Method::fd_dc_mmse_eve};
      spec.sweep = {SweepVar::snr_db, 0.0, 40.0, 9};
      break;
    case Preset::fig5:
      spec.methods = {Method::hd, Method::fd_fixed_mmse, Method::fd_opt_rx, Method::fd_zf,
                      Method::fd_dc_mmse_eve};
      spec.sweep = {SweepVar::rho, 0.0, 0.9, 10};
      spec.snr_db = 15.0;
      break;
    case Preset::fig6:
      spec.methods = {Method::hd, Method::cdi_ergodic, Method::cdi_ergodic_approx};
      spec.sweep = {SweepVar::snr_db, 0.0, 30.0, 7};
      break;
    case Preset::fig7:
      spec.methods = {Method::cdi_outage, Method::cdi_outage_equal, Method::cdi_outage_hd};
      spec.sweep = {SweepVar::snr_db, 0.0, 30.0, 7};
      spec.epsilon = 0.1;
      break;
    case Preset::fig8:
      spec.config.m_e = 4;
      spec.methods = {Method::fd_opt_rx};
      spec.variants = {{1, 3}, {2, 2}, {3, 1}};
      spec.sweep = {SweepVar::snr_db, 0.0, 30.0, 7};
      break;
    case Preset::custom:
      spec.methods = {Method::hd, Method::fd_opt_rx};
      spec.sweep = {SweepVar::snr_db, 0.0, 30.0, 7};
      break;
  }
  return spec;
}

int resolve_threads(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(1, n);
  if (const char* env = std::getenv("FD_SECRECY_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return n;
}

ResultTable run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const std::vector<double> points = spec.sweep.values();
  std::vector<AntennaVariant> variants = spec.variants;
  const bool labelled = !variants.empty();
  if (!labelled) variants.push_back({spec.config.m_r, spec.config.m_t});

  const std::size_t n_var = variants.size(), n_pt = points.size(),
                    n_m = spec.methods.size(), n_tr = static_cast<std::size_t>(spec.trials);
  struct Slot {
    double rate = 0.0;
    double p_d = 0.0;
    double ms = 0.0;
    bool ok = false;
    std::string error;
  };
  std::vector<Slot> slots(n_var * n_pt * n_m * n_tr);
  auto slot_index = [&](std::size_t v, std::size_t p, std::size_t m, std::size_t t) {
    return ((v * n_pt + p) * n_m + m) * n_tr + t;
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t item = next++; item < n_var * n_tr; item = next++) {
      const std::size_t v = item / n_tr, t = item % n_tr;
      SystemConfig cfg = spec.config;
      cfg.m_r = variants[v].m_r;
      cfg.m_t = variants[v].m_t;
      TrialDraw draw;
      try {
        draw = draw_trial(cfg, spec.seed, t);
      } catch (const std::exception& e) {
        for (std::size_t p = 0; p < n_pt; ++p) {
          for (std::size_t m = 0; m < n_m; ++m) slots[slot_index(v, p, m, t)].error = e.what();
        }
        continue;
      }
      for (std::size_t p = 0; p < n_pt; ++p) {
        double snr_db = spec.snr_db;
        SystemConfig point_cfg = cfg;
        if (spec.sweep.variable == SweepVar::snr_db) {
          snr_db = points[p];
        } else {
          point_cfg.rho = points[p];
        }
        const double p_t = snr_to_power(snr_db);
        point_cfg.p_t = p_t;
        point_cfg.p_s = point_cfg.p_d = 0.5 * p_t;
        for (std::size_t m = 0; m < n_m; ++m) {
          Slot& s = slots[slot_index(v, p, m, t)];
          const auto start = std::chrono::steady_clock::now();
          try {
            const TrialOutcome out = run_method(spec.methods[m], draw, point_cfg, p_t, spec.epsilon);
            if (!std::isfinite(out.rate) || out.rate < 0.0) throw Error("non-finite or negative rate");
            s.rate = out.rate;
            s.p_d = out.p_d_used;
            s.ok = true;
          } catch (const std::exception& e) {
            s.error = e.what();
          }
          if (spec.timing) {
            s.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                       .count();
          }
        }
      }
    }
  };
  const int n_threads = std::min<int>(resolve_threads(spec.threads),
                                      static_cast<int>(std::max<std::size_t>(1, n_var * n_tr)));
  std::vector<std::thread> pool;
  for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  ResultTable table;
  const std::string var_name = sweep_name(spec.sweep.variable);
  for (std::size_t v = 0; v < n_var; ++v) {
    for (std::size_t m = 0; m < n_m; ++m) {
      const std::string name = to_string(spec.methods[m]);
      const std::string label = labelled ? variant_label(name, variants[v]) : name;
      for (std::size_t p = 0; p < n_pt; ++p) {
        ResultRow row;
        row.method = label;
        row.sweep_var = var_name;
        row.sweep_value = points[p];
        double sum = 0.0, sum_pd = 0.0, ms = 0.0;
        for (std::size_t t = 0; t < n_tr; ++t) {
          const Slot& s = slots[slot_index(v, p, m, t)];
          ms += s.ms;
          if (!s.ok) {
            ++row.failures;
            table.failure_log.push_back(label + " " + var_name + "=" + std::to_string(points[p]) +
                                        " trial " + std::to_string(t) + ": " + s.error);
            continue;
          }
          ++row.trials;
          sum += s.rate;
          sum_pd += s.p_d;
        }
        if (row.trials > 0) {
          row.mean_rate = sum / row.trials;
          row.mean_pd_used = sum_pd / row.trials;
          double ss = 0.0;
          for (std::size_t t = 0; t < n_tr; ++t) {
            const Slot& s = slots[slot_index(v, p, m, t)];
            if (s.ok) ss += (s.rate - row.mean_rate) * (s.rate - row.mean_rate);
          }
          if (row.trials > 1) row.stderr_ = std::sqrt(ss / (row.trials - 1) / row.trials);
        }
        row.wall_ms = ms;
        table.total_failures += row.failures;
        if (row.failures * 100 > spec.trials) table.valid = false;
        table.rows.push_back(std::move(row));
      }
    }
  }
  std::stable_sort(table.rows.begin(), table.rows.end(), [](const ResultRow& a, const ResultRow& b) {
    if (a.method != b.method) return a.method < b.method;
    return a.sweep_value < b.sweep_value;
  });
  return table;
}

std::string format_csv(const ResultTable& table) {
  std::string out = "method,sweep_var,sweep_value,trials,mean_rate_bits,stderr_bits,mean_pd_used,wall_ms\n";
  char buf[512];
  for (const auto& r : table.rows) {
    std::snprintf(buf, sizeof buf, "%s,%s,%.6g,%d,%.6g,%.6g,%.6g,%.6g\n", r.method.c_str(),
                  r.sweep_var.c_str(), r.sweep_value, r.trials, r.mean_rate, r.stderr_,
                  r.mean_pd_used, r.wall_ms);
    out += buf;
  }
  return out;
}

void write_csv(const ResultTable& table, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << format_csv(table);
  f.flush();
  if (!f) throw Error("failed writing '" + path + "'");
}

void apply_json(ExperimentSpec& spec, const std::string& json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DomainError("config must be a JSON object");
  try {
    if (doc.contains("preset")) {
      const std::string name = doc["preset"].get<std::string>();
      if (name != "custom") spec = figure_preset(name);
      spec.preset = preset_from_string(name);
    }
    for (const auto& [key, value] : doc.items()) {
      if (key == "preset") continue;
      if (key == "methods") {
        spec.methods.clear();
        for (const auto& m : value) spec.methods.push_back(method_from_string(m.get<std::string>()));
      } else if (key == "sweep") {
        for (const auto& [sk, sv] : value.items()) {
          if (sk == "variable") {
            const std::string var = sv.get<std::string>();
            if (var == "snr_db") {
              spec.sweep.variable = SweepVar::snr_db;
            } else if (var == "rho") {
              spec.sweep.variable = SweepVar::rho;
            } else {
              throw DomainError("unknown sweep variable '" + var + "'");
            }
          } else if (sk == "lo") {
            spec.sweep.lo = sv.get<double>();
          } else if (sk == "hi") {
            spec.sweep.hi = sv.get<double>();
          } else if (sk == "steps") {
            spec.sweep.steps = sv.get<int>();
          } else {
            throw DomainError("unknown sweep key '" + sk + "'");
          }
        }
      } else if (key == "trials") {
        spec.trials = value.get<int>();
      } else if (key == "seed") {
        spec.seed = value.get<std::uint64_t>();
      } else if (key == "snr_db") {
        spec.snr_db = value.get<double>();
      } else if (key == "epsilon") {
        spec.epsilon = value.get<double>();
      } else if (key == "threads") {
        spec.threads = value.get<int>();
      } else if (key == "timing") {
        spec.timing = value.get<bool>();
      } else if (key == "variants") {
        spec.variants.clear();
        for (const auto& v : value) {
          if (v.is_object()) {
            spec.variants.push_back({v.at("m_r").get<int>(), v.at("m_t").get<int>()});
          } else {
            spec.variants.push_back({v.at(0).get<int>(), v.at(1).get<int>()});
          }
        }
      } else if (key == "config") {
        auto& c = spec.config;
        for (const auto& [ck, cv] : value.items()) {
          if (ck == "m_t") c.m_t = cv.get<int>();
          else if (ck == "m_r") c.m_r = cv.get<int>();
          else if (ck == "m_e") c.m_e = cv.get<int>();
          else if (ck == "rho") c.rho = cv.get<double>();
          else if (ck == "sigma_s_sq") c.sigma_s_sq = cv.get<double>();
          else if (ck == "sigma_d_sq") c.sigma_d_sq = cv.get<double>();
          else throw DomainError("unknown config key '" + ck + "'");
        }
      } else {
        throw DomainError("unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad config value: ") + e.what());
  }
}

ExperimentSpec load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  ExperimentSpec spec = figure_preset("custom");
  apply_json(spec, ss.str());
  return spec;
}

}  // namespace fdsec::sim
