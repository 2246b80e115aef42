// End-to-end acceptance run. Prints one PASS/FAIL line per criterion, with indented detail
// lines underneath, and exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fdsec/cdi.hpp"
#include "fdsec/checks.hpp"
#include "fdsec/dc.hpp"
#include "fdsec/model.hpp"
#include "fdsec/oracle.hpp"
#include "fdsec/sim.hpp"
#include "fdsec/siso.hpp"

using namespace fdsec;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failed = 0;

void criterion(int id, const std::string& title, double limit_s,
               const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = limit_s <= 0.0 || secs <= limit_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failed;
  std::string timing = limit_s > 0.0 ? " [" + std::to_string(secs).substr(0, 6) + " s, limit " +
                                           std::to_string(static_cast<int>(limit_s)) + " s]"
                                     : " [" + std::to_string(secs).substr(0, 6) + " s]";
  if (!in_time) timing += " over time limit";
  std::printf("%s criterion %d: %s%s\n", pass ? "PASS" : "FAIL", id, title.c_str(),
              timing.c_str());
  if (!o.detail.empty()) std::printf("%s", o.detail.c_str());
  std::fflush(stdout);
}

Outcome from_report(const checks::CheckReport& r) { return {r.passed(), "    " + r.summary() + "\n"}; }

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// a exceeds b by more than two combined standard errors.
bool beats(const sim::ResultRow& a, const sim::ResultRow& b) {
  return a.mean_rate - b.mean_rate > 2.0 * std::hypot(a.stderr_, b.stderr_);
}

const sim::ResultRow& row(const sim::ResultTable& t, const std::string& m, double v) {
  const sim::ResultRow* r = t.find(m, v);
  if (r == nullptr) throw Error("missing row " + m + " at " + std::to_string(v));
  return *r;
}

struct Sub {
  bool pass = true;
  std::string text;
  void add(bool ok, const std::string& line) {
    pass = pass && ok;
    text += std::string("    ") + (ok ? "ok   " : "FAIL ") + line + "\n";
  }
};

sim::ResultTable run_figure(const std::string& name, Sub& sub, double limit_s) {
  const auto start = std::chrono::steady_clock::now();
  const sim::ExperimentSpec spec = sim::figure_preset(name);
  sim::ResultTable t = sim::run_experiment(spec);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  sim::write_csv(t, "acceptance_" + name + ".csv");
  sub.add(t.valid, name + fmt(": %.0f failed trials, run ", t.total_failures) +
                       (t.valid ? "valid" : "invalid"));
  sub.add(secs <= limit_s, name + fmt(": %.1f s (limit %.0f s)", secs, limit_s));
  return t;
}

}  // namespace

int main() {
  std::printf("acceptance run, seed 20140101 for figures\n");

  criterion(1, "g(t) against the constrained sphere grid, 100 pairs x 20 levels, tol 1e-3", 5.0,
            [] { return from_report(checks::check_gt(100, 20, 1)); });

  criterion(2, "h(t) against the constrained sphere grid, 50 instances x 10 levels, tol 1e-3",
            30.0, [] { return from_report(checks::check_ht(50, 10, 2)); });

  criterion(3, "rank-1 design within 1e-3 bits of the PSD grid, 50 instances", 120.0,
            [] { return from_report(checks::check_rank1(50, 3)); });

  criterion(4, "SISO closed forms against 1e4-step grids, 1e4 instances", 30.0,
            [] { return from_report(checks::check_siso(10000, 4)); });

  criterion(5, "p_d*(rho) non-increasing for g_sd = g_se, 100 instances x 100 rho values", 0.0,
            [] {
              std::mt19937_64 rng(5);
              std::exponential_distribution<double> ex(1.0);
              std::uniform_real_distribution<double> u(0.0, 1.0);
              std::vector<double> grid;
              for (int i = 0; i < 100; ++i) grid.push_back(i / 99.0);
              int violations = 0;
              for (int i = 0; i < 100; ++i) {
                const double g = ex(rng);
                const siso::ScalarChannels ch{g, g, ex(rng), ex(rng)};
                const double p_s = std::pow(10.0, 3 * u(rng) - 1), p_d = std::pow(10.0, 3 * u(rng) - 1);
                violations += !siso::pd_monotonicity_check(ch, p_s, p_d, grid);
              }
              return Outcome{violations == 0, fmt("    %.0f violations in 100 instances\n", violations)};
            });

  criterion(6, "outage closed form within 3 MC stderr on 81 grid points (1e6 samples)", 120.0,
            [] { return from_report(checks::check_outage(1000000, 6)); });

  criterion(7, "jamming gain follows the exponential-sum law (KS at 0.01), m_t = 2, 3, 4", 30.0,
            [] {
              Outcome o{true, ""};
              for (int m_t = 2; m_t <= 4; ++m_t) {
                const auto s = cdi::chi_sq_jamming_sample(m_t, 2, 1.0, 700 + m_t, 100000);
                const double d = cdi::ks_statistic(
                    s.sorted, [&](double x) { return cdi::exponential_sum_cdf(m_t - 1, 1.0, x); });
                const double crit = cdi::ks_critical_001(s.sorted.size());
                o.pass = o.pass && d < crit;
                o.detail += fmt("    m_t = %.0f: D = %.5f, critical %.5f\n", m_t, d, crit);
              }
              return o;
            });

  criterion(8, "DC traces nondecreasing (100 instances); rho = 0 within 1e-2 of rank-1 oracle",
            180.0, [] {
              ComplexGaussian rng(8);
              std::mt19937_64 urng(8);
              std::uniform_real_distribution<double> u(0.0, 1.0);
              SystemConfig cfg;
              int drops = 0;
              double worst_drop = 0.0;
              for (int i = 0; i < 100; ++i) {
                const auto chan = sample_channels(cfg, derive_seed(8, i));
                const double p = std::pow(10.0, 3 * u(urng)), rho = u(urng);
                const auto r = dc::dc_solve(chan, p, p, rho);
                for (std::size_t k = 1; k < r.trace.size(); ++k) {
                  const double drop = r.trace[k - 1] - r.trace[k];
                  worst_drop = std::max(worst_drop, drop);
                  drops += drop > 1e-8;
                }
              }
              oracle::GridSpec spec;
              spec.resolution = 96;
              spec.power_steps = 11;
              double worst_gap = 0.0;
              for (int i = 0; i < 20; ++i) {
                const auto chan = sample_channels(cfg, derive_seed(88, i));
                const double p = std::pow(10.0, 2 * u(urng));
                const double ours = dc::dc_solve(chan, p, p, 0.0).rate.secrecy;
                const double grid = oracle::rank1_mmse_pair_search(chan, p, p, 0.0, spec).rate;
                worst_gap = std::max(worst_gap, grid - ours);
              }
              Outcome o;
              o.pass = drops == 0 && worst_gap <= 1e-2;
              o.detail = fmt("    %.0f decreasing steps (largest drop %.3g)\n", drops, worst_drop) +
                         fmt("    rho = 0: largest shortfall against the rank-1 grid %.3g bits\n",
                             worst_gap);
              return o;
            });

  criterion(9, "figure presets at 500 trials (fig3, fig4, fig5, fig7, fig8)", 0.0, [] {
    Sub sub;
    {
      const auto t = run_figure("fig3", sub, 300.0);
      for (double snr = 15.0; snr <= 60.0; snr += 5.0) {
        const auto& hd = row(t, "hd", snr);
        for (const char* m : {"fd_equal_split", "fd_opt_pa"}) {
          const auto& fd = row(t, m, snr);
          sub.add(beats(fd, hd), fmt("fig3 %.0f dB: ", snr) + m +
                                     fmt(" %.3f +- %.3f vs hd %.3f +- %.3f", fd.mean_rate,
                                         fd.stderr_, hd.mean_rate, hd.stderr_));
        }
      }
      const double d = row(t, "hd", 60).mean_rate - row(t, "hd", 25).mean_rate;
      sub.add(d < 0.3, fmt("fig3 hd(60) - hd(25) = %.3f < 0.3", d));
    }
    {
      const auto t = run_figure("fig4", sub, 900.0);
      const double hd = row(t, "hd", 40).mean_rate - row(t, "hd", 10).mean_rate;
      sub.add(hd < 0.3, fmt("fig4 hd(40) - hd(10) = %.3f < 0.3", hd));
      const double fd = row(t, "fd_opt_rx", 40).mean_rate - row(t, "fd_opt_rx", 10).mean_rate;
      sub.add(fd > 2.0, fmt("fig4 fd_opt_rx(40) - fd_opt_rx(10) = %.3f > 2", fd));
      const double ratio = row(t, "fd_opt_rx", 15).mean_rate / row(t, "fd_fixed_mmse", 15).mean_rate;
      sub.add(ratio >= 1.02 && ratio <= 1.30,
              fmt("fig4 fd_opt_rx / fd_fixed_mmse at 15 dB = %.3f in [1.02, 1.30]", ratio));
    }
    {
      const auto t = run_figure("fig5", sub, 600.0);
      const auto& hd = row(t, "hd", 0.9);
      for (const char* m : {"fd_fixed_mmse", "fd_opt_rx", "fd_zf", "fd_dc_mmse_eve"}) {
        const auto& fd = row(t, m, 0.9);
        sub.add(beats(fd, hd), std::string("fig5 rho 0.9: ") + m +
                                   fmt(" %.3f +- %.3f vs hd %.3f +- %.3f", fd.mean_rate,
                                       fd.stderr_, hd.mean_rate, hd.stderr_));
      }
      const double g9 = row(t, "fd_opt_rx", 0.9).mean_rate - row(t, "fd_fixed_mmse", 0.9).mean_rate;
      const double g1 = row(t, "fd_opt_rx", 0.1).mean_rate - row(t, "fd_fixed_mmse", 0.1).mean_rate;
      sub.add(g9 > g1, fmt("fig5 receiver gap at rho 0.9 = %.3f > gap at 0.1 = %.3f", g9, g1));
    }
    {
      const auto t = run_figure("fig7", sub, 600.0);
      double worst = 0.0;
      for (const auto& r : t.rows)
        if (r.method == "cdi_outage_hd") worst = std::max(worst, r.mean_rate);
      sub.add(worst < 0.1, fmt("fig7 half-duplex outage rate max %.4f < 0.1", worst));
      const auto& hi = row(t, "cdi_outage", 30);
      const auto& lo = row(t, "cdi_outage", 10);
      sub.add(beats(hi, lo), fmt("fig7 cdi_outage 30 dB %.3f +- %.3f vs 10 dB %.3f +- %.3f",
                                 hi.mean_rate, hi.stderr_, lo.mean_rate, lo.stderr_));
    }
    {
      const auto t = run_figure("fig8", sub, 600.0);
      const auto& a = row(t, "fd_opt_rx@mr2mt2", 10);
      const auto& b = row(t, "fd_opt_rx@mr3mt1", 10);
      const auto& c = row(t, "fd_opt_rx@mr1mt3", 10);
      sub.add(beats(a, b), fmt("fig8 10 dB (2,2) %.3f +- %.3f > (3,1) %.3f +- %.3f", a.mean_rate,
                               a.stderr_, b.mean_rate, b.stderr_));
      sub.add(beats(b, c), fmt("fig8 10 dB (3,1) %.3f +- %.3f > (1,3) %.3f +- %.3f", b.mean_rate,
                               b.stderr_, c.mean_rate, c.stderr_));
    }
    return Outcome{sub.pass, sub.text};
  });

  criterion(10, "SISO rate at p_d = 1e6 within 0.05 bits of the high-SNR limit, 100 instances",
            5.0, [] {
              std::mt19937_64 rng(10);
              std::exponential_distribution<double> ex(1.0);
              std::uniform_real_distribution<double> u(0.0, 1.0);
              double worst = 0.0;
              for (int i = 0; i < 100; ++i) {
                const siso::ScalarChannels ch{ex(rng), ex(rng), ex(rng), ex(rng)};
                const double beta = std::pow(10.0, 2 * u(rng) - 1), rho = 0.05 + 0.95 * u(rng);
                const double p_d = 1e6;
                const double rate = std::max(0.0, std::log2(siso::f_rho(ch, beta * p_d, rho, p_d)));
                worst = std::max(worst, std::abs(rate - siso::high_snr_limit(ch, beta, rho).value));
              }
              return Outcome{worst <= 0.05, fmt("    largest deviation %.3g bits\n", worst)};
            });

  criterion(11, "byte-identical CSV with 1 and 4 worker threads", 0.0, [] {
    sim::ExperimentSpec spec = sim::figure_preset("custom");
    spec.methods = {sim::Method::hd, sim::Method::fd_opt_rx, sim::Method::fd_dc_mmse_eve,
                    sim::Method::cdi_outage, sim::Method::cdi_ergodic};
    spec.sweep = {sim::SweepVar::snr_db, 0.0, 20.0, 3};
    spec.trials = 24;
    spec.threads = 1;
    const std::string one = sim::format_csv(sim::run_experiment(spec));
    spec.threads = 4;
    const std::string four = sim::format_csv(sim::run_experiment(spec));
    return Outcome{one == four, fmt("    %.0f CSV bytes compared\n", static_cast<double>(one.size()))};
  });

  std::printf("%s: %d criteria failed\n", failed == 0 ? "ALL PASS" : "NOT ALL PASS", failed);
  return failed == 0 ? 0 : 1;
}
