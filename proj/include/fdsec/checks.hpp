#pragma once

#include <cstdint>
#include <string>

// Solver-versus-oracle comparisons on random instances. Each returns how many comparisons ran,
// how many broke the tolerance and the worst error, so the CLI and the acceptance run can
// report them the same way.
namespace fdsec::checks {

struct CheckReport {
  std::string name;
  int comparisons = 0;
  int failures = 0;
  double worst = 0.0;  ///< largest error seen, in the check's own unit
  std::string note;

  bool passed() const { return comparisons > 0 && failures == 0; }
  std::string summary() const;
};

/// g_of_t against the constrained sphere grid; tolerance 1e-3.
CheckReport check_gt(int instances, int t_values, std::uint64_t seed);

/// h_of_t against the constrained sphere grid for m_t = 2; tolerance 1e-3.
CheckReport check_ht(int instances, int t_values, std::uint64_t seed);

/// solve_optimal_receiver against the PSD grid (m_t = 2); rate may fall short by at most 1e-3.
CheckReport check_rank1(int instances, std::uint64_t seed);

/// Closed-form outage probability against Monte Carlo on the (m, n, a_bar, b_bar) grid,
/// 3 standard errors; plus the exact m = n = 1, a_bar = b_bar = 1 value.
CheckReport check_outage(int samples, std::uint64_t seed);

/// optimal_pd against a dense grid and joint_alpha's closed form against a grid over alpha.
CheckReport check_siso(int instances, std::uint64_t seed);

}  // namespace fdsec::checks
