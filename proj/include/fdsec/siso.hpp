#pragma once

#include <vector>

#include "fdsec/model.hpp"

// Single-antenna source, destination (one transmit, one receive antenna) and eavesdropper.
namespace fdsec::siso {

/// Squared magnitudes of the scalar channels.
struct ScalarChannels {
  double g_sd = 0.0;
  double g_se = 0.0;
  double g_ed = 0.0;
  double g_li = 0.0;

  /// Reads the first entry of each block of a realization.
  static ScalarChannels from(const ChannelRealization& chan);
};

/// Ratio (1 + legit SINR) / (1 + eavesdropper SINR) at jamming power p_d.
double f_rho(const ScalarChannels& ch, double p_s, double rho, double p_d);

enum class FeasibilityBranch {
  jamming,     ///< rho below g_ed / g_li and full jamming power leaves a positive rate
  no_jamming,  ///< rho at or above g_ed / g_li and g_sd > g_se
  infeasible,
};

struct Feasibility {
  bool feasible = false;
  FeasibilityBranch branch = FeasibilityBranch::infeasible;
};

Feasibility positive_secrecy_feasible(const ScalarChannels& ch, double p_s, double rho,
                                      double p_d_max);

enum class PdBranch { interior_root, full_power, zero_power };

struct PdSolution {
  double p_d_star = 0.0;
  PdBranch branch = PdBranch::zero_power;
  double objective = 1.0;  ///< f_rho(p_d_star)
};

/// Optimal destination jamming power in [0, p_d_max].
PdSolution optimal_pd(const ScalarChannels& ch, double p_s, double rho, double p_d_max);

/// Coefficients of the stationarity quadratic (cb - ad) x^2 + 2 (c - a) x + k0 = 0 with
/// a = p_s g_sd, b = rho g_li, c = p_s g_se, d = g_ed. Requires b > 0 and d > 0.
struct StationarityQuadratic {
  double lead = 0.0;
  double linear = 0.0;
  double constant = 0.0;
};
StationarityQuadratic stationarity_quadratic(const ScalarChannels& ch, double p_s, double rho);

/// True when optimal_pd's p_d* is non-increasing along rho_grid (sorted ascending).
bool pd_monotonicity_check(const ScalarChannels& ch, double p_s, double p_d_max,
                           const std::vector<double>& rho_grid);

struct JointAlpha {
  double alpha_star = 0.0;  ///< source share: p_s = alpha P_T, p_d = (1 - alpha) P_T
  double rate = 0.0;        ///< secrecy rate in bits
  bool closed_form = false;
};

/// Source/destination split of a total power budget. Uses the closed form when
/// g_sd = g_se = 1, otherwise a golden-section search over alpha.
JointAlpha joint_alpha(const ScalarChannels& ch, double rho, double p_t);

struct HighSnrLimit {
  double value = 0.0;     ///< limiting secrecy rate in bits; +inf when it does not saturate
  bool saturates = true;  ///< false when rho * g_li = 0
};

/// Limit of the secrecy rate as p_d grows with p_s / p_d = beta held fixed.
HighSnrLimit high_snr_limit(const ScalarChannels& ch, double beta, double rho);

}  // namespace fdsec::siso
