#pragma once

#include <cstdint>
#include <functional>

#include "fdsec/cdi.hpp"
#include "fdsec/model.hpp"

// Brute-force references. They are slow on purpose and evaluate every rate with their own
// inline formulas, so they can check the solvers without sharing code paths with them.
namespace fdsec::oracle {

struct GridSpec {
  int resolution = 256;   ///< points per angle
  int power_steps = 32;   ///< points of a power or eigenvalue-split axis
  double tolerance = 1e-3;

  void validate() const;
};

struct SphereMax {
  double value = 0.0;
  CVec argmax;
};

using VecObjective = std::function<double(const CVec&)>;

/// Exhaustive grid over unit vectors of C^m_t up to a global phase (m_t = 2 or 3).
SphereMax sphere_grid_max(const VecObjective& objective, int m_t, const GridSpec& spec);

/// Grid over unit q in C^2 with q^H C q = level. The level pins the polar angle in C's
/// eigenbasis, so only the relative phase is gridded. Value is -inf when the level is
/// outside C's eigenvalue range.
SphereMax sphere_grid_max_on_level(const VecObjective& objective, const CMat& c, double level,
                                   const GridSpec& spec);

struct GridMax {
  double argmax = 0.0;
  double max = 0.0;
};

/// Best of `steps` equispaced points of [lo, hi] (both ends included).
GridMax grid_power_search(const std::function<double(double)>& f, double lo, double hi,
                          int steps);

struct McProbability {
  double probability = 0.0;
  double stderr_ = 0.0;
};

/// Empirical Prob(a_bar sum_{i<=m} |z_i|^2 - b_bar sum_{m<i<=m+n} |z_i|^2 >= 1), z ~ CN(0, I).
McProbability mc_outage(const cdi::OutageParams& p, int trials, std::uint64_t seed);

/// Secrecy rate (bits, floored) with the SINR-optimal destination filter for covariance Q and
/// an MRC eavesdropper.
double optimal_receiver_rate(const ChannelRealization& chan, const CMat& q_cov, double p_s,
                             double rho);

struct PsdGridResult {
  double rate = -1.0;
  CMat q_cov;
  double eig_ratio = 0.0;  ///< smaller / larger eigenvalue of the best Q
};

/// Grid over 2x2 PSD Q with tr Q = p_d: Q = p_d ((1 - l) u u^H + l u_perp u_perp^H) with
/// l in [0, 1/2] (power_steps points) and u on the sphere grid.
PsdGridResult psd_grid_search(const ChannelRealization& chan, double p_s, double p_d, double rho,
                              const GridSpec& spec);

/// Best rank-1 covariance p q q^H, p in [0, p_d], for MMSE filters at both receivers
/// (m_t = 2). Rate in bits, floored.
PsdGridResult rank1_mmse_pair_search(const ChannelRealization& chan, double p_s, double p_d,
                                     double rho, const GridSpec& spec);

}  // namespace fdsec::oracle
