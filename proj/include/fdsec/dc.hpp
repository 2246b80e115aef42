#pragma once

#include <vector>

#include "fdsec/model.hpp"

// Jamming covariance design against an eavesdropper that also uses an MMSE filter. The
// secrecy objective is a difference of two concave log-determinants; each step maximises the
// first one minus a linearisation of the second.
namespace fdsec::dc {

enum class DcInit { zero, zf, scaled_identity };

struct DcState {
  CMat q_k;
  double objective = 0.0;  ///< F(q_k) in bits, not floored
  int iteration = 0;
  bool converged = true;  ///< false when the inner solver hit its iteration cap
};

/// logdet(I + P_s h_sd h_sd^H + rho H Q H^H) - logdet(I + rho H Q H^H)
///   - logdet(I + P_s h_se h_se^H + H_ed Q H_ed^H) + logdet(I + H_ed Q H_ed^H), in bits.
double dc_objective(const ChannelRealization& chan, const CMat& q_cov, double p_s, double rho);

/// Euclidean projection onto {Q PSD, tr Q <= budget}.
CMat project_psd_trace(const CMat& q, double budget);

/// One majorisation step from state.q_k. Never returns a lower objective than the input state.
DcState dc_step(const ChannelRealization& chan, const DcState& state, double p_s, double p_d,
                double rho);

struct DcResult {
  CMat q_cov;
  RateReport rate;
  std::vector<double> trace;  ///< F(Q_k) for k = 0, 1, ...
  bool converged = false;
  int iterations = 0;
};

DcResult dc_solve(const ChannelRealization& chan, double p_s, double p_d, double rho,
                  DcInit init = DcInit::zf, double tol = 1e-6, int max_iter = 100);

}  // namespace fdsec::dc
