#pragma once

#include <string>
#include <vector>

#include "fdsec/model.hpp"

// Jamming covariance design for a destination with several transmit antennas. The optimal
// covariance is rank one, P_d q q^H, so every solver here searches over a unit direction q.
namespace fdsec::mimo {

/// Normalised directions seen by the destination's own filter (c1) and by the eavesdropper (c2).
struct GtInputs {
  CVec c1;  ///< H^H r / |H^H r|
  CVec c2;  ///< H_ed^H h_se / |H_ed^H h_se|
  double corr = 0.0;  ///< |c1^H c2|

  /// Throws DegenerateChannelError when either vector is zero.
  static GtInputs make(const CVec& self_direction, const CVec& eve_direction);
};

struct GtValue {
  double value = 0.0;
  CVec q;
};

/// max |c2^H q|^2 over unit q with |c1^H q|^2 = t_norm, and a maximiser in span{c1, c2}.
GtValue g_of_t(const GtInputs& inp, double t_norm);

/// 1 - (r sqrt(1 - t) - sqrt((1 - r^2) t))^2.
double g_closed_form(double corr, double t_norm);
/// (sqrt(r^2 t) + sqrt((1 - r^2)(1 - t)))^2, algebraically equal to g_closed_form.
double g_square_form(double corr, double t_norm);

struct TSearchResult {
  double t_star = 0.0;  ///< search variable at the optimum (meaning depends on the solver)
  CVec q_star;          ///< unit jamming direction
  double p_d_used = 0.0;
  CVec r;  ///< destination receive filter used for the reported rate
  RateReport rate;
  double secrecy = 0.0;    ///< rate.secrecy
  double objective = 0.0;  ///< rate_legit - rate_leak before flooring at zero
  int evaluations = 0;
  std::vector<std::string> warnings;

  CMat covariance() const { return p_d_used * q_star * q_star.adjoint(); }
};

/// Jamming design for a fixed receive filter r. t_star is the received self-interference
/// power p_d |r^H H q|^2 in [0, p_d |H^H r|^2]; the search runs over the normalised
/// t / (p_d |H^H r|^2) in [0, 1]. Requires m_t >= 2.
TSearchResult solve_fixed_receiver(const ChannelRealization& chan, const CVec& r, double p_s,
                                   double p_d, double rho);

/// Largest feasible t = |h_sd^H H q|^2 / (1 + rho p_d |H q|^2) over unit q:
/// v^H (I + rho p_d H^H H)^{-1} v with v = H^H h_sd.
double t_max(const ChannelRealization& chan, double p_d, double rho);

struct HtResult {
  double value = 0.0;  ///< max |h_se^H H_ed q|^2
  CVec q;
  double lambda1 = 0.0;  ///< scaled multipliers with q = U (lambda1 D + lambda2 I)^{-1} U^H a
  double lambda2 = 0.0;
  bool boundary = false;  ///< optimum sits where lambda1 R + lambda2 I is singular
};

/// max |h_se^H H_ed q|^2 subject to |h_sd^H H q|^2 / (1 + rho p_d |H q|^2) = t, |q| = 1.
/// Throws InfeasibleError when t exceeds t_max.
HtResult h_of_t(const ChannelRealization& chan, double t, double p_d, double rho);

/// Jamming design with the SINR-optimal receiver at the destination; t_star is the value of
/// |h_sd^H H q|^2 / (1 + rho p_d |H q|^2). With m_t = 1 only the jamming power is searched.
TSearchResult solve_optimal_receiver(const ChannelRealization& chan, double p_s, double p_d,
                                     double rho);

/// Zero-forcing design: q nulls the self-interference seen by the MRC receiver.
JammingDesign solve_zf(const ChannelRealization& chan, double p_s, double p_d, double rho);

struct JointResult {
  double p_s = 0.0;
  TSearchResult design;
};

/// Coefficients A p^2 + B p + C of the stationarity condition of
/// (1 + p S) / (1 + p E / (1 + (P_T - p) w)) in the source power p.
struct PowerQuadratic {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};
PowerQuadratic source_power_quadratic(double s_gain, double e_gain, double w, double p_t);

/// Best source power for the objective above over [0, p_t]: compares p_t with the real roots
/// of the stationarity quadratic inside (0, p_t).
double best_source_power(double s_gain, double e_gain, double w, double p_t);

/// Joint source/destination split of p_t for a fixed receive filter r. t_star is the
/// normalised self-interference level in [0, 1].
JointResult joint_power_allocation_fixed_r(const ChannelRealization& chan, const CVec& r,
                                           double p_t, double rho);

/// Joint split with the optimal receiver: search over p_s with solve_optimal_receiver inside.
JointResult joint_power_allocation_optimal_r(const ChannelRealization& chan, double p_t,
                                             double rho);

}  // namespace fdsec::mimo
