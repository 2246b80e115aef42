#pragma once

#include <cstdint>
#include <vector>

#include "fdsec/model.hpp"

// Designs that know h_sd and H but only the distribution of the eavesdropper's channels.
// The destination uses MRC and spreads jamming power p_d / (m_t - 1) over an orthonormal
// basis W of the null space of H^H r, so it never interferes with itself.
namespace fdsec::cdi {

struct CdiSpec {
  SystemConfig config;
  double epsilon = 0.1;  ///< target outage probability in (0, 1)
  CVec h_sd;
  CMat h_li;

  void validate() const;
};

/// Parameters of Prob(a_bar * A - b_bar * B >= 1) with A, B independent sums of m and n unit
/// exponentials.
struct OutageParams {
  double a_bar = 1.0;
  double b_bar = 1.0;
  int m = 1;
  int n = 1;
};

struct NullBasis {
  CMat w;  ///< m_t x (m_t - 1), orthonormal columns with r^H H W = 0
  bool degenerate = false;  ///< H^H r was zero; w is an arbitrary orthonormal basis
};

NullBasis null_basis_w(const CMat& h_li, const CVec& r);

/// Eavesdropper jamming gain X = |W^H H_ed^H h_se|^2 / |h_se|^2.
double jamming_gain(const CMat& w, const CMat& h_ed, const CVec& h_se);

/// CDF of a sum of n independent exponentials with mean `scale` (a chi-square with 2n
/// degrees of freedom scaled by scale / 2).
double exponential_sum_cdf(int n, double scale, double x);

struct SampleStats {
  double mean = 0.0;
  double variance = 0.0;
  std::vector<double> sorted;  ///< samples in ascending order

  double ecdf(double x) const;
};

/// Draws (h_se, H_ed, W) per trial with W from a random null direction and returns statistics
/// of the jamming gain X.
SampleStats chi_sq_jamming_sample(int m_t, int m_e, double sigma_d_sq, std::uint64_t seed,
                                  int trials);

/// One-sample Kolmogorov-Smirnov statistic of sorted samples against `cdf`.
template <typename Cdf>
double ks_statistic(const std::vector<double>& sorted, Cdf cdf) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_two_sample(const std::vector<double>& a_sorted, const std::vector<double>& b_sorted);

/// Asymptotic Kolmogorov critical value at significance 0.01 for sample sizes n (and m).
double ks_critical_001(std::size_t n, std::size_t m = 0);

struct PowerSplit {
  double p_s = 0.0;
  double p_d = 0.0;
  double rate = 0.0;  ///< bits
};

/// Objective log2(1 + p_s |h_sd|^2) - log2(1 + p_s m_e sigma_s^2 / (1 + p_d sigma_d^2)).
double ergodic_approx_objective(const SystemConfig& config, const CVec& h_sd, double p_s,
                                double p_d);

/// Split of config.p_t maximising the ergodic approximation; rate is the approximation's value.
PowerSplit ergodic_pa(const SystemConfig& config, const CVec& h_sd);

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

/// Monte Carlo ergodic secrecy rate over h_se and H_ed for a given split.
McEstimate ergodic_rate_mc(const SystemConfig& config, const CVec& h_sd, double p_s, double p_d,
                           int trials, std::uint64_t seed);

/// Closed-form tail Prob(a_bar A - b_bar B >= 1). b_bar = 0 reduces to the Gamma(m) tail.
double outage_prob_closed_form(const OutageParams& p);

/// Probability that the secrecy rate with split (p_s, p_d) falls to or below `rate`.
double outage_probability(const CdiSpec& spec, double p_s, double p_d, double rate);

/// Largest rate whose outage probability is at most spec.epsilon (bisection); 0 if none.
double outage_rate(const CdiSpec& spec, double p_s, double p_d);

/// Split of p_t maximising the outage rate.
PowerSplit outage_pa(const CdiSpec& spec, double p_t);

}  // namespace fdsec::cdi
