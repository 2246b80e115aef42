#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fdsec/types.hpp"

namespace fdsec {

/// Fixed parameters of one experiment. Powers are linear SNRs (noise variance is 1).
struct SystemConfig {
  int m_t = 2;  ///< transmit (jamming) antennas at the destination
  int m_r = 2;  ///< receive antennas at the destination
  int m_e = 2;  ///< eavesdropper antennas
  double rho = 0.5;  ///< residual loop-interference coefficient in [0, 1]
  double p_s = 1.0;
  double p_d = 1.0;
  double p_t = 2.0;
  double sigma_s_sq = 1.0;  ///< variance of source-to-eavesdropper entries
  double sigma_d_sq = 1.0;  ///< variance of destination-to-eavesdropper entries

  /// Throws DomainError when an invariant is broken.
  void validate() const;
};

/// One Monte Carlo draw of every channel block.
struct ChannelRealization {
  CVec h_sd;  ///< source to destination, m_r
  CVec h_se;  ///< source to eavesdropper, m_e
  CMat h_ed;  ///< destination to eavesdropper, m_e x m_t
  CMat h_li;  ///< loop channel, m_r x m_t; the effective LI channel is sqrt(rho) * h_li

  int m_t() const { return static_cast<int>(h_ed.cols()); }
  int m_r() const { return static_cast<int>(h_sd.size()); }
  int m_e() const { return static_cast<int>(h_se.size()); }
};

struct RateReport {
  double rate_legit = 0.0;  ///< bits per channel use
  double rate_leak = 0.0;
  double secrecy = 0.0;  ///< max(0, rate_legit - rate_leak)

  static RateReport from_rates(double legit, double leak);
};

struct JammingDesign {
  CVec q;  ///< unit jamming direction; the covariance is p_d_used * q q^H
  double p_d_used = 0.0;
  double p_s_used = 0.0;
  CVec r;  ///< unit receive filter at the destination
  RateReport rate;
  std::vector<std::string> warnings;

  CMat covariance() const { return p_d_used * q * q.adjoint(); }
};

/// Circularly-symmetric complex Gaussian samples; (g1 + i g2) * sqrt(variance / 2).
class ComplexGaussian {
 public:
  explicit ComplexGaussian(std::uint64_t seed);

  cdouble draw(double variance = 1.0);
  CVec vector(int n, double variance = 1.0);
  CMat matrix(int rows, int cols, double variance = 1.0);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Mixes a base seed with stream indices into an independent 64-bit seed (splitmix64 chain).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

ChannelRealization sample_channels(const SystemConfig& config, std::uint64_t seed);

CVec mrc_receiver(const CVec& h_sd);

/// (rho H H^H + I)^{-1} h_sd normalised; the receiver ignores the actual jamming covariance.
CVec mmse_receiver_fixed(const CMat& h_li, const CVec& h_sd, double rho);

/// (rho H Q H^H + I)^{-1} h_sd normalised; SINR-optimal for the covariance Q.
CVec mmse_receiver_optimal(const CMat& h_li, const CMat& q_cov, const CVec& h_sd, double rho);

/// Throws InvalidCovarianceError when q_cov is not Hermitian PSD (eigenvalue below -1e-9).
void require_psd(const CMat& q_cov);

/// Secrecy rate with destination filter r and an MRC eavesdropper.
RateReport secrecy_rate_general(const ChannelRealization& chan, const CMat& q_cov, const CVec& r,
                                double p_s, double rho);

/// Secrecy rate when both destination and eavesdropper use MMSE filters.
/// The eavesdropper's jamming term carries no rho factor.
RateReport secrecy_rate_mmse_pair(const ChannelRealization& chan, const CMat& q_cov, double p_s,
                                  double rho);

/// Half-duplex baseline: every destination antenna receives, no jamming.
RateReport secrecy_rate_hd(const CVec& h_sd_hd, const CVec& h_se, double p_s);

/// Received SINR |r^H h_sd|^2 p_s / (1 + rho r^H H Q H^H r).
double received_sinr(const ChannelRealization& chan, const CMat& q_cov, const CVec& r, double p_s,
                     double rho);

}  // namespace fdsec
