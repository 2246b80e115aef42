#include "fdsec/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fdsec {

namespace {

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

// Real part of v^H M v, with M Hermitian.
double quad_form(const CVec& v, const CMat& m) { return (v.adjoint() * m * v)(0, 0).real(); }

CVec normalized_or_throw(const CVec& v, const char* what) {
  const double n = v.norm();
  if (!(n >= kDegenerateNorm)) {
    throw DegenerateChannelError(std::string(what) + ": vector norm below 1e-12");
  }
  return v / n;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void SystemConfig::validate() const {
  if (m_t < 1 || m_r < 1 || m_e < 1) throw DomainError("antenna counts must be >= 1");
  if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("rho must lie in [0, 1]");
  if (!(p_s >= 0.0 && p_d >= 0.0 && p_t >= 0.0)) throw DomainError("powers must be >= 0");
  if (!(sigma_s_sq > 0.0 && sigma_d_sq > 0.0)) throw DomainError("channel variances must be > 0");
}

RateReport RateReport::from_rates(double legit, double leak) {
  RateReport r;
  r.rate_legit = std::max(0.0, legit);
  r.rate_leak = std::max(0.0, leak);
  r.secrecy = std::max(0.0, r.rate_legit - r.rate_leak);
  return r;
}

ComplexGaussian::ComplexGaussian(std::uint64_t seed) : engine_(seed) {}

cdouble ComplexGaussian::draw(double variance) {
  const double scale = std::sqrt(variance / 2.0);
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {re * scale, im * scale};
}

CVec ComplexGaussian::vector(int n, double variance) {
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = draw(variance);
  return v;
}

CMat ComplexGaussian::matrix(int rows, int cols, double variance) {
  // Row-major fill so that the draw order does not depend on Eigen's storage order.
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = draw(variance);
  return m;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

ChannelRealization sample_channels(const SystemConfig& config, std::uint64_t seed) {
  config.validate();
  ComplexGaussian rng(seed);
  ChannelRealization chan;
  chan.h_sd = rng.vector(config.m_r);
  chan.h_se = rng.vector(config.m_e, config.sigma_s_sq);
  chan.h_ed = rng.matrix(config.m_e, config.m_t, config.sigma_d_sq);
  chan.h_li = rng.matrix(config.m_r, config.m_t);
  return chan;
}

CVec mrc_receiver(const CVec& h_sd) { return normalized_or_throw(h_sd, "mrc_receiver"); }

CVec mmse_receiver_fixed(const CMat& h_li, const CVec& h_sd, double rho) {
  const auto n = h_sd.size();
  const CMat cov = rho * h_li * h_li.adjoint() + CMat::Identity(n, n);
  return normalized_or_throw(cov.llt().solve(h_sd), "mmse_receiver_fixed");
}

void require_psd(const CMat& q_cov) {
  if (q_cov.rows() != q_cov.cols()) throw InvalidCovarianceError("covariance must be square");
  if (q_cov.size() == 0) return;
  const double asym = (q_cov - q_cov.adjoint()).norm();
  if (!(asym <= 1e-9 * std::max(1.0, q_cov.norm()))) {
    throw InvalidCovarianceError("covariance is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMat> eig(q_cov, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-9) {
    throw InvalidCovarianceError("covariance has an eigenvalue below -1e-9");
  }
}

CVec mmse_receiver_optimal(const CMat& h_li, const CMat& q_cov, const CVec& h_sd, double rho) {
  require_psd(q_cov);
  const auto n = h_sd.size();
  const CMat cov = rho * h_li * q_cov * h_li.adjoint() + CMat::Identity(n, n);
  return normalized_or_throw(cov.llt().solve(h_sd), "mmse_receiver_optimal");
}

double received_sinr(const ChannelRealization& chan, const CMat& q_cov, const CVec& r, double p_s,
                     double rho) {
  const double signal = std::norm(r.dot(chan.h_sd));
  const CVec hr = chan.h_li.adjoint() * r;
  const double li = rho * quad_form(hr, q_cov);
  return p_s * signal / (1.0 + std::max(0.0, li));
}

RateReport secrecy_rate_general(const ChannelRealization& chan, const CMat& q_cov, const CVec& r,
                                double p_s, double rho) {
  if (std::abs(r.norm() - 1.0) > 1e-6) {
    throw ContractViolation("secrecy_rate_general: receive filter must have unit norm");
  }
  const double legit = log2_1p(received_sinr(chan, q_cov, r, p_s, rho));

  const double se_sq = chan.h_se.squaredNorm();
  double leak = 0.0;
  if (se_sq > 0.0) {
    const CVec a = chan.h_ed.adjoint() * chan.h_se;
    const double jam = std::max(0.0, quad_form(a, q_cov)) / se_sq;
    leak = log2_1p(p_s * se_sq / (1.0 + jam));
  }
  return RateReport::from_rates(legit, leak);
}

RateReport secrecy_rate_mmse_pair(const ChannelRealization& chan, const CMat& q_cov, double p_s,
                                  double rho) {
  require_psd(q_cov);
  const auto n_r = chan.h_sd.size();
  const auto n_e = chan.h_se.size();
  const CMat cov_d = rho * chan.h_li * q_cov * chan.h_li.adjoint() + CMat::Identity(n_r, n_r);
  const CMat cov_e = chan.h_ed * q_cov * chan.h_ed.adjoint() + CMat::Identity(n_e, n_e);
  const double snr_d = chan.h_sd.dot(cov_d.llt().solve(chan.h_sd)).real();
  const double snr_e = chan.h_se.dot(cov_e.llt().solve(chan.h_se)).real();
  return RateReport::from_rates(log2_1p(p_s * snr_d), log2_1p(p_s * snr_e));
}

RateReport secrecy_rate_hd(const CVec& h_sd_hd, const CVec& h_se, double p_s) {
  return RateReport::from_rates(log2_1p(p_s * h_sd_hd.squaredNorm()),
                                log2_1p(p_s * h_se.squaredNorm()));
}

}  // namespace fdsec
