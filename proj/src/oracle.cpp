#include "fdsec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace fdsec::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

CVec polar2(double theta, double phi) {
  CVec q(2);
  q << std::cos(theta), std::sin(theta) * std::polar(1.0, phi);
  return q;
}

void keep_best(SphereMax& best, const VecObjective& objective, const CVec& q) {
  const double v = objective(q);
  if (v > best.value) {
    best.value = v;
    best.argmax = q;
  }
}

// Quadratic-form SNR h^H (I + K)^{-1} h through an explicit inverse.
double snr_through_inverse(const CVec& h, const CMat& k) {
  const CMat m = CMat::Identity(k.rows(), k.cols()) + k;
  return (h.adjoint() * m.inverse() * h)(0, 0).real();
}

}  // namespace

void GridSpec::validate() const {
  if (resolution < 8) throw DomainError("GridSpec: resolution must be >= 8");
  if (power_steps < 2) throw DomainError("GridSpec: power_steps must be >= 2");
}

SphereMax sphere_grid_max(const VecObjective& objective, int m_t, const GridSpec& spec) {
  spec.validate();
  const int n = spec.resolution;
  SphereMax best{-std::numeric_limits<double>::infinity(), CVec()};
  if (m_t == 1) {
    keep_best(best, objective, CVec::Ones(1));
    return best;
  }
  if (m_t == 2) {
    for (int i = 0; i < n; ++i) {
      const double theta = 0.5 * kPi * i / (n - 1);
      const int n_phi = (i == 0) ? 1 : n;
      for (int j = 0; j < n_phi; ++j) keep_best(best, objective, polar2(theta, 2.0 * kPi * j / n));
    }
    return best;
  }
  if (m_t == 3) {
    CVec q(3);
    for (int i = 0; i < n; ++i) {
      const double t1 = 0.5 * kPi * i / (n - 1);
      for (int k = 0; k < n; ++k) {
        const double t2 = 0.5 * kPi * k / (n - 1);
        for (int j = 0; j < n; ++j) {
          const double p1 = 2.0 * kPi * j / n;
          for (int l = 0; l < n; ++l) {
            const double p2 = 2.0 * kPi * l / n;
            q << std::cos(t1), std::sin(t1) * std::cos(t2) * std::polar(1.0, p1),
                std::sin(t1) * std::sin(t2) * std::polar(1.0, p2);
            keep_best(best, objective, q);
          }
        }
      }
    }
    return best;
  }
  throw DomainError("sphere_grid_max: only m_t <= 3 is supported");
}

SphereMax sphere_grid_max_on_level(const VecObjective& objective, const CMat& c, double level,
                                   const GridSpec& spec) {
  spec.validate();
  if (c.rows() != 2 || c.cols() != 2) throw DomainError("sphere_grid_max_on_level: needs 2x2 C");
  SphereMax best{-std::numeric_limits<double>::infinity(), CVec()};
  // In the eigenbasis of C the level fixes the polar angle; only the azimuth is gridded.
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (c + c.adjoint()));
  const double lo = es.eigenvalues()(0), hi = es.eigenvalues()(1);
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  const double slack = 1e-12 * scale;
  if (level < lo - slack || level > hi + slack) return best;
  const CVec e_lo = es.eigenvectors().col(0), e_hi = es.eigenvectors().col(1);
  if (hi - lo <= slack) return sphere_grid_max(objective, 2, spec);
  const double w = std::clamp((level - lo) / (hi - lo), 0.0, 1.0);
  const double a = std::sqrt(w), b = std::sqrt(1.0 - w);
  const int n = spec.resolution * 64;
  for (int j = 0; j < n; ++j) {
    const CVec q = a * e_hi + b * std::polar(1.0, 2.0 * kPi * j / n) * e_lo;
    keep_best(best, objective, q);
  }
  return best;
}

GridMax grid_power_search(const std::function<double(double)>& f, double lo, double hi,
                          int steps) {
  if (!(lo <= hi)) throw DomainError("grid_power_search: lo must not exceed hi");
  if (steps < 1) throw DomainError("grid_power_search: steps must be >= 1");
  GridMax best{lo, f(lo)};
  for (int i = 1; i < steps; ++i) {
    const double x = lo + (hi - lo) * i / (steps - 1);
    const double v = f(x);
    if (v > best.max) best = {x, v};
  }
  return best;
}

McProbability mc_outage(const cdi::OutageParams& p, int trials, std::uint64_t seed) {
  if (trials < 1) throw DomainError("mc_outage: trials must be >= 1");
  ComplexGaussian rng(seed);
  long hits = 0;
  for (int t = 0; t < trials; ++t) {
    const CVec z = rng.vector(p.m + p.n);
    const double a = z.head(p.m).squaredNorm();
    const double b = z.tail(p.n).squaredNorm();
    if (p.a_bar * a - p.b_bar * b >= 1.0) ++hits;
  }
  McProbability out;
  out.probability = static_cast<double>(hits) / trials;
  out.stderr_ = std::sqrt(out.probability * (1.0 - out.probability) / trials);
  return out;
}

double optimal_receiver_rate(const ChannelRealization& chan, const CMat& q_cov, double p_s,
                             double rho) {
  const CMat k_d = rho * chan.h_li * q_cov * chan.h_li.adjoint();
  const double legit = std::log2(1.0 + p_s * snr_through_inverse(chan.h_sd, k_d));
  const double e = chan.h_se.squaredNorm();
  double leak = 0.0;
  if (e > 0.0) {
    const CVec g = chan.h_ed.adjoint() * chan.h_se;
    const double jam = (g.adjoint() * q_cov * g)(0, 0).real();
    leak = std::log2(1.0 + p_s * e / (1.0 + jam / e));
  }
  return std::max(0.0, legit - leak);
}

PsdGridResult psd_grid_search(const ChannelRealization& chan, double p_s, double p_d, double rho,
                              const GridSpec& spec) {
  spec.validate();
  if (chan.m_t() != 2) throw DomainError("psd_grid_search: needs m_t = 2");
  PsdGridResult best;
  const int n = spec.resolution;
  for (int s = 0; s < spec.power_steps; ++s) {
    const double minor = 0.5 * s / (spec.power_steps - 1);
    for (int i = 0; i < n; ++i) {
      const double theta = 0.5 * kPi * i / (n - 1);
      for (int j = 0; j < n; ++j) {
        const double phi = 2.0 * kPi * j / n;
        const CVec u = polar2(theta, phi);
        CVec u_perp(2);
        u_perp << -std::sin(theta) * std::polar(1.0, -phi), std::cos(theta);
        const CMat q = p_d * ((1.0 - minor) * u * u.adjoint() + minor * u_perp * u_perp.adjoint());
        const double rate = optimal_receiver_rate(chan, q, p_s, rho);
        if (rate > best.rate) {
          best.rate = rate;
          best.q_cov = q;
          best.eig_ratio = minor / (1.0 - minor);
        }
      }
    }
  }
  return best;
}

PsdGridResult rank1_mmse_pair_search(const ChannelRealization& chan, double p_s, double p_d,
                                     double rho, const GridSpec& spec) {
  spec.validate();
  if (chan.m_t() != 2) throw DomainError("rank1_mmse_pair_search: needs m_t = 2");
  PsdGridResult best;
  const int n = spec.resolution;
  for (int s = 0; s < spec.power_steps; ++s) {
    const double p = p_d * s / (spec.power_steps - 1);
    for (int i = 0; i < n; ++i) {
      const double theta = 0.5 * kPi * i / (n - 1);
      for (int j = 0; j < n; ++j) {
        const CVec u = polar2(theta, 2.0 * kPi * j / n);
        const CMat q = p * u * u.adjoint();
        const double legit = std::log2(
            1.0 + p_s * snr_through_inverse(chan.h_sd, rho * chan.h_li * q * chan.h_li.adjoint()));
        const double leak = std::log2(
            1.0 + p_s * snr_through_inverse(chan.h_se, chan.h_ed * q * chan.h_ed.adjoint()));
        const double rate = std::max(0.0, legit - leak);
        if (rate > best.rate) {
          best.rate = rate;
          best.q_cov = q;
        }
      }
    }
  }
  return best;
}

}  // namespace fdsec::oracle
