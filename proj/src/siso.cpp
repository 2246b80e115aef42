#include "fdsec/siso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fdsec/search.hpp"

namespace fdsec::siso {

namespace {

double log2_pos(double ratio) { return std::max(0.0, std::log2(ratio)); }

// Larger real root of A x^2 + B x + C, or nothing when the roots are complex.
bool larger_real_root(double A, double B, double C, double& root) {
  if (A == 0.0) {
    if (B == 0.0) return false;
    root = -C / B;
    return true;
  }
  const double disc = B * B - 4.0 * A * C;
  if (disc < 0.0) return false;
  const double q = -0.5 * (B + std::copysign(std::sqrt(disc), B));
  const double r1 = q / A;
  const double r2 = (q != 0.0) ? C / q : r1;
  root = std::max(r1, r2);
  return true;
}

}  // namespace

ScalarChannels ScalarChannels::from(const ChannelRealization& chan) {
  return {std::norm(chan.h_sd(0)), std::norm(chan.h_se(0)), std::norm(chan.h_ed(0, 0)),
          std::norm(chan.h_li(0, 0))};
}

double f_rho(const ScalarChannels& ch, double p_s, double rho, double p_d) {
  const double legit = 1.0 + p_s * ch.g_sd / (1.0 + rho * p_d * ch.g_li);
  const double leak = 1.0 + p_s * ch.g_se / (1.0 + p_d * ch.g_ed);
  return legit / leak;
}

Feasibility positive_secrecy_feasible(const ScalarChannels& ch, double p_s, double rho,
                                      double p_d_max) {
  if (!(p_s > 0.0)) return {};
  // Both bullets multiplied through by g_li * P_d * g_se so that g_li = 0 (no loop
  // interference) needs no special case.
  const double b = rho * ch.g_li;
  if (b < ch.g_ed && b * p_d_max * ch.g_se < ch.g_sd * (1.0 + p_d_max * ch.g_ed) - ch.g_se) {
    return {true, FeasibilityBranch::jamming};
  }
  if (b >= ch.g_ed && ch.g_sd > ch.g_se) return {true, FeasibilityBranch::no_jamming};
  return {};
}

StationarityQuadratic stationarity_quadratic(const ScalarChannels& ch, double p_s, double rho) {
  const double a = p_s * ch.g_sd, b = rho * ch.g_li, c = p_s * ch.g_se, d = ch.g_ed;
  if (!(b > 0.0 && d > 0.0)) throw DomainError("stationarity_quadratic needs rho g_li > 0, g_ed > 0");
  return {c * b - a * d, 2.0 * (c - a), -(a / d) * (1.0 + c) + (c / b) * (1.0 + a)};
}

PdSolution optimal_pd(const ScalarChannels& ch, double p_s, double rho, double p_d_max) {
  if (!(p_d_max > 0.0)) throw DomainError("optimal_pd: p_d_max must be positive");
  const double a = p_s * ch.g_sd, b = rho * ch.g_li, c = p_s * ch.g_se, d = ch.g_ed;
  auto make = [&](double p, PdBranch branch) {
    return PdSolution{p, branch, f_rho(ch, p_s, rho, p)};
  };
  auto endpoints = [&] {
    const double f0 = f_rho(ch, p_s, rho, 0.0);
    const double f1 = f_rho(ch, p_s, rho, p_d_max);
    return f1 > f0 ? make(p_d_max, PdBranch::full_power) : make(0.0, PdBranch::zero_power);
  };

  if (a == 0.0 && c == 0.0) return make(0.0, PdBranch::zero_power);
  // No loop interference: f is nondecreasing in p_d, strictly when jamming reaches E.
  if (b == 0.0) {
    return (c > 0.0 && d > 0.0) ? make(p_d_max, PdBranch::full_power)
                                : make(0.0, PdBranch::zero_power);
  }
  // Jamming cannot reach E, it only hurts D.
  if (d == 0.0) return make(0.0, PdBranch::zero_power);

  const double lead = c * b - a * d;
  if (!(lead < 0.0)) return endpoints();

  // rho < delta: f increases up to the larger root of the derivative's numerator
  // b d [(cb - ad) x^2 + 2 (c - a) x] + c d (1 + a) - a b (1 + c), and decreases after it.
  double x2 = 0.0;
  if (!larger_real_root(b * d * lead, 2.0 * b * d * (c - a), c * d * (1.0 + a) - a * b * (1.0 + c),
                        x2) ||
      !(x2 > 0.0)) {
    return make(0.0, PdBranch::zero_power);
  }
  if (x2 >= p_d_max) return make(p_d_max, PdBranch::full_power);
  return make(x2, PdBranch::interior_root);
}

bool pd_monotonicity_check(const ScalarChannels& ch, double p_s, double p_d_max,
                           const std::vector<double>& rho_grid) {
  double prev = std::numeric_limits<double>::infinity();
  for (double rho : rho_grid) {
    const double p = optimal_pd(ch, p_s, rho, p_d_max).p_d_star;
    if (p > prev * (1.0 + 1e-12) + 1e-12) return false;
    prev = p;
  }
  return true;
}

JointAlpha joint_alpha(const ScalarChannels& ch, double rho, double p_t) {
  if (!(p_t > 0.0)) throw DomainError("joint_alpha: p_t must be positive");
  auto ratio = [&](double alpha) { return f_rho(ch, alpha * p_t, rho, (1.0 - alpha) * p_t); };

  JointAlpha out;
  const bool unit_gains = std::abs(ch.g_sd - 1.0) < 1e-12 && std::abs(ch.g_se - 1.0) < 1e-12;
  if (unit_gains) {
    out.closed_form = true;
    if (rho * ch.g_li >= ch.g_ed) {
      out.alpha_star = 0.0;
    } else {
      const double s = std::sqrt((p_t + 1.0) / ((p_t * ch.g_ed + 1.0) * (p_t * ch.g_li * rho + 1.0)));
      out.alpha_star = 1.0 / (1.0 + s);
    }
  } else {
    const Max1D best = grid_refine_max(ratio, 0.0, 1.0, 64, 1e-8);
    out.alpha_star = best.x;
  }
  out.rate = log2_pos(ratio(out.alpha_star));
  return out;
}

HighSnrLimit high_snr_limit(const ScalarChannels& ch, double beta, double rho) {
  if (!(beta > 0.0)) throw DomainError("high_snr_limit: beta must be positive");
  if (rho * ch.g_li == 0.0) return {std::numeric_limits<double>::infinity(), false};
  if (ch.g_ed == 0.0) return {0.0, true};
  const double legit = std::log2(1.0 + beta * ch.g_sd / (rho * ch.g_li));
  const double leak = std::log2(1.0 + beta * ch.g_se / ch.g_ed);
  return {std::max(0.0, legit - leak), true};
}

}  // namespace fdsec::siso
