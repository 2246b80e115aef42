#include "fdsec/mimo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fdsec/linalg.hpp"
#include "fdsec/search.hpp"

namespace fdsec::mimo {

namespace {

constexpr double kAlignmentSin = 1e-8;


// log2 of (1 + p_s E / (1 + jam / E)), the MRC eavesdropper's rate.
double eve_rate(double p_s, double e_gain, double jam) {
  return std::log1p(p_s * e_gain / (1.0 + jam / e_gain)) / std::numbers::ln2;
}

void finish(TSearchResult& res, const ChannelRealization& chan, double p_s, double rho) {
  const CMat q_cov = res.covariance();
  res.rate = secrecy_rate_general(chan, q_cov, res.r, p_s, rho);
  res.secrecy = res.rate.secrecy;
  res.objective = res.rate.rate_legit - res.rate.rate_leak;
}

void require_multi_tx(const ChannelRealization& chan, const char* what) {
  if (chan.m_t() < 2) throw DomainError(std::string(what) + ": needs m_t >= 2");
}

}  // namespace

GtInputs GtInputs::make(const CVec& self_direction, const CVec& eve_direction) {
  const double n1 = self_direction.norm(), n2 = eve_direction.norm();
  if (n1 < kDegenerateNorm || n2 < kDegenerateNorm) {
    throw DegenerateChannelError("GtInputs: zero direction");
  }
  GtInputs inp;
  inp.c1 = self_direction / n1;
  inp.c2 = eve_direction / n2;
  inp.corr = std::min(1.0, std::abs(inp.c1.dot(inp.c2)));
  return inp;
}

double g_closed_form(double corr, double t) {
  const double d = corr * std::sqrt(1.0 - t) - std::sqrt((1.0 - corr * corr) * t);
  return 1.0 - d * d;
}

double g_square_form(double corr, double t) {
  const double s = std::sqrt(corr * corr * t) + std::sqrt((1.0 - corr * corr) * (1.0 - t));
  return s * s;
}

GtValue g_of_t(const GtInputs& inp, double t_norm) {
  if (!(t_norm >= 0.0 && t_norm <= 1.0)) throw DomainError("g_of_t: t must lie in [0, 1]");
  const cdouble inner = inp.c1.dot(inp.c2);  // c1^H c2 = r e^{i phi}
  const cdouble phase = std::abs(inner) > 0.0 ? inner / std::abs(inner) : cdouble(1.0, 0.0);

  // c2 = r e^{i phi} c1 + sqrt(1 - r^2) u with u a unit vector orthogonal to c1.
  CVec u = inp.c2 - inner * inp.c1;
  const double un = u.norm();
  if (un > 1e-12) {
    u /= un;
  } else if (inp.c1.size() >= 2) {
    u = any_orthogonal_unit(inp.c1);
  } else {
    if (t_norm < 1.0) throw DomainError("g_of_t: single antenna admits only t = 1");
    u = CVec::Zero(1);
  }

  GtValue out;
  out.value = g_closed_form(inp.corr, t_norm);
  out.q = std::sqrt(t_norm) * phase * inp.c1 + std::sqrt(1.0 - t_norm) * u;
  out.q.normalize();
  return out;
}

TSearchResult solve_fixed_receiver(const ChannelRealization& chan, const CVec& r, double p_s,
                                   double p_d, double rho) {
  require_multi_tx(chan, "solve_fixed_receiver");
  if (std::abs(r.norm() - 1.0) > 1e-6) throw ContractViolation("receive filter must be unit norm");

  const CVec self_dir = chan.h_li.adjoint() * r;  // H^H r
  const CVec eve_dir = chan.h_ed.adjoint() * chan.h_se;  // H_ed^H h_se
  const double k_gain = self_dir.squaredNorm();
  const double a_gain = eve_dir.squaredNorm();
  const double e_gain = chan.h_se.squaredNorm();
  const double s_gain = std::norm(r.dot(chan.h_sd));

  TSearchResult res;
  res.r = r;
  res.p_d_used = p_d;

  if (a_gain < kDegenerateNorm * kDegenerateNorm || e_gain < kDegenerateNorm * kDegenerateNorm) {
    res.warnings.push_back("jamming cannot reach the eavesdropper");
    res.q_star = any_orthogonal_unit(self_dir);
    finish(res, chan, p_s, rho);
    return res;
  }
  if (k_gain < kDegenerateNorm * kDegenerateNorm || p_d == 0.0) {
    res.q_star = eve_dir / std::sqrt(a_gain);
    finish(res, chan, p_s, rho);
    return res;
  }

  const GtInputs inp = GtInputs::make(self_dir, eve_dir);
  const double sin_angle = std::sqrt(std::max(0.0, 1.0 - inp.corr * inp.corr));
  if (sin_angle < kAlignmentSin) {
    // Full power may be suboptimal here; search the jamming power along c2 instead.
    res.warnings.push_back("H^H r aligned with H_ed^H h_se; searching jamming power");
    auto objective = [&](double p) {
      const double legit = std::log2(1.0 + p_s * s_gain / (1.0 + rho * p * k_gain));
      return legit - eve_rate(p_s, e_gain, p * a_gain);
    };
    const Max1D best = grid_refine_max(objective, 0.0, p_d, 64, 1e-8 * std::max(1.0, p_d));
    res.q_star = inp.c2;
    res.p_d_used = best.x;
    res.t_star = best.x * k_gain;
    res.evaluations = best.evaluations;
    finish(res, chan, p_s, rho);
    return res;
  }

  const double t_scale = p_d * k_gain;
  auto objective = [&](double tn) {
    const double legit = std::log2(1.0 + p_s * s_gain / (1.0 + rho * t_scale * tn));
    return legit - eve_rate(p_s, e_gain, p_d * a_gain * g_closed_form(inp.corr, tn));
  };

  double tn_star = 0.0;
  if (rho == 0.0) {
    tn_star = inp.corr * inp.corr;  // self-interference is free: maximise jamming at E
    res.evaluations = 0;
  } else {
    const double tol = std::max(1e-14, 1e-8 / t_scale);
    const Max1D best = grid_refine_max(objective, 0.0, 1.0, 64, tol);
    tn_star = best.x;
    res.evaluations = best.evaluations;
  }
  res.q_star = g_of_t(inp, tn_star).q;
  res.t_star = tn_star * t_scale;
  finish(res, chan, p_s, rho);
  return res;
}

double t_max(const ChannelRealization& chan, double p_d, double rho) {
  const CVec v = chan.h_li.adjoint() * chan.h_sd;
  const auto n = v.size();
  const CMat b = CMat::Identity(n, n) + rho * p_d * chan.h_li.adjoint() * chan.h_li;
  return v.dot(b.llt().solve(v)).real();
}

HtResult h_of_t(const ChannelRealization& chan, double t, double p_d, double rho) {
  const CVec v = chan.h_li.adjoint() * chan.h_sd;
  const CVec a = chan.h_ed.adjoint() * chan.h_se;
  const auto n = v.size();
  if (t < 0.0) throw DomainError("h_of_t: t must be nonnegative");
  const double tm = t_max(chan, p_d, rho);
  if (t > tm * (1.0 + 1e-10) + 1e-300) throw InfeasibleError("h_of_t: t exceeds t_max");
  t = std::min(t, tm);

  HtResult out;
  auto set_q = [&](CVec q) {
    q.normalize();
    out.q = q;
    out.value = std::norm(a.dot(q));
  };

  if (t == 0.0) {
    // The constraint forces h_sd^H H q = 0: project a onto the null space of v^H.
    const CVec p = project_out(v, a);
    out.boundary = true;
    out.lambda1 = std::numeric_limits<double>::infinity();
    if (p.norm() < kDegenerateNorm) {
      set_q(n >= 2 ? any_orthogonal_unit(v) : CVec::Ones(1));
    } else {
      set_q(p);
    }
    return out;
  }

  // Constraint q^H R q = t with R = v v^H - t rho p_d H^H H.
  const CMat rmat = v * v.adjoint() - (t * rho * p_d) * (chan.h_li.adjoint() * chan.h_li);
  Eigen::SelfAdjointEigenSolver<CMat> eig(rmat);
  const RVec d = eig.eigenvalues();  // ascending
  const CMat& u = eig.eigenvectors();
  const RVec bw = (u.adjoint() * a).cwiseAbs2();
  const CVec b = u.adjoint() * a;
  const int m = static_cast<int>(n);
  const double d_max = d(m - 1), d_min = d(0);
  const double eig_tol = 1e-12 * std::max({1.0, std::abs(d_max), std::abs(d_min)});
  const double b_tol = 1e-24 * std::max(1.0, a.squaredNorm());

  if (t >= d_max - eig_tol) {
    out.boundary = true;
    set_q(u.col(m - 1));
    return out;
  }

  auto group_weight = [&](double dk) {
    double w = 0.0;
    for (int i = 0; i < m; ++i)
      if (std::abs(d(i) - dk) <= eig_tol) w += bw(i);
    return w;
  };
  const double top_w = group_weight(d_max);
  const bool bottom_finite = d_min < -eig_tol;
  const double bottom_w = bottom_finite ? group_weight(d_min) : group_weight(0.0);

  // Stationary points are q = (I + mu R)^{-1} a / |.| with 1 + mu d_i > 0. Along that
  // interval psi(mu) = q^H R q decreases from d_max to d_min (or to 0 when R is PSD).
  // Parametrise by x = 1 + mu d_max in (0, x_hi).
  const double x_hi = bottom_finite ? 1.0 - d_max / d_min : std::numeric_limits<double>::infinity();
  auto denom = [&](int i, double x) {
    if (std::abs(d(i) - d_max) <= eig_tol) return x;
    if (bottom_finite && std::abs(d(i) - d_min) <= eig_tol) return (x_hi - x) * (-d_min / d_max);
    return 1.0 + (x - 1.0) * d(i) / d_max;
  };
  auto psi = [&](double x) {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < m; ++i) {
      const double e = denom(i, x);
      const double w = bw(i) / (e * e);
      num += w * d(i);
      den += w;
    }
    return den > 0.0 ? num / den : 0.0;
  };
  auto q_at = [&](double x) {
    CVec coeff(m);
    for (int i = 0; i < m; ++i) coeff(i) = b(i) / denom(i, x);
    return CVec(u * coeff);
  };

  // Degenerate end: the optimum adds a component along an eigenvector orthogonal to a.
  auto boundary_solution = [&](double dk) {
    CVec coeff = CVec::Zero(m);
    int k_idx = -1;
    for (int i = 0; i < m; ++i) {
      if (std::abs(d(i) - dk) <= eig_tol) {
        k_idx = i;
        continue;
      }
      const double den = (dk != 0.0) ? 1.0 - d(i) / dk : d(i);
      coeff(i) = b(i) / den;
    }
    double q0_sq = 0.0, q0_r = 0.0;
    for (int i = 0; i < m; ++i) {
      q0_sq += std::norm(coeff(i));
      q0_r += std::norm(coeff(i)) * d(i);
    }
    const double gamma_sq = std::max(0.0, (t * q0_sq - q0_r) / (dk - t));
    coeff(k_idx) += std::sqrt(gamma_sq);
    out.boundary = true;
    out.lambda1 = (dk != 0.0) ? -1.0 / dk : std::numeric_limits<double>::infinity();
    out.lambda2 = 1.0;
    set_q(u * coeff);
  };

  // Lower bracket: psi(x_lo) >= t.
  double x_lo = 0.5;
  for (int i = 0; i < 1000 && psi(x_lo) < t; ++i) x_lo *= 0.5;
  if (psi(x_lo) < t) {
    if (top_w <= b_tol) {
      boundary_solution(d_max);
    } else {
      out.boundary = true;
      set_q(u.col(m - 1));
    }
    return out;
  }
  // Upper bracket: psi(x_up) <= t.
  double x_up;
  if (bottom_finite) {
    double gap = 0.5 * (x_hi - x_lo);
    x_up = x_hi - gap;
    for (int i = 0; i < 1000 && psi(x_up) > t; ++i) {
      gap *= 0.5;
      x_up = x_hi - gap;
    }
    if (psi(x_up) > t) {
      if (bottom_w <= b_tol) {
        boundary_solution(d_min);
      } else {
        out.boundary = true;
        set_q(u.col(0));
      }
      return out;
    }
  } else {
    x_up = std::max(2.0, 2.0 * x_lo);
    for (int i = 0; i < 1000 && psi(x_up) > t; ++i) x_up *= 2.0;
    if (psi(x_up) > t) {
      boundary_solution(0.0);
      return out;
    }
  }

  for (int it = 0; it < 400; ++it) {
    const double mid = (x_up > 4.0 * x_lo && x_lo > 0.0) ? std::sqrt(x_lo * x_up)
                                                        : 0.5 * (x_lo + x_up);
    if (mid <= x_lo || mid >= x_up) break;
    if (psi(mid) >= t) {
      x_lo = mid;
    } else {
      x_up = mid;
    }
  }
  const double x = 0.5 * (x_lo + x_up);
  const CVec q_raw = q_at(x);
  const double scale = q_raw.norm();
  const double mu = (x - 1.0) / d_max;
  out.lambda2 = scale;
  out.lambda1 = mu * scale;
  set_q(q_raw);
  return out;
}

namespace {

// Search over the jamming power only (single transmit antenna) with the optimal receiver.
TSearchResult solve_power_only(const ChannelRealization& chan, double p_s, double p_d,
                               double rho) {
  const CVec h = chan.h_li.col(0);
  const double e_gain = chan.h_se.squaredNorm();
  const double a_gain = (chan.h_ed.adjoint() * chan.h_se).squaredNorm();
  const double hsd2 = chan.h_sd.squaredNorm();
  const double cross = std::norm(h.dot(chan.h_sd));
  const double hh = h.squaredNorm();
  auto objective = [&](double p) {
    // h_sd^H (rho p h h^H + I)^{-1} h_sd by the matrix inversion lemma.
    const double snr = hsd2 - rho * p * cross / (1.0 + rho * p * hh);
    return std::log2(1.0 + p_s * snr) - eve_rate(p_s, e_gain, p * a_gain);
  };
  TSearchResult res;
  const Max1D best = grid_refine_max(objective, 0.0, p_d, 64, 1e-8 * std::max(1.0, p_d));
  res.q_star = CVec::Ones(1);
  res.p_d_used = best.x;
  res.t_star = best.x;
  res.evaluations = best.evaluations;
  res.r = mmse_receiver_optimal(chan.h_li, res.covariance(), chan.h_sd, rho);
  finish(res, chan, p_s, rho);
  return res;
}

}  // namespace

TSearchResult solve_optimal_receiver(const ChannelRealization& chan, double p_s, double p_d,
                                     double rho) {
  if (chan.m_t() == 1) return solve_power_only(chan, p_s, p_d, rho);
  const double e_gain = chan.h_se.squaredNorm();
  const double hsd2 = chan.h_sd.squaredNorm();

  TSearchResult res;
  res.p_d_used = p_d;
  if (p_d == 0.0 || e_gain < kDegenerateNorm * kDegenerateNorm) {
    const CVec proj = project_out(chan.h_li.adjoint() * chan.h_sd,
                                  chan.h_ed.adjoint() * chan.h_se);
    res.q_star = proj.norm() > kDegenerateNorm ? CVec(proj.normalized())
                                               : any_orthogonal_unit(chan.h_li.adjoint() * chan.h_sd);
    res.r = mrc_receiver(chan.h_sd);
    finish(res, chan, p_s, rho);
    return res;
  }

  // 1 + p_s |h_sd|^2 - rho p_s p_d t is the legitimate SINR term and stays >= 1 on [0, t_max].
  const double tm = t_max(chan, p_d, rho);
  auto objective = [&](double t) {
    const double legit = std::log2(std::max(1.0, 1.0 + p_s * hsd2 - rho * p_s * p_d * t));
    return legit - eve_rate(p_s, e_gain, p_d * h_of_t(chan, t, p_d, rho).value);
  };
  const Max1D best = grid_refine_max(objective, 0.0, tm, 64, 1e-8 * std::max(1.0, tm));
  res.t_star = best.x;
  res.evaluations = best.evaluations;
  res.q_star = h_of_t(chan, best.x, p_d, rho).q;
  res.r = mmse_receiver_optimal(chan.h_li, res.covariance(), chan.h_sd, rho);
  finish(res, chan, p_s, rho);
  return res;
}

JammingDesign solve_zf(const ChannelRealization& chan, double p_s, double p_d, double rho) {
  require_multi_tx(chan, "solve_zf");
  const CVec v = chan.h_li.adjoint() * chan.h_sd;
  const CVec a = chan.h_ed.adjoint() * chan.h_se;
  JammingDesign out;
  const CVec proj = project_out(v, a);
  if (proj.norm() < kDegenerateNorm) {
    out.warnings.push_back("zero-forcing projection annihilates the eavesdropper channel");
    out.q = any_orthogonal_unit(v);
  } else {
    out.q = proj.normalized();
  }
  out.p_d_used = p_d;
  out.p_s_used = p_s;
  out.r = mrc_receiver(chan.h_sd);
  out.rate = secrecy_rate_general(chan, out.covariance(), out.r, p_s, rho);
  return out;
}

PowerQuadratic source_power_quadratic(double s_gain, double e_gain, double w, double p_t) {
  const double big_w = 1.0 + p_t * w;
  return {-w * (e_gain - w), -2.0 * w * big_w, big_w * (big_w - e_gain / s_gain)};
}

double best_source_power(double s_gain, double e_gain, double w, double p_t) {
  auto value = [&](double p) {
    return std::log2((1.0 + p * s_gain) / (1.0 + p * e_gain / (1.0 + (p_t - p) * w)));
  };
  double best_p = p_t, best_v = value(p_t);
  if (s_gain <= 0.0) return best_p;
  const PowerQuadratic q = source_power_quadratic(s_gain, e_gain, w, p_t);
  for (double root : real_polynomial_roots({q.c, q.b, q.a})) {
    if (root > 0.0 && root < p_t) {
      const double v = value(root);
      if (v > best_v) {
        best_v = v;
        best_p = root;
      }
    }
  }
  return best_p;
}

namespace {

// Product of linear factors (alpha_j + beta_j p), lowest degree first.
std::vector<double> linear_product(const std::vector<std::pair<double, double>>& factors) {
  std::vector<double> poly{1.0};
  for (const auto& [alpha, beta] : factors) {
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k] += alpha * poly[k];
      next[k + 1] += beta * poly[k];
    }
    poly = std::move(next);
  }
  return poly;
}

}  // namespace

JointResult joint_power_allocation_fixed_r(const ChannelRealization& chan, const CVec& r,
                                           double p_t, double rho) {
  require_multi_tx(chan, "joint_power_allocation_fixed_r");
  if (!(p_t > 0.0)) throw DomainError("joint_power_allocation_fixed_r: p_t must be positive");
  const CVec self_dir = chan.h_li.adjoint() * r;
  const CVec eve_dir = chan.h_ed.adjoint() * chan.h_se;
  const double k_gain = self_dir.squaredNorm();
  const double a_gain = eve_dir.squaredNorm();
  const double e_gain = chan.h_se.squaredNorm();
  const double s_gain = std::norm(r.dot(chan.h_sd));
  const GtInputs inp = GtInputs::make(self_dir, eve_dir);

  // For a fixed direction (normalised level tn) the objective in the source power p is
  //   (1 + u (P_T - p) + p S) / (1 + u (P_T - p)) * (1 + w (P_T - p)) / (1 + w (P_T - p) + p E)
  // with u = rho |H^H r|^2 tn and w = |H_ed^H h_se|^2 g(tn) / E. Its stationarity condition is a
  // cubic; it reduces to the quadratic of source_power_quadratic when u = 0.
  struct Inner {
    double p = 0.0;
    double value = 0.0;
  };
  auto inner = [&](double tn) {
    const double u = rho * k_gain * tn;
    const double w = a_gain * g_closed_form(inp.corr, tn) / e_gain;
    auto value = [&](double p) {
      const double pd = p_t - p;
      const double legit = std::log2(1.0 + p * s_gain / (1.0 + u * pd));
      return legit - std::log2(1.0 + p * e_gain / (1.0 + w * pd));
    };
    const std::vector<std::pair<double, double>> f = {
        {1.0 + u * p_t, s_gain - u}, {1.0 + u * p_t, -u}, {1.0 + w * p_t, e_gain - w},
        {1.0 + w * p_t, -w}};
    const double sign[4] = {1.0, -1.0, -1.0, 1.0};
    std::vector<double> deriv(4, 0.0);
    for (int k = 0; k < 4; ++k) {
      std::vector<std::pair<double, double>> others;
      for (int j = 0; j < 4; ++j)
        if (j != k) others.push_back(f[j]);
      const std::vector<double> prod = linear_product(others);
      for (std::size_t i = 0; i < prod.size(); ++i) deriv[i] += sign[k] * f[k].second * prod[i];
    }
    Inner best{p_t, value(p_t)};
    for (double root : real_polynomial_roots(deriv)) {
      if (root > 0.0 && root < p_t) {
        const double v = value(root);
        if (v > best.value) best = {root, v};
      }
    }
    return best;
  };

  const Max1D outer =
      grid_refine_max([&](double tn) { return inner(tn).value; }, 0.0, 1.0, 32, 1e-10);
  const Inner at = inner(outer.x);

  JointResult out;
  out.design.r = r;
  out.design.evaluations = outer.evaluations;
  if (!(at.value > 0.0)) {
    out.p_s = p_t;
    out.design.p_d_used = 0.0;
    out.design.q_star = inp.c2;
    out.design.warnings.push_back("no split gives a positive secrecy rate");
  } else {
    out.p_s = at.p;
    out.design.p_d_used = p_t - at.p;
    out.design.q_star = g_of_t(inp, outer.x).q;
    out.design.t_star = outer.x;
  }
  finish(out.design, chan, out.p_s, rho);
  return out;
}

JointResult joint_power_allocation_optimal_r(const ChannelRealization& chan, double p_t,
                                             double rho) {
  if (!(p_t > 0.0)) throw DomainError("joint_power_allocation_optimal_r: p_t must be positive");
  auto objective = [&](double p_s) {
    return solve_optimal_receiver(chan, p_s, p_t - p_s, rho).objective;
  };
  const Max1D best = grid_refine_max(objective, p_t * 1e-3, p_t, 24, 1e-6 * p_t, 2);
  JointResult out;
  out.p_s = best.x;
  out.design = solve_optimal_receiver(chan, best.x, p_t - best.x, rho);
  out.design.evaluations += best.evaluations;
  return out;
}

}  // namespace fdsec::mimo
