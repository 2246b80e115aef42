#include "fdsec/dc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fdsec/mimo.hpp"

namespace fdsec::dc {

namespace {

constexpr int kInnerMaxIter = 2000;

double logdet_hpd(const CMat& a) {
  Eigen::LLT<CMat> llt(a);
  if (llt.info() != Eigen::Success) throw InvalidCovarianceError("logdet of a non-PD matrix");
  const CMat& packed = llt.matrixLLT();
  double s = 0.0;
  for (Eigen::Index i = 0; i < packed.rows(); ++i) s += std::log(packed(i, i).real());
  return 2.0 * s;
}

CMat hermitian_part(const CMat& a) { return 0.5 * (a + a.adjoint()); }

// Fixed pieces of one problem instance.
struct Problem {
  const ChannelRealization& chan;
  CMat a_d;  // I + P_s h_sd h_sd^H
  CMat a_e;  // I + P_s h_se h_se^H
  CMat h_eff;  // sqrt(rho) H
  double p_d;

  Problem(const ChannelRealization& c, double p_s, double p_d_, double rho)
      : chan(c), h_eff(std::sqrt(rho) * c.h_li), p_d(p_d_) {
    const auto n_r = c.h_sd.size(), n_e = c.h_se.size();
    a_d = CMat::Identity(n_r, n_r) + p_s * c.h_sd * c.h_sd.adjoint();
    a_e = CMat::Identity(n_e, n_e) + p_s * c.h_se * c.h_se.adjoint();
  }

  CMat self_cov(const CMat& q) const { return h_eff * q * h_eff.adjoint(); }
  CMat eve_cov(const CMat& q) const { return chan.h_ed * q * chan.h_ed.adjoint(); }

  // Concave part f(Q) in nats.
  double f(const CMat& q) const {
    const CMat s = self_cov(q), e = eve_cov(q);
    return logdet_hpd(a_d + s) + logdet_hpd(CMat::Identity(e.rows(), e.cols()) + e);
  }

  CMat grad_f(const CMat& q) const {
    const CMat s = self_cov(q), e = eve_cov(q);
    const CMat i_e = CMat::Identity(e.rows(), e.cols());
    return hermitian_part(h_eff.adjoint() * (a_d + s).llt().solve(h_eff) +
                          chan.h_ed.adjoint() * (i_e + e).llt().solve(chan.h_ed));
  }

  // Gradient of the subtracted concave part g at q_k.
  CMat grad_g(const CMat& q) const {
    const CMat s = self_cov(q), e = eve_cov(q);
    const CMat i_s = CMat::Identity(s.rows(), s.cols());
    return hermitian_part(h_eff.adjoint() * (i_s + s).llt().solve(h_eff) +
                          chan.h_ed.adjoint() * (a_e + e).llt().solve(chan.h_ed));
  }
};

double inner(const CMat& a, const CMat& b) { return (a.adjoint() * b).trace().real(); }

// Projected gradient ascent on f(Q) - tr(G Q) from q0. Returns false when the iteration cap
// was reached before the gradient-mapping norm fell below the threshold.
bool maximise_surrogate(const Problem& pb, const CMat& g_lin, CMat& q) {
  auto phi = [&](const CMat& x) { return pb.f(x) - inner(g_lin, x); };
  double step = 1.0;
  {
    const double gnorm = (pb.grad_f(q) - g_lin).norm();
    if (gnorm > 0.0) step = std::max(1.0, pb.p_d) / gnorm;
  }
  double value = phi(q);
  for (int it = 0; it < kInnerMaxIter; ++it) {
    const CMat grad = pb.grad_f(q) - g_lin;
    const double mapping = (q - project_psd_trace(q + grad, pb.p_d)).norm();
    if (mapping <= 1e-6 / std::max(1.0, pb.p_d)) return true;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      const CMat cand = project_psd_trace(q + step * grad, pb.p_d);
      const CMat delta = cand - q;
      const double dn2 = delta.squaredNorm();
      if (dn2 == 0.0) return true;
      const double v = phi(cand);
      if (v >= value + inner(grad, delta) - dn2 / (2.0 * step)) {
        q = cand;
        value = v;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) return false;
    step *= 2.0;
  }
  return false;
}

}  // namespace

double dc_objective(const ChannelRealization& chan, const CMat& q_cov, double p_s, double rho) {
  require_psd(q_cov);
  const Problem pb(chan, p_s, 0.0, rho);
  const CMat s = pb.self_cov(q_cov), e = pb.eve_cov(q_cov);
  const CMat i_s = CMat::Identity(s.rows(), s.cols()), i_e = CMat::Identity(e.rows(), e.cols());
  const double nats = logdet_hpd(pb.a_d + s) - logdet_hpd(i_s + s) - logdet_hpd(pb.a_e + e) +
                      logdet_hpd(i_e + e);
  return nats / std::numbers::ln2;
}

CMat project_psd_trace(const CMat& q, double budget) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(q));
  RVec lam = es.eigenvalues().cwiseMax(0.0);
  if (lam.sum() > budget) {
    std::vector<double> sorted(lam.data(), lam.data() + lam.size());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cum = 0.0, tau = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      cum += sorted[k];
      const double cand = (cum - budget) / static_cast<double>(k + 1);
      if (k + 1 == sorted.size() || sorted[k + 1] <= cand) {
        tau = cand;
        break;
      }
    }
    lam = (lam.array() - tau).cwiseMax(0.0);
  }
  const CMat& v = es.eigenvectors();
  return hermitian_part(v * lam.cast<cdouble>().asDiagonal() * v.adjoint());
}

DcState dc_step(const ChannelRealization& chan, const DcState& state, double p_s, double p_d,
                double rho) {
  const Problem pb(chan, p_s, p_d, rho);
  CMat q = state.q_k;
  const bool inner_ok = maximise_surrogate(pb, pb.grad_g(state.q_k), q);
  DcState next;
  next.iteration = state.iteration + 1;
  next.converged = inner_ok;
  const double value = dc_objective(chan, q, p_s, rho);
  // Rounding can undo the majorisation guarantee by a hair; keep the old iterate then.
  if (value >= state.objective) {
    next.q_k = q;
    next.objective = value;
  } else {
    next.q_k = state.q_k;
    next.objective = state.objective;
  }
  return next;
}

DcResult dc_solve(const ChannelRealization& chan, double p_s, double p_d, double rho, DcInit init,
                  double tol, int max_iter) {
  if (!(p_d >= 0.0)) throw DomainError("dc_solve: p_d must be nonnegative");
  const int m_t = chan.m_t();
  DcState state;
  switch (init) {
    case DcInit::zero:
      state.q_k = CMat::Zero(m_t, m_t);
      break;
    case DcInit::scaled_identity:
      state.q_k = (p_d / m_t) * CMat::Identity(m_t, m_t);
      break;
    case DcInit::zf:
      if (m_t >= 2) {
        state.q_k = mimo::solve_zf(chan, p_s, p_d, rho).covariance();
      } else {
        state.q_k = p_d * CMat::Identity(1, 1);
      }
      break;
  }
  state.objective = dc_objective(chan, state.q_k, p_s, rho);

  DcResult out;
  out.trace.push_back(state.objective);
  for (int k = 0; k < max_iter; ++k) {
    const DcState next = dc_step(chan, state, p_s, p_d, rho);
    out.trace.push_back(next.objective);
    const double change = next.objective - state.objective;
    state = next;
    out.iterations = k + 1;
    if (std::abs(change) < tol) {
      out.converged = true;
      break;
    }
  }
  out.q_cov = state.q_k;
  out.rate = secrecy_rate_mmse_pair(chan, out.q_cov, p_s, rho);
  return out;
}

}  // namespace fdsec::dc
