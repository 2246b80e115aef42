#include "fdsec/cdi.hpp"

#include <algorithm>
#include <cmath>

#include "fdsec/linalg.hpp"
#include "fdsec/mimo.hpp"
#include "fdsec/search.hpp"

namespace fdsec::cdi {

namespace {

double secrecy_bits(double legit_gain, double p_s, double e_gain, double p_d, double x,
                    int n_null) {
  const double legit = std::log2(1.0 + p_s * legit_gain);
  const double leak = std::log2(1.0 + p_s * e_gain / (1.0 + p_d * x / n_null));
  return std::max(0.0, legit - leak);
}

}  // namespace

void CdiSpec::validate() const {
  config.validate();
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  if (h_sd.size() != config.m_r) throw DomainError("h_sd must have m_r entries");
  if (config.m_t < 2) throw DomainError("CDI designs need m_t >= 2");
}

NullBasis null_basis_w(const CMat& h_li, const CVec& r) {
  if (h_li.cols() < 2) throw DomainError("null_basis_w: needs m_t >= 2");
  const CVec v = h_li.adjoint() * r;
  return {orthogonal_complement(v), v.norm() < kDegenerateNorm};
}

double jamming_gain(const CMat& w, const CMat& h_ed, const CVec& h_se) {
  return (w.adjoint() * (h_ed.adjoint() * h_se)).squaredNorm() / h_se.squaredNorm();
}

double exponential_sum_cdf(int n, double scale, double x) {
  if (x <= 0.0) return 0.0;
  const double z = x / scale;
  double term = 1.0, sum = 1.0;
  for (int j = 1; j < n; ++j) {
    term *= z / j;
    sum += term;
  }
  return std::clamp(1.0 - std::exp(-z) * sum, 0.0, 1.0);
}

double SampleStats::ecdf(double x) const {
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
  return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

SampleStats chi_sq_jamming_sample(int m_t, int m_e, double sigma_d_sq, std::uint64_t seed,
                                  int trials) {
  if (m_t < 2) throw DomainError("chi_sq_jamming_sample: needs m_t >= 2");
  ComplexGaussian rng(seed);
  SampleStats out;
  out.sorted.reserve(trials);
  for (int i = 0; i < trials; ++i) {
    const CVec h_se = rng.vector(m_e);
    const CMat h_ed = rng.matrix(m_e, m_t, sigma_d_sq);
    const CVec self_dir = rng.vector(m_t);
    out.sorted.push_back(jamming_gain(orthogonal_complement(self_dir), h_ed, h_se));
  }
  double sum = 0.0;
  for (double x : out.sorted) sum += x;
  out.mean = sum / trials;
  double ss = 0.0;
  for (double x : out.sorted) ss += (x - out.mean) * (x - out.mean);
  out.variance = trials > 1 ? ss / (trials - 1) : 0.0;
  std::sort(out.sorted.begin(), out.sorted.end());
  return out;
}

double ks_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
  std::size_t i = 0, j = 0;
  double d = 0.0;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

double ks_critical_001(std::size_t n, std::size_t m) {
  constexpr double c = 1.628;  // Kolmogorov distribution 0.99 quantile
  if (m == 0) return c / std::sqrt(static_cast<double>(n));
  return c * std::sqrt(static_cast<double>(n + m) / static_cast<double>(n * m));
}

double ergodic_approx_objective(const SystemConfig& config, const CVec& h_sd, double p_s,
                                double p_d) {
  const double e_mean = config.m_e * config.sigma_s_sq;
  return std::log2(1.0 + p_s * h_sd.squaredNorm()) -
         std::log2(1.0 + p_s * e_mean / (1.0 + p_d * config.sigma_d_sq));
}

PowerSplit ergodic_pa(const SystemConfig& config, const CVec& h_sd) {
  if (config.m_t < 2) throw DomainError("ergodic_pa: needs m_t >= 2");
  const double p_t = config.p_t;
  const double s_gain = h_sd.squaredNorm();
  const double e_mean = config.m_e * config.sigma_s_sq;
  double p_s = mimo::best_source_power(s_gain, e_mean, config.sigma_d_sq, p_t);
  double value = ergodic_approx_objective(config, h_sd, p_s, p_t - p_s);
  if (!(value > 0.0)) {
    // No split is positive; keep the least negative point of a grid.
    constexpr int steps = 1000;
    for (int i = 1; i <= steps; ++i) {
      const double p = p_t * i / steps;
      const double v = ergodic_approx_objective(config, h_sd, p, p_t - p);
      if (v > value) {
        value = v;
        p_s = p;
      }
    }
  }
  return {p_s, p_t - p_s, std::max(0.0, value)};
}

McEstimate ergodic_rate_mc(const SystemConfig& config, const CVec& h_sd, double p_s, double p_d,
                           int trials, std::uint64_t seed) {
  if (trials < 1) throw DomainError("ergodic_rate_mc: trials must be >= 1");
  if (config.m_t < 2) throw DomainError("ergodic_rate_mc: needs m_t >= 2");
  ComplexGaussian rng(seed);
  // X has the same law for every fixed orthonormal W, so use the complement of e_1.
  const CMat w = CMat::Identity(config.m_t, config.m_t).rightCols(config.m_t - 1);
  const double legit_gain = h_sd.squaredNorm();
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < trials; ++i) {
    const CVec h_se = rng.vector(config.m_e, config.sigma_s_sq);
    const CMat h_ed = rng.matrix(config.m_e, config.m_t, config.sigma_d_sq);
    const double x = jamming_gain(w, h_ed, h_se);
    const double rate =
        secrecy_bits(legit_gain, p_s, h_se.squaredNorm(), p_d, x, config.m_t - 1);
    sum += rate;
    sum_sq += rate * rate;
  }
  McEstimate out;
  out.mean = sum / trials;
  if (trials > 1) {
    const double var = std::max(0.0, (sum_sq - trials * out.mean * out.mean) / (trials - 1));
    out.stderr_ = std::sqrt(var / trials);
  }
  return out;
}

double outage_prob_closed_form(const OutageParams& p) {
  if (!(p.a_bar > 0.0)) throw DomainError("outage_prob_closed_form: a_bar must be positive");
  if (p.m < 1) throw DomainError("outage_prob_closed_form: m must be >= 1");
  const int m = p.m, n = p.n;
  const double a = p.a_bar, b = p.b_bar;
  if (b == 0.0 || n == 0) {
    // Gamma(m) tail at 1 / a_bar.
    return 1.0 - exponential_sum_cdf(m, 1.0, 1.0 / a);
  }
  if (!(b > 0.0)) throw DomainError("outage_prob_closed_form: b_bar must be nonnegative");

  // Condition on B and integrate the Gamma(m) tail of A: a negative-binomial mixture.
  auto lf = [](int k) { return std::lgamma(static_cast<double>(k) + 1.0); };
  const double log_a_share = std::log(a / (a + b)), log_b_share = std::log(b / (a + b));
  std::vector<double> terms;
  for (int i = 0; i <= m - 1; ++i) {
    const double log_mix = lf(n + i - 1) - lf(i) - lf(n - 1) + n * log_a_share + i * log_b_share;
    for (int l = 0; l <= m - i - 1; ++l) {
      terms.push_back(std::exp(-1.0 / a + log_mix - l * std::log(a) - lf(l)));
    }
  }
  std::sort(terms.begin(), terms.end(), std::greater<>());
  double sum = 0.0;
  for (double t : terms) sum += t;
  return std::clamp(sum, 0.0, 1.0);
}

double outage_probability(const CdiSpec& spec, double p_s, double p_d, double rate) {
  const double legit = 1.0 + p_s * spec.h_sd.squaredNorm();
  const double alpha = legit / std::exp2(rate) - 1.0;
  if (alpha <= 0.0) return 1.0;
  const int n = spec.config.m_t - 1;
  OutageParams op;
  op.a_bar = p_s * spec.config.sigma_s_sq / alpha;
  op.b_bar = p_d * spec.config.sigma_d_sq / n;
  op.m = spec.config.m_e;
  op.n = n;
  return outage_prob_closed_form(op);
}

double outage_rate(const CdiSpec& spec, double p_s, double p_d) {
  if (!(p_s > 0.0)) return 0.0;
  const double eps = spec.epsilon;
  if (outage_probability(spec, p_s, p_d, 0.0) > eps) return 0.0;
  double lo = 0.0, hi = std::log2(1.0 + p_s * spec.h_sd.squaredNorm());
  for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (outage_probability(spec, p_s, p_d, mid) <= eps) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

PowerSplit outage_pa(const CdiSpec& spec, double p_t) {
  if (!(p_t > 0.0)) throw DomainError("outage_pa: p_t must be positive");
  auto objective = [&](double p_s) { return outage_rate(spec, p_s, p_t - p_s); };
  const Max1D best = grid_refine_max(objective, p_t * 1e-3, p_t, 32, 1e-9 * p_t, 2);
  return {best.x, p_t - best.x, best.value};
}

}  // namespace fdsec::cdi
