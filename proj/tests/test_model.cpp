#include <doctest.h>

#include <cmath>

#include "fdsec/model.hpp"
#include "helpers.hpp"

using namespace fdsec;

namespace {

ChannelRealization scalar_channel(double g_sd, double g_se, double g_ed, double g_li) {
  ChannelRealization c;
  c.h_sd = CVec::Constant(1, std::sqrt(g_sd));
  c.h_se = CVec::Constant(1, std::sqrt(g_se));
  c.h_ed = CMat::Constant(1, 1, std::sqrt(g_ed));
  c.h_li = CMat::Constant(1, 1, std::sqrt(g_li));
  return c;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("config validation rejects out-of-range values") {
  SystemConfig c;
  CHECK_NOTHROW(c.validate());
  c.rho = 1.5;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = SystemConfig{};
  c.m_e = 0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = SystemConfig{};
  c.sigma_d_sq = 0.0;
  CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("sample_channels is deterministic and has the right shapes") {
  SystemConfig c;
  const auto a = sample_channels(c, 42);
  const auto b = sample_channels(c, 42);
  CHECK(a.h_sd == b.h_sd);
  CHECK(a.h_se == b.h_se);
  CHECK(a.h_ed == b.h_ed);
  CHECK(a.h_li == b.h_li);
  CHECK(a.h_ed.rows() == 2);
  CHECK(a.h_ed.cols() == 2);
  CHECK(a.h_li.rows() == 2);
  CHECK(a.h_li.cols() == 2);
  const auto d = sample_channels(c, 43);
  CHECK(d.h_sd != a.h_sd);
}

TEST_CASE("h_se energy matches its variance in the mean") {
  SystemConfig c;
  c.m_e = 3;
  c.sigma_s_sq = 1.0;
  ComplexGaussian rng(11);
  const int n = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = rng.vector(c.m_e, c.sigma_s_sq).squaredNorm();
    sum += e;
    sum_sq += e * e;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum_sq / n - mean * mean) / n);
  CHECK(std::abs(mean - c.m_e) < 3.0 * se);

  // The sampler in sample_channels uses the same variance convention.
  c.sigma_s_sq = 4.0;
  double s2 = 0.0;
  for (int i = 0; i < 20000; ++i) s2 += sample_channels(c, derive_seed(5, i)).h_se.squaredNorm();
  CHECK(s2 / 20000 == doctest::Approx(12.0).epsilon(0.03));
}

TEST_CASE("derive_seed separates streams") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(1, 3, 0) != derive_seed(1, 3, 1));
  CHECK(derive_seed(9, 9, 9) == derive_seed(9, 9, 9));
}

TEST_CASE("mrc_receiver normalises") {
  CVec h(2);
  h << 2.0, 0.0;
  const CVec r = mrc_receiver(h);
  CHECK(std::abs(r(0) - cdouble(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(r(1)) < 1e-15);

  CVec g(2);
  g << cdouble(1, 1), cdouble(1, -1);
  const CVec s = mrc_receiver(g);
  CHECK(std::abs(s(0) - cdouble(0.5, 0.5)) < 1e-15);
  CHECK(std::abs(s(1) - cdouble(0.5, -0.5)) < 1e-15);

  ComplexGaussian rng(3);
  for (int i = 0; i < 100; ++i) CHECK(mrc_receiver(rng.vector(3)).norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(mrc_receiver(CVec::Zero(2)), DegenerateChannelError);
}

TEST_CASE("fixed MMSE receiver") {
  ComplexGaussian rng(4);
  const CMat h = rng.matrix(2, 2);
  const CVec h_sd = rng.vector(2);
  CHECK((mmse_receiver_fixed(h, h_sd, 0.0) - mrc_receiver(h_sd)).norm() < 1e-14);

  const double rho = 0.7;
  const CMat a = rho * h * h.adjoint() + CMat::Identity(2, 2);
  const CVec x = a.fullPivLu().solve(h_sd);
  const CVec r = mmse_receiver_fixed(h, h_sd, rho);
  CHECK(r.norm() == doctest::Approx(1.0));
  CHECK((r - x.normalized()).norm() < 1e-12);
}

TEST_CASE("optimal MMSE receiver maximises the received SINR") {
  ComplexGaussian rng(5);
  for (int inst = 0; inst < 20; ++inst) {
    const auto chan = testutil::random_channel(rng, 2, 3, 2);
    const CMat q = testutil::random_psd(rng, 2, 5.0);
    const double rho = 0.6, p_s = 3.0;
    const CVec r = mmse_receiver_optimal(chan.h_li, q, chan.h_sd, rho);
    const double best = received_sinr(chan, q, r, p_s, rho);
    CHECK(best >= received_sinr(chan, q, mrc_receiver(chan.h_sd), p_s, rho) * (1 - 1e-9));
    for (int k = 0; k < 1000; ++k) {
      const CVec u = testutil::random_unit(rng, 3);
      CHECK(best >= received_sinr(chan, q, u, p_s, rho) * (1 - 1e-9));
    }
  }
  const auto chan = testutil::random_channel(rng);
  const CMat q = testutil::random_psd(rng, 2, 2.0);
  CHECK((mmse_receiver_optimal(chan.h_li, CMat::Zero(2, 2), chan.h_sd, 0.5) -
         mrc_receiver(chan.h_sd)).norm() < 1e-14);
  CHECK((mmse_receiver_optimal(chan.h_li, q, chan.h_sd, 0.0) - mrc_receiver(chan.h_sd)).norm() <
        1e-14);
}

TEST_CASE("require_psd") {
  CMat q = CMat::Identity(2, 2);
  CHECK_NOTHROW(require_psd(q));
  q(1, 1) = -1e-3;
  CHECK_THROWS_AS(require_psd(q), InvalidCovarianceError);
  CHECK_THROWS_AS(mmse_receiver_optimal(CMat::Identity(2, 2), q, CVec::Ones(2), 0.5),
                  InvalidCovarianceError);
  CMat nh = CMat::Identity(2, 2);
  nh(0, 1) = 1.0;
  CHECK_THROWS_AS(require_psd(nh), InvalidCovarianceError);
}

TEST_CASE("secrecy_rate_general scalar example") {
  const auto chan = scalar_channel(2.0, 1.0, 1.0, 1.0);
  const CMat q = CMat::Constant(1, 1, 1.0);
  const CVec r = CVec::Constant(1, 1.0);
  const auto rep = secrecy_rate_general(chan, q, r, 1.0, 0.5);
  CHECK(rep.rate_legit == doctest::Approx(std::log2(1.0 + 2.0 / 1.5)).epsilon(1e-12));
  CHECK(rep.rate_leak == doctest::Approx(std::log2(1.5)).epsilon(1e-12));
  CHECK(rep.secrecy == doctest::Approx(0.6374).epsilon(1e-4));
}

TEST_CASE("secrecy_rate_general trivial cases and contract") {
  const auto eq = scalar_channel(1.3, 1.3, 1.0, 1.0);
  const CVec r = CVec::Constant(1, 1.0);
  CHECK(secrecy_rate_general(eq, CMat::Zero(1, 1), r, 4.0, 0.5).secrecy == 0.0);
  ComplexGaussian rng(6);
  const auto chan = testutil::random_channel(rng);
  const CMat q = testutil::random_psd(rng, 2, 3.0);
  CHECK(secrecy_rate_general(chan, q, mrc_receiver(chan.h_sd), 0.0, 0.5).secrecy == 0.0);
  CHECK_THROWS_AS(secrecy_rate_general(chan, q, 1.1 * mrc_receiver(chan.h_sd), 1.0, 0.5),
                  ContractViolation);
}

TEST_CASE("every evaluator floors at zero and matches the difference") {
  ComplexGaussian rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto chan = testutil::random_channel(rng);
    const CMat q = testutil::random_psd(rng, 2, 10.0 * (i % 5));
    const double p_s = 0.1 + i % 7;
    const double rho = (i % 11) / 10.0;
    const CVec r = testutil::random_unit(rng, 2);
    for (const auto& rep : {secrecy_rate_general(chan, q, r, p_s, rho),
                            secrecy_rate_mmse_pair(chan, q, p_s, rho),
                            secrecy_rate_hd(rng.vector(4), chan.h_se, p_s)}) {
      CHECK(rep.secrecy >= 0.0);
      CHECK(rep.secrecy == std::max(0.0, rep.rate_legit - rep.rate_leak));
    }
  }
}

TEST_CASE("more jamming never helps an MRC eavesdropper at rho = 0") {
  ComplexGaussian rng(8);
  for (int i = 0; i < 50; ++i) {
    const auto chan = testutil::random_channel(rng);
    const CVec q0 = testutil::random_unit(rng, 2);
    const CVec r = mrc_receiver(chan.h_sd);
    double prev = -1.0;
    for (double p : {0.0, 0.5, 1.0, 5.0, 50.0, 500.0}) {
      const double s = secrecy_rate_general(chan, p * q0 * q0.adjoint(), r, 2.0, 0.0).secrecy;
      CHECK(s >= prev - 1e-12);
      prev = s;
    }
  }
}

TEST_CASE("MMSE pair evaluator") {
  ComplexGaussian rng(9);
  for (int i = 0; i < 100; ++i) {
    const auto chan = testutil::random_channel(rng);
    const double p_s = 0.5 + i % 10;
    const CMat q = testutil::random_psd(rng, 2, 1.0 + i % 20);
    const auto mrc = secrecy_rate_general(chan, q, mrc_receiver(chan.h_sd), p_s, 0.5);
    const auto pair = secrecy_rate_mmse_pair(chan, q, p_s, 0.5);
    CHECK(pair.rate_leak >= mrc.rate_leak - 1e-12);
    CHECK(pair.rate_legit >= mrc.rate_legit - 1e-12);
  }
  const auto chan = testutil::random_channel(rng);
  const auto z = secrecy_rate_mmse_pair(chan, CMat::Zero(2, 2), 3.0, 0.5);
  CHECK(z.rate_leak == doctest::Approx(std::log2(1.0 + 3.0 * chan.h_se.squaredNorm())));

  // Jamming in the null space of H_ed is invisible to the eavesdropper.
  ChannelRealization c = chan;
  c.h_ed = rng.matrix(1, 2);
  c.h_se = rng.vector(1);
  const CVec null = CVec(c.h_ed.adjoint().col(0)).normalized();
  CVec q_dir(2);
  q_dir << -std::conj(null(1)), std::conj(null(0));
  CHECK((c.h_ed * q_dir).norm() < 1e-12);
  const auto inv = secrecy_rate_mmse_pair(c, 7.0 * q_dir * q_dir.adjoint(), 3.0, 0.5);
  CHECK(inv.rate_leak == doctest::Approx(std::log2(1.0 + 3.0 * c.h_se.squaredNorm())));
}

TEST_CASE("half-duplex evaluator") {
  CVec hd(4);
  hd << 2.0, 0.0, 0.0, 0.0;
  CVec se(2);
  se << 1.0, 0.0;
  CHECK(secrecy_rate_hd(hd, se, 10.0).secrecy == doctest::Approx(std::log2(41.0 / 11.0)));
  CHECK(secrecy_rate_hd(hd, se, 10.0).secrecy == doctest::Approx(1.898).epsilon(1e-3));
  CHECK(secrecy_rate_hd(hd, se, 0.0).secrecy == 0.0);
  CVec se2(2);
  se2 << 0.0, cdouble(0.0, 2.0);
  CHECK(secrecy_rate_hd(hd, se2, 10.0).secrecy == 0.0);
}

}  // TEST_SUITE
