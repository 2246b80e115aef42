#pragma once

#include <cmath>
#include <cstdint>

#include "fdsec/model.hpp"

namespace testutil {

inline fdsec::ChannelRealization random_channel(fdsec::ComplexGaussian& rng, int m_t = 2,
                                                int m_r = 2, int m_e = 2) {
  fdsec::ChannelRealization c;
  c.h_sd = rng.vector(m_r);
  c.h_se = rng.vector(m_e);
  c.h_ed = rng.matrix(m_e, m_t);
  c.h_li = rng.matrix(m_r, m_t);
  return c;
}

inline fdsec::CVec random_unit(fdsec::ComplexGaussian& rng, int n) {
  return rng.vector(n).normalized();
}

// Random PSD matrix with trace `trace`.
inline fdsec::CMat random_psd(fdsec::ComplexGaussian& rng, int n, double trace) {
  const fdsec::CMat a = rng.matrix(n, n);
  fdsec::CMat q = a * a.adjoint();
  return q * (trace / q.trace().real());
}

inline double central_derivative(const auto& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace testutil
