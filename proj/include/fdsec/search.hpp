#pragma once

#include <functional>

namespace fdsec {

struct Max1D {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Golden-section search for the maximum of a quasi-concave function on [lo, hi].
/// Stops once the bracket is narrower than tol or after max_iter iterations.
Max1D golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                         double tol = 1e-8, int max_iter = 200);

/// Evaluates f on grid_points equispaced points (endpoints included), then runs golden-section
/// refinement inside the bracket of up to max_peaks best local maxima of the grid.
Max1D grid_refine_max(const std::function<double(double)>& f, double lo, double hi,
                      int grid_points = 64, double tol = 1e-8, int max_peaks = 3);

}  // namespace fdsec

#include <vector>

namespace fdsec {

/// Real roots of sum_k coeffs[k] x^k (lowest degree first). Leading zeros are dropped; the
/// roots come from the companion matrix eigenvalues, keeping those with |imag| <= imag_tol * scale.
std::vector<double> real_polynomial_roots(std::vector<double> coeffs, double imag_tol = 1e-9);

}  // namespace fdsec
