#include "fdsec/search.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fdsec {

Max1D golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol,
                         int max_iter) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  Max1D best;
  auto consider = [&](double x, double v) {
    if (best.evaluations == 0 || v > best.value) {
      best.x = x;
      best.value = v;
    }
    ++best.evaluations;
  };

  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  consider(x1, f1);
  consider(x2, f2);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
      consider(x2, f2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
      consider(x1, f1);
    }
  }
  return best;
}

Max1D grid_refine_max(const std::function<double(double)>& f, double lo, double hi,
                      int grid_points, double tol, int max_peaks) {
  grid_points = std::max(grid_points, 3);
  std::vector<double> xs(grid_points), vs(grid_points);
  Max1D best;
  for (int i = 0; i < grid_points; ++i) {
    xs[i] = (i == grid_points - 1) ? hi : lo + (hi - lo) * i / (grid_points - 1);
    vs[i] = f(xs[i]);
    if (i == 0 || vs[i] > best.value) {
      best.x = xs[i];
      best.value = vs[i];
    }
  }
  best.evaluations = grid_points;
  if (hi <= lo) return best;

  std::vector<int> peaks;
  for (int i = 0; i < grid_points; ++i) {
    const bool left_ok = i == 0 || vs[i] >= vs[i - 1];
    const bool right_ok = i == grid_points - 1 || vs[i] >= vs[i + 1];
    if (left_ok && right_ok) peaks.push_back(i);
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](int a, int b) { return vs[a] > vs[b]; });
  if (static_cast<int>(peaks.size()) > max_peaks) peaks.resize(max_peaks);

  for (int i : peaks) {
    const double a = xs[std::max(0, i - 1)];
    const double b = xs[std::min(grid_points - 1, i + 1)];
    const Max1D local = golden_section_max(f, a, b, tol);
    best.evaluations += local.evaluations;
    if (local.value > best.value) {
      best.x = local.x;
      best.value = local.value;
    }
  }
  return best;
}

}  // namespace fdsec

#include <Eigen/Dense>

namespace fdsec {

std::vector<double> real_polynomial_roots(std::vector<double> coeffs, double imag_tol) {
  double scale = 0.0;
  for (double c : coeffs) scale = std::max(scale, std::abs(c));
  while (!coeffs.empty() && std::abs(coeffs.back()) <= 1e-15 * scale) coeffs.pop_back();
  std::vector<double> roots;
  const int degree = static_cast<int>(coeffs.size()) - 1;
  if (degree < 1) return roots;
  if (degree == 1) {
    roots.push_back(-coeffs[0] / coeffs[1]);
    return roots;
  }
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -coeffs[i] / coeffs[degree];
  Eigen::EigenSolver<Eigen::MatrixXd> eig(companion, false);
  for (int i = 0; i < degree; ++i) {
    const auto z = eig.eigenvalues()(i);
    if (std::abs(z.imag()) <= imag_tol * std::max(1.0, std::abs(z))) roots.push_back(z.real());
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace fdsec
