#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "magnomech/errors.hpp"
#include "magnomech/matrices.hpp"

namespace magnomech {

// Steady-state covariance matrix over (Xn, Yn, Xm, Ym, q, p), vacuum
// variance 1/2. Symmetrized on construction.
class CovarianceMatrix {
public:
  CovarianceMatrix() = default;
  explicit CovarianceMatrix(const Mat6& v) : v_(0.5 * (v + v.transpose())) {}

  const Mat6& matrix() const { return v_; }
  double operator()(int i, int j) const { return v_(i, j); }

private:
  Mat6 v_ = Mat6::Zero();
};

// Largest real part over the spectrum of A; the system is stable iff < 0.
inline double stability_margin(const Mat6& a) {
  Eigen::EigenSolver<Mat6> es(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw EigenFailure("eigenvalue iteration did not converge");
  return es.eigenvalues().real().maxCoeff();
}

inline double stability_margin(const DriftMatrix& a) { return stability_margin(a.a); }

// ||A V + V A^T + D||_F / ||D||_F
inline double lyapunov_residual(const Mat6& a, const Mat6& d, const Mat6& v) {
  const double dn = d.norm();
  const Mat6 r = a * v + v * a.transpose() + d;
  return dn > 0.0 ? r.norm() / dn : r.norm();
}

inline double lyapunov_residual(const DriftMatrix& a, const DiffusionMatrix& d,
                                const CovarianceMatrix& v) {
  return lyapunov_residual(a.a, d.d, v.matrix());
}

// Solves A V + V A^T + D = 0 through the vectorized Kronecker-sum system
// (I (x) A + A (x) I) vec V = -vec D. Both sides are scaled by max|A_ij|
// before the solve; V is invariant under that scaling.
inline CovarianceMatrix solve_lyapunov(const DriftMatrix& drift, const DiffusionMatrix& diffusion) {
  const double margin = stability_margin(drift);
  if (!(margin < 0.0)) throw Unstable(margin);

  double scale = drift.a.cwiseAbs().maxCoeff();
  if (scale == 0.0) scale = 1.0;
  const Mat6 a = drift.a / scale;
  const Mat6 d = diffusion.d / scale;

  constexpr int n = 6;
  Eigen::Matrix<double, n * n, n * n> k = Eigen::Matrix<double, n * n, n * n>::Zero();
  // Column-major vec: V(i, j) -> i + n j.
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int m = 0; m < n; ++m) {
        k(i + n * j, m + n * j) += a(i, m);  // (A V)_ij = sum_m A_im V_mj
        k(i + n * j, i + n * m) += a(j, m);  // (V A^T)_ij = sum_m V_im A_jm
      }

  Eigen::Matrix<double, n * n, 1> rhs;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) rhs(i + n * j) = -d(i, j);

  Eigen::PartialPivLU<Eigen::Matrix<double, n * n, n * n>> lu(k);
  if (!(lu.rcond() > 1e3 * std::numeric_limits<double>::epsilon()))
    throw SingularSystem("Kronecker-sum system is numerically singular");
  const Eigen::Matrix<double, n * n, 1> x = lu.solve(rhs);

  Mat6 v;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) v(i, j) = x(i + n * j);
  if (!v.allFinite()) throw SingularSystem("Lyapunov solution is not finite");
  return CovarianceMatrix(v);
}

}  // namespace magnomech
