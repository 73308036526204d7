#pragma once

#include <algorithm>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "magnomech/errors.hpp"

namespace magnomech {

// Tolerance below the vacuum value 1/2 accepted as round-off.
inline constexpr double physicality_tolerance = 1e-8;

// Block-diagonal symplectic form, one [[0, 1], [-1, 0]] block per mode.
template <int N>
Eigen::Matrix<double, N, N> symplectic_form() {
  static_assert(N % 2 == 0);
  Eigen::Matrix<double, N, N> omega = Eigen::Matrix<double, N, N>::Zero();
  for (int k = 0; k < N; k += 2) {
    omega(k, k + 1) = 1.0;
    omega(k + 1, k) = -1.0;
  }
  return omega;
}

// Symplectic spectrum of a positive-definite covariance matrix, ascending,
// one value per mode. Computed as the singular values of the real
// antisymmetric V^{1/2} Omega V^{1/2}, which is similar to Omega V and
// therefore has the same spectrum as |i Omega V|.
template <int N>
std::vector<double> symplectic_eigenvalues(const Eigen::Matrix<double, N, N>& v) {
  using Mat = Eigen::Matrix<double, N, N>;
  const Mat sym = 0.5 * (v + v.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(sym);
  if (es.info() != Eigen::Success) throw EigenFailure("symmetric eigensolver failed");
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw Unphysical("covariance matrix is not positive definite");

  const Mat root = es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
                   es.eigenvectors().transpose();
  const Mat h = root * symplectic_form<N>() * root;
  Eigen::JacobiSVD<Mat> svd(h);
  std::vector<double> sv(svd.singularValues().data(), svd.singularValues().data() + N);
  std::sort(sv.begin(), sv.end());

  // Singular values come in equal pairs.
  std::vector<double> nu;
  nu.reserve(N / 2);
  for (int k = 0; k < N; k += 2) nu.push_back(0.5 * (sv[k] + sv[k + 1]));
  return nu;
}

template <int N>
bool is_physical(const Eigen::Matrix<double, N, N>& v, double tol = physicality_tolerance) {
  try {
    return symplectic_eigenvalues<N>(v).front() >= 0.5 - tol;
  } catch (const Unphysical&) {
    return false;
  }
}

}  // namespace magnomech
