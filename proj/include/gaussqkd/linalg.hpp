#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "gaussqkd/errors.hpp"
#include "gaussqkd/symplectic.hpp"
#include "gaussqkd/types.hpp"

namespace gaussqkd::detail {

template <typename Scalar>
bool is_symmetric(const Mat<Scalar>& m, Scalar tol) {
  return (m - m.transpose()).template lpNorm<Eigen::Infinity>() <= tol;
}

template <typename Scalar>
void require_covariance_shape(const Mat<Scalar>& gamma, Scalar tol = Scalar(kSymplecticTol)) {
  if (gamma.rows() != gamma.cols() || gamma.rows() % 2 != 0 || gamma.rows() == 0)
    throw MalformedMatrix("covariance matrix must be square with even dimension");
  if (!is_symmetric(gamma, tol))
    throw MalformedMatrix("covariance matrix must be symmetric");
}

/// Solve gamma * x = b for symmetric positive-definite gamma with a
/// condition-number guard: cond(gamma) > 1e12 raises SingularCovariance.
template <typename Scalar>
Vec<Scalar> solve_spd(const Mat<Scalar>& gamma, const Vec<Scalar>& b) {
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(gamma);
  const Vec<Scalar>& w = es.eigenvalues();
  const Scalar wmin = w.minCoeff(), wmax = w.maxCoeff();
  if (!(wmin > Scalar(0)) || wmax / wmin > Scalar(1e12))
    throw SingularCovariance("covariance matrix is singular or ill-conditioned");
  return es.eigenvectors() * (es.eigenvectors().transpose() * b).cwiseQuotient(w);
}

template <typename Scalar>
Scalar det_spd_guarded(const Mat<Scalar>& gamma) {
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(gamma, Eigen::EigenvaluesOnly);
  const Vec<Scalar>& w = es.eigenvalues();
  if (!(w.minCoeff() > Scalar(0)))
    throw SingularCovariance("covariance matrix is not positive definite");
  return w.prod();
}

/// Principal square root of the symmetric PSD matrix m. Eigenvalues in
/// [-clamp_tol, 0) are treated as roundoff and clamped to zero.
template <typename Scalar>
Mat<Scalar> psd_sqrt(const Mat<Scalar>& m, Scalar clamp_tol = Scalar(1e-9)) {
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(m);
  Vec<Scalar> w = es.eigenvalues();
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) < -clamp_tol)
      throw NumericalInstability("psd_sqrt: matrix has a significantly negative eigenvalue");
    w(i) = std::sqrt(std::max(w(i), Scalar(0)));
  }
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().transpose();
}

/// Principal square root of M = -(J*gamma)^2 - I for a physical covariance
/// gamma, computed through the gamma^{1/2}-similarity that symmetrizes M:
/// with A = gamma^{1/2} and T = A J A, A M A^{-1} = -T^2 - I is symmetric PSD.
template <typename Scalar>
Mat<Scalar> sqrt_minus_jgamma_sq_minus_id(const Mat<Scalar>& gamma,
                                          Scalar clamp_tol = Scalar(1e-9)) {
  const Eigen::Index n = gamma.rows() / 2;
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(gamma);
  const Vec<Scalar>& w = es.eigenvalues();
  if (!(w.minCoeff() > Scalar(0)))
    throw SingularCovariance("matrix square root requires positive-definite gamma");
  const Mat<Scalar> A =
      es.eigenvectors() * w.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
  const Mat<Scalar> Ainv =
      es.eigenvectors() * w.cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  const Mat<Scalar> T = A * symplectic_form<Scalar>(n) * A;
  Mat<Scalar> Ms = -(T * T) - Mat<Scalar>::Identity(2 * n, 2 * n);
  Ms = Scalar(0.5) * (Ms + Ms.transpose()).eval();
  return Ainv * psd_sqrt(Ms, clamp_tol) * A;
}

}  // namespace gaussqkd::detail
