#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "gaussqkd/errors.hpp"
#include "gaussqkd/linalg.hpp"
#include "gaussqkd/symplectic.hpp"
#include "gaussqkd/types.hpp"

namespace gaussqkd {

/// N-mode Gaussian state given by its displacement vector and covariance
/// matrix in dimensionless quadrature units (vacuum has gamma = I).
template <typename Scalar>
struct GaussianState {
  Eigen::Index n_modes;
  Vec<Scalar> d;
  Mat<Scalar> gamma;

  GaussianState(Vec<Scalar> d_, Mat<Scalar> gamma_)
      : n_modes(gamma_.rows() / 2), d(std::move(d_)), gamma(std::move(gamma_)) {
    detail::require_covariance_shape(gamma);
    if (d.size() != gamma.rows())
      throw DimensionError("GaussianState: displacement size must match covariance dimension");
  }
  explicit GaussianState(Mat<Scalar> gamma_)
      : GaussianState(Vec<Scalar>::Zero(gamma_.rows()), std::move(gamma_)) {}
};

template <typename Scalar>
GaussianState<Scalar> vacuum_state(Eigen::Index n_modes = 1) {
  return GaussianState<Scalar>(Mat<Scalar>::Identity(2 * n_modes, 2 * n_modes));
}

template <typename Scalar>
GaussianState<Scalar> coherent_state(Scalar q0, Scalar p0) {
  Vec<Scalar> d(2);
  d << q0, p0;
  return GaussianState<Scalar>(std::move(d), Mat<Scalar>::Identity(2, 2));
}

template <typename Scalar>
GaussianState<Scalar> squeezed_state(Scalar r) {
  Mat<Scalar> g = Mat<Scalar>::Zero(2, 2);
  g(0, 0) = std::exp(-2 * r);
  g(1, 1) = std::exp(2 * r);
  return GaussianState<Scalar>(std::move(g));
}

/// Thermal state with mean occupation M: gamma = (2M+1) I.
template <typename Scalar>
GaussianState<Scalar> thermal_state(Scalar mean_occupation, Eigen::Index n_modes = 1) {
  if (mean_occupation < Scalar(0))
    throw InvalidArgument("thermal_state: mean occupation must be >= 0");
  return GaussianState<Scalar>(Mat<Scalar>::Identity(2 * n_modes, 2 * n_modes) *
                               (2 * mean_occupation + 1));
}

/// Two-mode squeezed vacuum with squeezing parameter r.
template <typename Scalar>
GaussianState<Scalar> tmsv_state(Scalar r) {
  const auto t = two_mode_squeezer(r);
  return GaussianState<Scalar>(t.S * t.S.transpose());
}

// ---- spectra and validity ---------------------------------------------------

/// Positive half of spec(-i J gamma): magnitudes of the conjugate eigenvalue
/// pairs of the real matrix J*gamma, one per mode, sorted descending.
template <typename Scalar>
std::vector<Scalar> symplectic_spectrum(const Mat<Scalar>& gamma) {
  detail::require_covariance_shape(gamma);
  const Eigen::Index n = gamma.rows() / 2;
  Eigen::EigenSolver<Mat<Scalar>> es(symplectic_form<Scalar>(n) * gamma, false);
  std::vector<Scalar> mags(2 * n);
  for (Eigen::Index i = 0; i < 2 * n; ++i) mags[i] = std::abs(es.eigenvalues()(i));
  std::sort(mags.begin(), mags.end());
  std::vector<Scalar> spectrum(n);
  for (Eigen::Index k = 0; k < n; ++k) spectrum[k] = (mags[2 * k] + mags[2 * k + 1]) / 2;
  std::sort(spectrum.rbegin(), spectrum.rend());
  return spectrum;
}

template <typename Scalar>
std::vector<Scalar> symplectic_spectrum(const GaussianState<Scalar>& state) {
  return symplectic_spectrum(state.gamma);
}

template <typename Scalar>
struct ValidityReport {
  bool is_physical;
  Scalar min_eigenvalue;  // smallest eigenvalue of the Hermitian matrix gamma + iJ
  std::vector<Scalar> symplectic_spectrum;
};

/// Physicality check: gamma + iJ >= 0 (up to tol), reported together with the
/// symplectic spectrum. Non-symmetric input raises MalformedMatrix.
template <typename Scalar>
ValidityReport<Scalar> validate_state(const Mat<Scalar>& gamma,
                                      Scalar tol = Scalar(kPhysicalTol)) {
  detail::require_covariance_shape(gamma);
  const Eigen::Index n = gamma.rows() / 2;
  CMat<Scalar> h = gamma.template cast<std::complex<Scalar>>();
  h += std::complex<Scalar>(0, 1) * symplectic_form<Scalar>(n).template cast<std::complex<Scalar>>();
  Eigen::SelfAdjointEigenSolver<CMat<Scalar>> es(h, Eigen::EigenvaluesOnly);
  const Scalar min_ev = es.eigenvalues().minCoeff();
  return {min_ev >= -tol, min_ev, symplectic_spectrum(gamma)};
}

template <typename Scalar>
ValidityReport<Scalar> validate_state(const GaussianState<Scalar>& state,
                                      Scalar tol = Scalar(kPhysicalTol)) {
  return validate_state(state.gamma, tol);
}

// ---- symplectic action ------------------------------------------------------

/// gamma -> S gamma S^T, d -> S d + s.
template <typename Scalar>
GaussianState<Scalar> apply(const SymplecticTransform<Scalar>& t,
                            const GaussianState<Scalar>& state) {
  if (t.S.rows() != state.gamma.rows())
    throw DimensionError("apply: transform and state dimensions differ");
  return GaussianState<Scalar>(t.S * state.d + t.s,
                               (t.S * state.gamma * t.S.transpose()).eval());
}

// ---- phase-space functions --------------------------------------------------

/// Wigner density W(zeta) = exp(-(zeta-d)^T gamma^{-1} (zeta-d)) / (pi^N sqrt(det gamma)).
template <typename Scalar>
Scalar wigner(const GaussianState<Scalar>& state, const Vec<Scalar>& zeta) {
  if (zeta.size() != state.gamma.rows())
    throw DimensionError("wigner: evaluation point has wrong dimension");
  const Vec<Scalar> dz = zeta - state.d;
  const Scalar quad = dz.dot(detail::solve_spd(state.gamma, dz));
  const Scalar det = detail::det_spd_guarded(state.gamma);
  const Scalar pin = std::pow(std::numbers::pi_v<Scalar>, Scalar(state.n_modes));
  return std::exp(-quad) / (pin * std::sqrt(det));
}

/// Characteristic function chi(eta) = exp(i eta^T J d - eta^T J^T (gamma/4) J eta).
template <typename Scalar>
std::complex<Scalar> characteristic(const GaussianState<Scalar>& state, const Vec<Scalar>& eta) {
  if (eta.size() != state.gamma.rows())
    throw DimensionError("characteristic: evaluation point has wrong dimension");
  const Mat<Scalar> j = symplectic_form<Scalar>(state.n_modes);
  const Vec<Scalar> jeta = j * eta;
  const Scalar quad = jeta.dot(state.gamma * jeta) / 4;
  const Scalar phase = eta.dot(j * state.d);
  return std::exp(std::complex<Scalar>(-quad, phase));
}

// ---- scalar functionals -----------------------------------------------------

template <typename Scalar>
Scalar purity(const GaussianState<Scalar>& state) {
  return Scalar(1) / std::sqrt(detail::det_spd_guarded(state.gamma));
}

/// Hilbert-Schmidt fidelity tr(rho1 rho2) in Gaussian closed form
/// (the overlap interpretation requires at least one pure argument).
template <typename Scalar>
Scalar fidelity_hs(const GaussianState<Scalar>& a, const GaussianState<Scalar>& b) {
  if (a.n_modes != b.n_modes)
    throw DimensionError("fidelity_hs: states must have equal mode counts");
  const Mat<Scalar> sum = a.gamma + b.gamma;
  const Vec<Scalar> d = b.d - a.d;
  const Scalar det = detail::det_spd_guarded((sum / 2).eval());
  return std::exp(-d.dot(detail::solve_spd(sum, d))) / std::sqrt(det);
}

// ---- composition ------------------------------------------------------------

/// Tensor product: direct sum of covariances, concatenation of displacements.
template <typename Scalar>
GaussianState<Scalar> tensor(const GaussianState<Scalar>& a, const GaussianState<Scalar>& b) {
  const Eigen::Index na = 2 * a.n_modes, nb = 2 * b.n_modes;
  Mat<Scalar> g = Mat<Scalar>::Zero(na + nb, na + nb);
  g.topLeftCorner(na, na) = a.gamma;
  g.bottomRightCorner(nb, nb) = b.gamma;
  Vec<Scalar> d(na + nb);
  d << a.d, b.d;
  return GaussianState<Scalar>(std::move(d), std::move(g));
}

/// Keep the listed modes (0-based), deleting the complementary 2x2 blocks.
template <typename Scalar>
GaussianState<Scalar> partial_trace(const GaussianState<Scalar>& state,
                                    std::vector<Eigen::Index> keep_modes) {
  if (keep_modes.empty()) throw DimensionError("partial_trace: keep_modes must be non-empty");
  std::sort(keep_modes.begin(), keep_modes.end());
  keep_modes.erase(std::unique(keep_modes.begin(), keep_modes.end()), keep_modes.end());
  for (Eigen::Index m : keep_modes)
    if (m < 0 || m >= state.n_modes) throw DimensionError("partial_trace: mode index out of range");
  const Eigen::Index nk = static_cast<Eigen::Index>(keep_modes.size());
  Vec<Scalar> d(2 * nk);
  Mat<Scalar> g(2 * nk, 2 * nk);
  for (Eigen::Index i = 0; i < nk; ++i) {
    d.segment(2 * i, 2) = state.d.segment(2 * keep_modes[i], 2);
    for (Eigen::Index j = 0; j < nk; ++j)
      g.block(2 * i, 2 * j, 2, 2) = state.gamma.block(2 * keep_modes[i], 2 * keep_modes[j], 2, 2);
  }
  return GaussianState<Scalar>(std::move(d), std::move(g));
}

}  // namespace gaussqkd
