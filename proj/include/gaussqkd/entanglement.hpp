#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "gaussqkd/linalg.hpp"
#include "gaussqkd/state.hpp"
#include "gaussqkd/symplectic.hpp"

namespace gaussqkd {

// Two-party (1x1 mode) entanglement toolkit. Party A owns mode 0, party B
// mode 1, in canonical (qA,pA,qB,pB) ordering.

enum class Party { A, B };

/// The four local-symplectic invariants det A, det B, det C, det gamma of the
/// block decomposition gamma = [[A, C], [C^T, B]].
template <typename Scalar>
struct BlockInvariants {
  Scalar detA, detB, detC, detGamma;
};

template <typename Scalar>
BlockInvariants<Scalar> block_invariants(const Mat<Scalar>& gamma) {
  if (gamma.rows() != 4 || gamma.cols() != 4)
    throw DimensionError("block_invariants: expected a 4x4 two-mode covariance");
  detail::require_covariance_shape(gamma);
  return {gamma.template topLeftCorner<2, 2>().determinant(),
          gamma.template bottomRightCorner<2, 2>().determinant(),
          gamma.template topRightCorner<2, 2>().determinant(), gamma.determinant()};
}

/// Standard-form parameters (lambda_a, lambda_b, k_x, k_p), sign convention
/// k_x >= |k_p| >= ... with couplings (k_x, -k_p) on the q and p axes.
template <typename Scalar>
struct StandardForm {
  Scalar lambda_a, lambda_b, k_x, k_p;

  Mat<Scalar> matrix() const {
    Mat<Scalar> g = Mat<Scalar>::Zero(4, 4);
    g(0, 0) = g(1, 1) = lambda_a;
    g(2, 2) = g(3, 3) = lambda_b;
    g(0, 2) = g(2, 0) = k_x;
    g(1, 3) = g(3, 1) = -k_p;
    return g;
  }
};

/// Reduce a two-mode covariance to standard form via the invariant formulas.
/// The root-assignment branch is fixed so that k_x >= |k_p| always holds
/// (the two branches differ by a local pi rotation).
template <typename Scalar>
StandardForm<Scalar> to_standard_form(const Mat<Scalar>& gamma, Scalar tol = Scalar(1e-9)) {
  const auto inv = block_invariants(gamma);
  auto guarded_sqrt = [tol](Scalar x, const char* what) {
    if (x < -tol) throw NumericalInstability(what);
    return std::sqrt(std::max(x, Scalar(0)));
  };
  const Scalar lambda_a = guarded_sqrt(inv.detA, "to_standard_form: det A < 0");
  const Scalar lambda_b = guarded_sqrt(inv.detB, "to_standard_form: det B < 0");
  const Scalar lab = lambda_a * lambda_b;
  if (lab <= Scalar(0)) throw NumericalInstability("to_standard_form: degenerate local blocks");
  const Scalar alpha =
      guarded_sqrt(((lab + inv.detC) * (lab + inv.detC) - inv.detGamma) / lab,
                   "to_standard_form: negative radicand for the coupling sum");
  const Scalar disc =
      guarded_sqrt(alpha * alpha - 4 * inv.detC,
                   "to_standard_form: negative radicand for the coupling difference");
  const Scalar c1 = (alpha + disc) / 2;  // larger normal-form coupling
  const Scalar c2 = (alpha - disc) / 2;
  return {lambda_a, lambda_b, c1, -c2};
}

/// Partial transpose at the covariance level: theta gamma theta^T with
/// theta = diag(1,-1) on the chosen party's mode.
template <typename Scalar>
Mat<Scalar> partial_transpose(const Mat<Scalar>& gamma, Party party = Party::A) {
  if (gamma.rows() != 4 || gamma.cols() != 4)
    throw DimensionError("partial_transpose: expected a 4x4 two-mode covariance");
  Vec<Scalar> th = Vec<Scalar>::Ones(4);
  th(party == Party::A ? 1 : 3) = Scalar(-1);
  return th.asDiagonal() * gamma * th.asDiagonal();
}

/// NPPT test: entangled iff the partial transpose violates gamma + iJ >= 0,
/// i.e. its smallest symplectic eigenvalue drops below 1.
template <typename Scalar>
bool is_nppt(const Mat<Scalar>& gamma, Scalar tol = Scalar(kPhysicalTol)) {
  const auto spec = symplectic_spectrum(partial_transpose(gamma));
  return spec.back() < Scalar(1) - tol;
}

/// Logarithmic negativity E_N = -sum_i log2 min(mu~_i, 1) over the partial
/// transpose's symplectic spectrum. Zero for PPT states.
template <typename Scalar>
Scalar log_negativity(const Mat<Scalar>& gamma) {
  Scalar e = Scalar(0);
  for (Scalar mu : symplectic_spectrum(partial_transpose(gamma)))
    if (mu < Scalar(1)) e -= std::log2(mu);
  return e;
}

template <typename Scalar>
Scalar log_negativity(const GaussianState<Scalar>& state) {
  return log_negativity(state.gamma);
}

/// Closed form for symmetric standard states: log2(1/sqrt((l-cx)(l-cp))),
/// clamped to zero for PPT parameters.
template <typename Scalar>
Scalar log_negativity_symmetric(Scalar lambda, Scalar c_x, Scalar c_p) {
  const Scalar prod = (lambda - c_x) * (lambda - c_p);
  if (prod <= Scalar(0))
    throw UnphysicalInput("log_negativity_symmetric: nonpositive PPT product");
  return std::max(Scalar(0), -std::log2(prod) / 2);
}

/// Entropy of entanglement of a pure two-party state, from the symplectic
/// spectrum of party A's reduction. Logarithms are base 2.
template <typename Scalar>
Scalar entropy_of_entanglement(const GaussianState<Scalar>& state,
                               Scalar purity_tol = Scalar(1e-8)) {
  if (state.n_modes < 2)
    throw DimensionError("entropy_of_entanglement: need a bipartite state");
  if (std::abs(purity(state) - Scalar(1)) > purity_tol)
    throw PurityError("entropy_of_entanglement: global state is not pure");
  std::vector<Eigen::Index> a_modes(state.n_modes / 2);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(a_modes.size()); ++i) a_modes[i] = i;
  const auto reduced = partial_trace(state, a_modes);
  Scalar e = Scalar(0);
  for (Scalar mu : symplectic_spectrum(reduced)) {
    const Scalar up = (mu + 1) / 2, dn = (mu - 1) / 2;
    e -= up * std::log2(up);
    if (dn > Scalar(0)) e += dn * std::log2(dn);
  }
  return std::max(e, Scalar(0));
}

/// Purify an N-mode state into a pure 2N-mode one:
///   gamma_2N = [[gamma, C], [C^T, theta gamma theta^T]],
///   C = J sqrt(-(J gamma)^2 - I) theta.
/// Tracing out the ancilla modes returns gamma exactly; a pure input yields
/// C = 0 and vacuum-free ancillas equal to theta gamma theta^T.
template <typename Scalar>
GaussianState<Scalar> purify(const GaussianState<Scalar>& state) {
  const Eigen::Index n = state.n_modes;
  const Mat<Scalar> j = symplectic_form<Scalar>(n);
  const Mat<Scalar> th = momentum_reflection<Scalar>(n);
  const Mat<Scalar> C = j * detail::sqrt_minus_jgamma_sq_minus_id(state.gamma) * th;
  Mat<Scalar> g = Mat<Scalar>::Zero(4 * n, 4 * n);
  g.topLeftCorner(2 * n, 2 * n) = state.gamma;
  g.topRightCorner(2 * n, 2 * n) = C;
  g.bottomLeftCorner(2 * n, 2 * n) = C.transpose();
  g.bottomRightCorner(2 * n, 2 * n) = th * state.gamma * th.transpose();
  Vec<Scalar> d = Vec<Scalar>::Zero(4 * n);
  d.head(2 * n) = state.d;
  return GaussianState<Scalar>(std::move(d), std::move(g));
}

}  // namespace gaussqkd
