#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "gaussqkd/errors.hpp"
#include "gaussqkd/types.hpp"

namespace gaussqkd {

/// The symplectic form J_N: block diagonal in 2x2 blocks [[0,1],[-1,0]],
/// one block per mode, in canonical (q1,p1,...,qN,pN) ordering.
template <typename Scalar>
Mat<Scalar> symplectic_form(Eigen::Index n_modes) {
  if (n_modes < 1) throw DimensionError("symplectic_form: n_modes must be >= 1");
  Mat<Scalar> j = Mat<Scalar>::Zero(2 * n_modes, 2 * n_modes);
  for (Eigen::Index k = 0; k < n_modes; ++k) {
    j(2 * k, 2 * k + 1) = Scalar(1);
    j(2 * k + 1, 2 * k) = Scalar(-1);
  }
  return j;
}

/// Momentum reflection theta_N = diag(1,-1) per mode (phase-space time reversal).
template <typename Scalar>
Mat<Scalar> momentum_reflection(Eigen::Index n_modes) {
  Vec<Scalar> d(2 * n_modes);
  for (Eigen::Index k = 0; k < n_modes; ++k) {
    d(2 * k) = Scalar(1);
    d(2 * k + 1) = Scalar(-1);
  }
  return d.asDiagonal();
}

/// Affine symplectic map: x -> S x + s on phase space.
template <typename Scalar>
struct SymplecticTransform {
  Mat<Scalar> S;
  Vec<Scalar> s;

  SymplecticTransform(Mat<Scalar> S_, Vec<Scalar> s_) : S(std::move(S_)), s(std::move(s_)) {
    if (S.rows() != S.cols() || S.rows() % 2 != 0 || S.rows() == 0)
      throw DimensionError("SymplecticTransform: S must be square with even dimension");
    if (s.size() != S.rows())
      throw DimensionError("SymplecticTransform: translation size mismatch");
  }
  explicit SymplecticTransform(Mat<Scalar> S_)
      : SymplecticTransform(std::move(S_), Vec<Scalar>::Zero(S_.rows())) {}

  Eigen::Index n_modes() const { return S.rows() / 2; }
};

template <typename Scalar>
Scalar symplectic_defect(const Mat<Scalar>& S) {
  const Mat<Scalar> j = symplectic_form<Scalar>(S.rows() / 2);
  return (S.transpose() * j * S - j).template lpNorm<Eigen::Infinity>();
}

template <typename Scalar>
bool is_symplectic(const Mat<Scalar>& S, Scalar tol = Scalar(kSymplecticTol)) {
  if (S.rows() != S.cols() || S.rows() % 2 != 0) return false;
  return symplectic_defect(S) <= tol;
}

// ---- generators ------------------------------------------------------------

template <typename Scalar>
SymplecticTransform<Scalar> phase_shift(Scalar theta) {
  Mat<Scalar> S(2, 2);
  S << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return SymplecticTransform<Scalar>(std::move(S));
}

template <typename Scalar>
SymplecticTransform<Scalar> squeezer(Scalar r) {
  Mat<Scalar> S = Mat<Scalar>::Zero(2, 2);
  S(0, 0) = std::exp(-r);
  S(1, 1) = std::exp(r);
  return SymplecticTransform<Scalar>(std::move(S));
}

template <typename Scalar>
SymplecticTransform<Scalar> beam_splitter(Scalar theta) {
  const Scalar c = std::cos(theta / 2), s = std::sin(theta / 2);
  Mat<Scalar> S(4, 4);
  S << c, 0, s, 0,          //
      0, c, 0, s,           //
      -s, 0, c, 0,          //
      0, -s, 0, c;
  return SymplecticTransform<Scalar>(std::move(S));
}

template <typename Scalar>
SymplecticTransform<Scalar> two_mode_squeezer(Scalar r) {
  const Scalar ch = std::cosh(r), sh = std::sinh(r);
  Mat<Scalar> S(4, 4);
  S << ch, 0, sh, 0,        //
      0, ch, 0, -sh,        //
      sh, 0, ch, 0,         //
      0, -sh, 0, ch;
  return SymplecticTransform<Scalar>(std::move(S));
}

template <typename Scalar>
SymplecticTransform<Scalar> translation(Scalar q0, Scalar p0) {
  Vec<Scalar> s(2);
  s << q0, p0;
  return SymplecticTransform<Scalar>(Mat<Scalar>::Identity(2, 2), std::move(s));
}

enum class TransformKind { PhaseShift, Squeezer, BeamSplitter, TwoModeSqueezer, Translation };

/// Factory over the named one- and two-parameter generators. Unknown kinds
/// (e.g. from string parsing at the CLI boundary) throw UnsupportedTransform.
template <typename Scalar>
SymplecticTransform<Scalar> make_transform(TransformKind kind, Scalar a, Scalar b = Scalar(0)) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw InvalidArgument("make_transform: parameters must be finite");
  switch (kind) {
    case TransformKind::PhaseShift: return phase_shift(a);
    case TransformKind::Squeezer: return squeezer(a);
    case TransformKind::BeamSplitter: return beam_splitter(a);
    case TransformKind::TwoModeSqueezer: return two_mode_squeezer(a);
    case TransformKind::Translation: return translation(a, b);
  }
  throw UnsupportedTransform("make_transform: unknown transform kind");
}

template <typename Scalar>
SymplecticTransform<Scalar> make_transform(const std::string& kind, Scalar a, Scalar b = Scalar(0)) {
  if (kind == "phase_shift") return make_transform(TransformKind::PhaseShift, a, b);
  if (kind == "squeezer") return make_transform(TransformKind::Squeezer, a, b);
  if (kind == "beam_splitter") return make_transform(TransformKind::BeamSplitter, a, b);
  if (kind == "two_mode_squeezer") return make_transform(TransformKind::TwoModeSqueezer, a, b);
  if (kind == "translation") return make_transform(TransformKind::Translation, a, b);
  throw UnsupportedTransform("make_transform: unknown kind '" + kind + "'");
}

/// Direct sum of two transforms (acts mode-wise on a composite system).
template <typename Scalar>
SymplecticTransform<Scalar> direct_sum(const SymplecticTransform<Scalar>& a,
                                       const SymplecticTransform<Scalar>& b) {
  const Eigen::Index na = a.S.rows(), nb = b.S.rows();
  Mat<Scalar> S = Mat<Scalar>::Zero(na + nb, na + nb);
  S.topLeftCorner(na, na) = a.S;
  S.bottomRightCorner(nb, nb) = b.S;
  Vec<Scalar> s(na + nb);
  s << a.s, b.s;
  return SymplecticTransform<Scalar>(std::move(S), std::move(s));
}

}  // namespace gaussqkd
