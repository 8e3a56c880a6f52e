#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "gaussqkd/entanglement.hpp"
#include "gaussqkd/state.hpp"

namespace gaussqkd {

// The Alice-Bob-Eve protocol core for symmetric 1x1-mode standard states.
// Every formula consumes the moduli |x0A|, |x0B|; sign handling for raw
// measurement outcomes lives in the efficiency samplers.

enum class AttackModel { Individual, FiniteCoherent };

inline const char* attack_name(AttackModel a) {
  return a == AttackModel::Individual ? "individual" : "coherent";
}

/// Symmetric standard-form state (lambda, c_x, c_p): the protocol's entire
/// parameter space. Physical iff (l-cx)(l+cp) >= 1; NPPT iff (l-cx)(l-cp) < 1.
template <typename Scalar>
struct SymmetricStdState {
  Scalar lambda, c_x, c_p;

  bool is_physical(Scalar tol = Scalar(kPhysicalTol)) const {
    return lambda >= Scalar(1) - tol && c_x >= std::abs(c_p) - tol &&
           (lambda - c_x) * (lambda + c_p) >= Scalar(1) - tol;
  }
  bool is_nppt(Scalar tol = Scalar(kPhysicalTol)) const {
    return (lambda - c_x) * (lambda - c_p) < Scalar(1) - tol;
  }
  /// Coherent-security constraint lambda - (l+cx)(l-cx)(l-cp) > 0.
  Scalar constrain2() const {
    return lambda - (lambda + c_x) * (lambda - c_x) * (lambda - c_p);
  }
  /// Human-readable reason when is_physical() fails; empty when it holds.
  std::string violated_condition() const {
    if (lambda < Scalar(1)) return "lambda >= 1";
    if (c_x < std::abs(c_p)) return "c_x >= |c_p|";
    if ((lambda - c_x) * (lambda + c_p) < Scalar(1))
      return "(lambda - c_x)(lambda + c_p) >= 1";
    return {};
  }

  Mat<Scalar> gamma() const { return StandardForm<Scalar>{lambda, lambda, c_x, c_p}.matrix(); }
  GaussianState<Scalar> state() const { return GaussianState<Scalar>(gamma()); }

  Scalar log_negativity() const { return gaussqkd::log_negativity(gamma()); }
  Scalar purity() const {
    return Scalar(1) /
           std::sqrt((lambda * lambda - c_x * c_x) * (lambda * lambda - c_p * c_p));
  }
};

template <typename Scalar>
void require_physical(const SymmetricStdState<Scalar>& st) {
  if (!st.is_physical())
    throw UnphysicalInput("state violates " + st.violated_condition());
}

/// The scalars of the explicit gamma_ABE purification:
///   a = lambda^2 - cx*cp - 1,  b = lambda(cx - cp),
///   X = (sqrt(a+b)+sqrt(a-b))/2,  Y = (sqrt(a+b)-sqrt(a-b))/2,
///   A = sqrt(a+b)/(lambda+cx),   B = sqrt(a-b)/(lambda-cx).
/// Note a-b = (l-cx)(l+cp)-1 and a+b = (l+cx)(l-cp)-1, so both radicands are
/// nonnegative exactly when the state is physical.
template <typename Scalar>
struct EveAuxiliaries {
  Scalar a, b, X, Y, A_coef, B_coef;
};

template <typename Scalar>
EveAuxiliaries<Scalar> eve_auxiliaries(const SymmetricStdState<Scalar>& st,
                                       Scalar tol = Scalar(kPhysicalTol)) {
  const Scalar a = st.lambda * st.lambda - st.c_x * st.c_p - 1;
  const Scalar b = st.lambda * (st.c_x - st.c_p);
  if (a - b < -tol || a + b < -tol)
    throw UnphysicalInput("eve_auxiliaries: negative radicand (state unphysical)");
  const Scalar rp = std::sqrt(std::max(a + b, Scalar(0)));
  const Scalar rm = std::sqrt(std::max(a - b, Scalar(0)));
  return {a, b, (rp + rm) / 2, (rp - rm) / 2, rp / (st.lambda + st.c_x),
          rm / (st.lambda - st.c_x)};
}

/// Pure 4-mode purification gamma_ABE with Eve holding modes 2 and 3.
/// Tracing out Eve returns gamma_AB exactly; for pure inputs Eve decouples
/// into vacuum.
template <typename Scalar>
GaussianState<Scalar> purify_abe(const SymmetricStdState<Scalar>& st) {
  require_physical(st);
  const auto aux = eve_auxiliaries(st);
  Mat<Scalar> C = Mat<Scalar>::Zero(4, 4);
  C(0, 1) = C(1, 0) = C(2, 3) = C(3, 2) = -aux.X;
  C(0, 3) = C(1, 2) = C(2, 1) = C(3, 0) = -aux.Y;
  const Mat<Scalar> g_ab = st.gamma();
  const Mat<Scalar> th = momentum_reflection<Scalar>(2);
  Mat<Scalar> g = Mat<Scalar>::Zero(8, 8);
  g.topLeftCorner(4, 4) = g_ab;
  g.topRightCorner(4, 4) = C;
  g.bottomLeftCorner(4, 4) = C.transpose();
  g.bottomRightCorner(4, 4) = th * g_ab * th.transpose();
  return GaussianState<Scalar>(std::move(g));
}

/// Unnormalized acceptance weights for coincident / opposite symbols under a
/// width-sigma measurement. Only ratios are physical; both vanish as sigma->0.
template <typename Scalar>
struct CoincidenceProbs {
  Scalar p_same, p_diff, k_sigma;
};

template <typename Scalar>
CoincidenceProbs<Scalar> coincidence_probs(const SymmetricStdState<Scalar>& st, Scalar sigma,
                                           Scalar x0A, Scalar x0B) {
  require_physical(st);
  if (!(sigma > Scalar(0)))
    throw InvalidArgument("coincidence_probs: sigma must be positive");
  const Scalar ls = st.lambda + sigma * sigma;
  const Scalar denom = ls * ls - st.c_x * st.c_x;
  if (denom <= Scalar(0))
    throw SingularDenominator("coincidence_probs: (lambda + sigma^2)^2 <= c_x^2");
  const Scalar ls1 = st.lambda * sigma * sigma + 1;
  const Scalar pden = ls1 * ls1 - st.c_p * st.c_p * sigma * sigma * sigma * sigma;
  const Scalar k = 4 * sigma * sigma / (std::sqrt(denom) * std::sqrt(pden));
  const Scalar xa = std::abs(x0A), xb = std::abs(x0B);
  const Scalar common = -ls * (xa * xa + xb * xb);
  const Scalar cross = 2 * xa * xb * st.c_x;
  return {k * std::exp((common + cross) / denom), k * std::exp((common - cross) / denom), k};
}

/// Alice-Bob error probability in the sharp-measurement limit sigma -> 0:
/// eps = 1 / (1 + exp(4 c_x |x0A||x0B| / (lambda^2 - c_x^2))).
template <typename Scalar>
Scalar error_rate(const SymmetricStdState<Scalar>& st, Scalar x0A, Scalar x0B) {
  require_physical(st);
  const Scalar denom = st.lambda * st.lambda - st.c_x * st.c_x;
  return Scalar(1) /
         (Scalar(1) + std::exp(4 * st.c_x * std::abs(x0A) * std::abs(x0B) / denom));
}

/// Eve's conditional states after Alice and Bob project onto +-|x0A|, +-|x0B|.
/// Both outcomes share the covariance gamma_pp (pure); only the momentum
/// displacements differ, with d_mm = -d_pp. Canonical (qE1,pE1,qE2,pE2) order.
template <typename Scalar>
struct EveConditional {
  Mat<Scalar> gamma_pp;
  Vec<Scalar> d_pp, d_mm;
};

template <typename Scalar>
EveConditional<Scalar> eve_conditional(const SymmetricStdState<Scalar>& st, Scalar x0A,
                                       Scalar x0B) {
  require_physical(st);
  const Scalar denom = st.lambda * st.lambda - st.c_x * st.c_x;
  if (denom <= Scalar(0)) throw SingularCovariance("eve_conditional: gamma_x is singular");
  const auto aux = eve_auxiliaries(st);
  Mat<Scalar> g = Mat<Scalar>::Zero(4, 4);
  g(0, 0) = g(2, 2) = st.lambda;
  g(0, 2) = g(2, 0) = st.c_x;
  g(1, 1) = g(3, 3) = st.lambda / denom;
  g(1, 3) = g(3, 1) = -st.c_x / denom;
  const Scalar dlt = std::abs(x0B) + std::abs(x0A);
  const Scalar Dlt = std::abs(x0B) - std::abs(x0A);
  Vec<Scalar> d = Vec<Scalar>::Zero(4);
  d(1) = -(aux.A_coef * dlt - aux.B_coef * Dlt) / 2;
  d(3) = -(aux.A_coef * dlt + aux.B_coef * Dlt) / 2;
  return {std::move(g), d, -d};
}

/// Squared overlap |<e_++|e_-->|^2 between Eve's two conditional states.
/// Equals fidelity_hs of the (gamma_pp, d_pp) / (gamma_pp, d_mm) pair.
template <typename Scalar>
Scalar eve_overlap(const SymmetricStdState<Scalar>& st, Scalar x0A, Scalar x0B) {
  require_physical(st);
  const Scalar l = st.lambda, cx = st.c_x, cp = st.c_p;
  const Scalar denom = l * l - cx * cx;
  const Scalar xa = std::abs(x0A), xb = std::abs(x0B);
  const Scalar s = (xa * xa + xb * xb) / 2, m = xa * xb;
  return std::exp(-4 / denom * (s * (denom - 1) * l + m * (cx - cp * denom)));
}

namespace detail {

// Reduced security quadratic: s*G - m*H < 0 with s = (xa^2+xb^2)/2, m = xa*xb,
// G = lambda(lambda^2-cx^2-1) and H the attack-dependent coupling term.
template <typename Scalar>
Scalar security_g(const SymmetricStdState<Scalar>& st) {
  return st.lambda * (st.lambda * st.lambda - st.c_x * st.c_x - 1);
}
template <typename Scalar>
Scalar security_h(const SymmetricStdState<Scalar>& st, AttackModel attack) {
  const Scalar denom = st.lambda * st.lambda - st.c_x * st.c_x;
  return attack == AttackModel::Individual ? st.c_x + st.c_p * denom : st.c_p * denom;
}

}  // namespace detail

/// Security predicate for one outcome pair. Decides by the reduced algebraic
/// form and cross-checks the error-rate/overlap route; a disagreement outside
/// a 1e-9 neutral band raises InternalInconsistency.
template <typename Scalar>
bool security_check(const SymmetricStdState<Scalar>& st, Scalar x0A, Scalar x0B,
                    AttackModel attack) {
  require_physical(st);
  const Scalar xa = std::abs(x0A), xb = std::abs(x0B);
  const Scalar s = (xa * xa + xb * xb) / 2, m = xa * xb;
  const Scalar g = detail::security_g(st), h = detail::security_h(st, attack);
  const Scalar reduced = s * g - m * h;
  const bool secure = reduced < Scalar(0);

  const Scalar eps = error_rate(st, x0A, x0B);
  const Scalar ratio = eps / (1 - eps);
  const Scalar ov2 = eve_overlap(st, x0A, x0B);
  const Scalar bound = attack == AttackModel::Individual ? std::sqrt(ov2) : ov2;
  const Scalar band = Scalar(1e-9) * (std::abs(s * g) + std::abs(m * h) + Scalar(1));
  if (std::abs(reduced) > band && (ratio < bound) != secure)
    throw InternalInconsistency("security_check: overlap and reduced-form paths disagree");
  return secure;
}

/// Relative acceptance window for Delta x0 = |x0B| - |x0A| (in units of
/// |x0A|), together with the interval parameter alpha or beta. Degenerates to
/// the unbounded window exactly when the state is pure (param -> 1).
template <typename Scalar>
struct SecurityInterval {
  Scalar lo_factor, hi_factor;  // multipliers of |x0A|; hi is +inf when unbounded
  Scalar param;                 // alpha (individual) or beta (finite coherent)
  AttackModel attack;
  bool unbounded;

  bool contains(Scalar delta_x0, Scalar x0A) const {
    const Scalar xa = std::abs(x0A);
    if (!(delta_x0 > lo_factor * xa)) return false;
    return unbounded || delta_x0 < hi_factor * xa;
  }
  Scalar length(Scalar x0A) const {
    return unbounded ? std::numeric_limits<Scalar>::infinity()
                     : (hi_factor - lo_factor) * std::abs(x0A);
  }
};

/// Acceptance interval D_alpha (individual) or D_beta (finite coherent).
/// Endpoints saturate the corresponding security inequality; interior points
/// satisfy it strictly.
template <typename Scalar>
SecurityInterval<Scalar> accept_interval(const SymmetricStdState<Scalar>& st,
                                         AttackModel attack) {
  require_physical(st);
  if (!st.is_nppt())
    throw NotSecurable("accept_interval: state is PPT, no secure window exists");
  Scalar param;
  if (attack == AttackModel::Individual) {
    const Scalar l = st.lambda, cx = st.c_x, cp = st.c_p;
    param = ((cx - l) / (cx + l)) *
            ((1 - (l + cx) * (l + cp)) / (1 - (l - cx) * (l - cp)));
  } else {
    const Scalar c2 = st.constrain2();
    if (!(c2 > Scalar(0)))
      throw NotCoherentSecure("accept_interval: coherent-security constraint violated");
    const Scalar g = detail::security_g(st), h = detail::security_h(st, attack);
    param = (h + g) / (h - g);
  }
  if (param < Scalar(1) - Scalar(1e-9))
    throw InternalInconsistency("accept_interval: interval parameter below 1");
  param = std::max(param, Scalar(1));
  const bool unbounded = param - Scalar(1) < Scalar(1e-12);
  const Scalar rt = std::sqrt(param);
  const Scalar lo = Scalar(2) / (-rt - 1);
  const Scalar hi =
      unbounded ? std::numeric_limits<Scalar>::infinity() : Scalar(2) / (rt - 1);
  return {lo, hi, param, attack, unbounded};
}

template <typename Scalar>
SecurityInterval<Scalar> accept_interval(const SymmetricStdState<Scalar>& st, Scalar /*x0A*/,
                                         AttackModel attack) {
  return accept_interval(st, attack);
}

}  // namespace gaussqkd
