#pragma once

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "gaussqkd/protocol.hpp"
#include "gaussqkd/quadrature.hpp"

namespace gaussqkd {

/// Numerical configuration for the efficiency integral and its Monte-Carlo
/// oracle. x_max = 0 selects the default truncation 8*sqrt(lambda), for which
/// the marginal tail mass is far below 1e-6 (checked at use).
struct QuadratureConfig {
  double x_max = 0.0;
  int n_points = 128;            // Gauss-Legendre points per axis
  std::int64_t mc_samples = 1'000'000;
  std::uint64_t rng_seed = 0;
  double interval_width_scale = 1.0;  // diagnostic: 0 collapses D to a point
};

/// Joint position density of raw signed outcomes (momentum marginal of the
/// Wigner function); integrates to 1 over the plane.
template <typename Scalar>
Scalar marginal_density(const SymmetricStdState<Scalar>& st, Scalar x0A, Scalar x0B) {
  const Scalar denom = st.lambda * st.lambda - st.c_x * st.c_x;
  const Scalar expo =
      (2 * st.c_x * x0A * x0B - st.lambda * (x0A * x0A + x0B * x0B)) / denom;
  return std::exp(expo) / (std::numbers::pi_v<Scalar> * std::sqrt(denom));
}

namespace detail {

inline double default_x_max(double lambda, const QuadratureConfig& cfg) {
  return cfg.x_max > 0 ? cfg.x_max : 8.0 * std::sqrt(lambda);
}

// Marginal tail mass outside the |x| <= x_max box (union bound over the two
// N(0, lambda/2) marginals).
inline double tail_mass_bound(double lambda, double x_max) {
  return 2.0 * std::erfc(x_max / std::sqrt(lambda));
}

inline void check_truncation(double lambda, double x_max) {
  if (!(x_max > 0)) throw InvalidArgument("efficiency: x_max must be positive");
  if (tail_mass_bound(lambda, x_max) >= 1e-6)
    throw InvalidArgument("efficiency: truncation radius leaves tail mass >= 1e-6");
}

// Window of |x0B|/|x0A| ratios implied by the (possibly width-scaled)
// acceptance interval; t_hi < 0 encodes an unbounded upper edge.
template <typename Scalar>
struct RatioWindow {
  Scalar t_lo, t_hi;
  bool unbounded;
};

template <typename Scalar>
RatioWindow<Scalar> ratio_window(const SecurityInterval<Scalar>& iv, Scalar width_scale) {
  const Scalar lo = width_scale * iv.lo_factor;
  if (iv.unbounded)
    return {std::max<Scalar>(1 + lo, 0), Scalar(-1), true};
  const Scalar hi = width_scale * iv.hi_factor;
  return {std::max<Scalar>(1 + lo, 0), 1 + hi, false};
}

}  // namespace detail

/// Protocol efficiency E(gamma_AB): the average probability of obtaining a
/// classically correlated bit,
///   E = int dx0A dx0B [Delta x0 in D] (1 - eps_AB) * marginal(x0A, x0B),
/// integrated over raw signed outcomes and folded onto x0A > 0 by the
/// W(z) -> W(-z) symmetry. Deterministic boundary-conforming quadrature.
template <typename Scalar>
Scalar efficiency(const SymmetricStdState<Scalar>& st, AttackModel attack,
                  const QuadratureConfig& cfg = {}) {
  require_physical(st);
  if (!st.is_nppt()) throw NotSecurable("efficiency: state is PPT");
  const auto iv = accept_interval(st, attack);
  if (cfg.interval_width_scale == 0.0) return Scalar(0);  // point acceptance
  const auto win = detail::ratio_window(iv, Scalar(cfg.interval_width_scale));
  const Scalar x_max = Scalar(detail::default_x_max(st.lambda, cfg));
  detail::check_truncation(st.lambda, x_max);

  const GaussLegendre<Scalar> rule(cfg.n_points);
  const auto [xs, wxs] = rule.mapped(Scalar(0), x_max);
  Scalar total = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Scalar x = xs[i];
    const Scalar y_lo = win.t_lo * x;
    const Scalar y_hi = win.unbounded ? x_max : std::min(win.t_hi * x, x_max);
    if (!(y_hi > y_lo)) continue;
    const Scalar inner = integrate_gl(
        [&](Scalar y) {
          const Scalar acc = 1 - error_rate(st, x, y);
          return acc * (marginal_density(st, x, y) + marginal_density(st, x, -y));
        },
        y_lo, y_hi, rule);
    total += wxs[i] * inner;
  }
  return 2 * total;
}

/// Acceptance probability (the efficiency integrand without the 1-eps factor);
/// upper-bounds the efficiency.
template <typename Scalar>
Scalar acceptance_probability(const SymmetricStdState<Scalar>& st, AttackModel attack,
                              const QuadratureConfig& cfg = {}) {
  require_physical(st);
  if (!st.is_nppt()) throw NotSecurable("acceptance_probability: state is PPT");
  const auto iv = accept_interval(st, attack);
  if (cfg.interval_width_scale == 0.0) return Scalar(0);
  const auto win = detail::ratio_window(iv, Scalar(cfg.interval_width_scale));
  const Scalar x_max = Scalar(detail::default_x_max(st.lambda, cfg));
  detail::check_truncation(st.lambda, x_max);
  const GaussLegendre<Scalar> rule(cfg.n_points);
  const auto [xs, wxs] = rule.mapped(Scalar(0), x_max);
  Scalar total = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Scalar x = xs[i];
    const Scalar y_lo = win.t_lo * x;
    const Scalar y_hi = win.unbounded ? x_max : std::min(win.t_hi * x, x_max);
    if (!(y_hi > y_lo)) continue;
    total += wxs[i] * integrate_gl(
                          [&](Scalar y) {
                            return marginal_density(st, x, y) + marginal_density(st, x, -y);
                          },
                          y_lo, y_hi, rule);
  }
  return 2 * total;
}

struct McEstimate {
  double mean, std_error;
  std::int64_t n_samples;
};

/// Monte-Carlo oracle for the efficiency: sample raw (xA, xB) from the
/// bivariate position marginal, accept when Delta x0 falls in the window,
/// accumulate 1 - eps_AB. Per-point seeds derive from (rng_seed, point_index)
/// so parallel sweep order never changes results.
template <typename Scalar>
McEstimate efficiency_mc(const SymmetricStdState<Scalar>& st, AttackModel attack,
                         const QuadratureConfig& cfg = {}, std::uint64_t point_index = 0) {
  require_physical(st);
  if (!st.is_nppt()) throw NotSecurable("efficiency_mc: state is PPT");
  const auto iv = accept_interval(st, attack);
  const Scalar w = Scalar(cfg.interval_width_scale);

  // Cholesky factor of the position covariance [[l, cx], [cx, l]] / 2.
  const Scalar l00 = std::sqrt(st.lambda / 2);
  const Scalar l10 = st.c_x / std::sqrt(2 * st.lambda);
  const Scalar l11 = std::sqrt((st.lambda * st.lambda - st.c_x * st.c_x) / (2 * st.lambda));

  std::seed_seq seq{cfg.rng_seed, point_index + 1};
  std::mt19937_64 rng(seq);
  std::normal_distribution<Scalar> normal(0, 1);
  double sum = 0, sum_sq = 0;
  for (std::int64_t i = 0; i < cfg.mc_samples; ++i) {
    const Scalar z1 = normal(rng), z2 = normal(rng);
    const Scalar xa = l00 * z1;
    const Scalar xb = l10 * z1 + l11 * z2;
    const Scalar delta = std::abs(xb) - std::abs(xa);
    const Scalar lo = w * iv.lo_factor * std::abs(xa);
    const bool in = delta > lo && (iv.unbounded || delta < w * iv.hi_factor * std::abs(xa));
    const double v = in ? 1 - error_rate(st, xa, xb) : 0.0;
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(cfg.mc_samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1));
  return {mean, std::sqrt(var / n), cfg.mc_samples};
}

// ---- sweep ------------------------------------------------------------------

/// One row of the efficiency-vs-entanglement dataset.
struct SweepRecord {
  double lambda, c_x, c_p;
  double log_negativity, purity;
  double param;  // alpha or beta
  double efficiency;
  AttackModel attack;
};

struct SweepSkip {
  double lambda, c_x, c_p;
  std::string reason;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  std::vector<SweepSkip> skipped;
};

/// Evaluate the grid, skipping non-admissible points with a reason. Points are
/// independent work items; the evaluation is deterministic for a given seed
/// regardless of thread count.
inline SweepResult sweep(const std::vector<std::array<double, 3>>& grid, AttackModel attack,
                         const QuadratureConfig& cfg = {}, int n_threads = 1) {
  struct Slot {
    bool admitted = false;
    SweepRecord rec{};
    std::string skip_reason;
  };
  std::vector<Slot> slots(grid.size());

  auto eval_point = [&](std::size_t i) {
    const SymmetricStdState<double> st{grid[i][0], grid[i][1], grid[i][2]};
    Slot& slot = slots[i];
    if (!st.is_physical()) {
      slot.skip_reason = "unphysical";
      return;
    }
    if (!st.is_nppt()) {
      slot.skip_reason = "ppt";
      return;
    }
    if (attack == AttackModel::FiniteCoherent && !(st.constrain2() > 0)) {
      slot.skip_reason = "constrain2_violated";
      return;
    }
    const auto iv = accept_interval(st, attack);
    slot.rec = {st.lambda,      st.c_x,      st.c_p,   log_negativity(st.gamma()),
                st.purity(),    iv.param,    efficiency(st, attack, cfg),
                attack};
    slot.admitted = true;
  };

  if (n_threads <= 1 || grid.size() < 2) {
    for (std::size_t i = 0; i < grid.size(); ++i) eval_point(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1))
        eval_point(i);
    };
    std::vector<std::thread> pool;
    const int nt = std::min<int>(n_threads, static_cast<int>(grid.size()));
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SweepResult out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].admitted)
      out.records.push_back(slots[i].rec);
    else
      out.skipped.push_back({grid[i][0], grid[i][1], grid[i][2], slots[i].skip_reason});
  }
  if (out.records.empty()) throw EmptySweep("sweep: no admissible grid points");
  return out;
}

// ---- CSV emission -----------------------------------------------------------

inline std::string format_double_12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

inline std::string sweep_records_csv(const std::vector<SweepRecord>& records) {
  std::string out = "lambda,c_x,c_p,log_negativity,purity,param,efficiency,attack\n";
  for (const auto& r : records) {
    out += format_double_12(r.lambda) + "," + format_double_12(r.c_x) + "," +
           format_double_12(r.c_p) + "," + format_double_12(r.log_negativity) + "," +
           format_double_12(r.purity) + "," + format_double_12(r.param) + "," +
           format_double_12(r.efficiency) + "," + attack_name(r.attack) + "\n";
  }
  return out;
}

inline std::string sweep_skipped_csv(const std::vector<SweepSkip>& skipped) {
  std::string out = "lambda,c_x,c_p,reason\n";
  for (const auto& s : skipped)
    out += format_double_12(s.lambda) + "," + format_double_12(s.c_x) + "," +
           format_double_12(s.c_p) + "," + s.reason + "\n";
  return out;
}

}  // namespace gaussqkd
