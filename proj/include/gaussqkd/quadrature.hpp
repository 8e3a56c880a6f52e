#pragma once

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "gaussqkd/errors.hpp"

namespace gaussqkd {

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton iteration on P_n).
template <typename Scalar>
struct GaussLegendre {
  std::vector<Scalar> nodes, weights;

  explicit GaussLegendre(int n) {
    if (n < 1) throw InvalidArgument("GaussLegendre: need at least one node");
    nodes.resize(n);
    weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
      // Chebyshev-based initial guess for the i-th root.
      Scalar x = std::cos(std::numbers::pi_v<Scalar> * (i + Scalar(0.75)) / (n + Scalar(0.5)));
      Scalar dp = 0;
      for (int it = 0; it < 100; ++it) {
        Scalar p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        const Scalar dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < Scalar(1e-15)) break;
      }
      nodes[i] = -x;
      nodes[n - 1 - i] = x;
      const Scalar w = 2 / ((1 - x * x) * dp * dp);
      weights[i] = w;
      weights[n - 1 - i] = w;
    }
  }

  /// Nodes/weights mapped onto [a, b].
  std::pair<std::vector<Scalar>, std::vector<Scalar>> mapped(Scalar a, Scalar b) const {
    const Scalar mid = (a + b) / 2, half = (b - a) / 2;
    std::vector<Scalar> x(nodes.size()), w(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      x[i] = mid + half * nodes[i];
      w[i] = half * weights[i];
    }
    return {std::move(x), std::move(w)};
  }
};

/// Integrate f over [a, b] with an n-point Gauss-Legendre rule.
template <typename Scalar, typename F>
Scalar integrate_gl(F&& f, Scalar a, Scalar b, const GaussLegendre<Scalar>& rule) {
  const Scalar mid = (a + b) / 2, half = (b - a) / 2;
  Scalar sum = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

}  // namespace gaussqkd
