#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "gaussqkd/errors.hpp"

namespace gaussqkd {

/// Classical Advantage Distillation error after one block of size M:
///   eps_M = eps^M / ((1-eps)^M + eps^M)  <  (eps/(1-eps))^M.
/// Requires eps < 1/2 (otherwise no advantage can be distilled).
inline double cad_error(double epsilon, int block_size) {
  if (!(epsilon >= 0.0) || epsilon >= 0.5)
    throw NoAdvantage("cad_error: epsilon must lie in [0, 1/2)");
  if (block_size < 1) throw InvalidArgument("cad_error: block size must be >= 1");
  const double num = std::pow(epsilon, block_size);
  const double den = std::pow(1.0 - epsilon, block_size) + num;
  return num / den;
}

struct CadResult {
  double epsilon_in;
  int block_size_M;
  double epsilon_out_formula;
  double epsilon_out_simulated;  // NaN when no trial was accepted
  double acceptance_rate;
  std::int64_t n_trials;
  std::int64_t n_accepted;
  std::int64_t n_errors;
};

/// Bit-level simulation of one CAD round per trial: Alice encodes a random
/// bit b against her M-bit string, Bob accepts when his decoded values are
/// all consistent. Reported error is conditional on acceptance.
inline CadResult simulate_cad(double epsilon, int block_size, std::int64_t n_trials,
                              std::uint64_t seed) {
  if (!(epsilon >= 0.0) || epsilon >= 0.5)
    throw NoAdvantage("simulate_cad: epsilon must lie in [0, 1/2)");
  if (block_size < 1) throw InvalidArgument("simulate_cad: block size must be >= 1");
  if (n_trials < 1) throw InvalidArgument("simulate_cad: need at least one trial");

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution flip(epsilon);
  std::bernoulli_distribution coin(0.5);

  std::int64_t accepted = 0, errors = 0;
  for (std::int64_t t = 0; t < n_trials; ++t) {
    const bool b = coin(rng);
    bool consistent = true;
    bool decoded = false;
    for (int i = 0; i < block_size; ++i) {
      const bool alice_bit = coin(rng);
      const bool bob_bit = alice_bit ^ flip(rng);
      const bool announced = alice_bit ^ b;
      const bool check = bob_bit ^ announced;  // equals b when bits agree
      if (i == 0) {
        decoded = check;
      } else if (check != decoded) {
        consistent = false;
        // remaining bits of the block are still consumed by the protocol
      }
    }
    if (consistent) {
      ++accepted;
      if (decoded != b) ++errors;
    }
  }

  const double eps_sim = accepted > 0 ? static_cast<double>(errors) / accepted
                                      : std::numeric_limits<double>::quiet_NaN();
  return {epsilon,
          block_size,
          cad_error(epsilon, block_size),
          eps_sim,
          static_cast<double>(accepted) / static_cast<double>(n_trials),
          n_trials,
          accepted,
          errors};
}

}  // namespace gaussqkd
