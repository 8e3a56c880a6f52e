#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "gaussqkd/errors.hpp"

namespace gaussqkd {

// Chapter-style classical/discrete companions: Vernam cypher, toy RSA,
// BB84 and Ekert91 simulators. Pedagogical fixed-width arithmetic only.

// ---- Vernam -----------------------------------------------------------------

using BitString = std::vector<std::uint8_t>;  // entries are 0 or 1

inline BitString parse_bits(const std::string& text) {
  BitString bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw InvalidArgument("parse_bits: expected a 0/1 string");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return bits;
}

inline std::string format_bits(const BitString& bits) {
  std::string out;
  out.reserve(bits.size());
  for (auto b : bits) out.push_back(b ? '1' : '0');
  return out;
}

/// One-time-pad encode/decode: bitwise XOR, self-inverse.
inline BitString vernam(const BitString& message, const BitString& key) {
  if (message.size() != key.size())
    throw KeyLengthError("vernam: key must have the same length as the message");
  BitString out(message.size());
  for (std::size_t i = 0; i < message.size(); ++i) out[i] = message[i] ^ key[i];
  return out;
}

// ---- toy RSA ----------------------------------------------------------------

struct RsaKeySet {
  std::uint64_t p, q, n, phi, l, k;
};

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline bool is_prime_u64(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

// Extended Euclid; returns the inverse of a mod m (a and m coprime).
inline std::uint64_t modinv_u64(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t qout = r / new_r;
    t = std::exchange(new_t, t - qout * new_t);
    r = std::exchange(new_r, r - qout * new_r);
  }
  if (r != 1) throw InvalidExponent("modinv: argument not invertible");
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

}  // namespace detail

/// Square-and-multiply modular exponentiation.
inline std::uint64_t modpow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  if (mod == 0) throw InvalidArgument("modpow: zero modulus");
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = detail::mulmod_u64(result, base, mod);
    base = detail::mulmod_u64(base, base, mod);
    exp >>= 1;
  }
  return result;
}

inline RsaKeySet rsa_keygen(std::uint64_t p, std::uint64_t q, std::uint64_t l) {
  if (p == q || !detail::is_prime_u64(p) || !detail::is_prime_u64(q))
    throw InvalidArgument("rsa_keygen: p and q must be distinct primes");
  const std::uint64_t n = p * q;
  const std::uint64_t phi = (p - 1) * (q - 1);
  if (l <= 1 || l >= phi || std::gcd(l, phi) != 1)
    throw InvalidExponent("rsa_keygen: l must satisfy 1 < l < phi and gcd(l, phi) = 1");
  return {p, q, n, phi, l, detail::modinv_u64(l, phi)};
}

inline std::uint64_t rsa_encrypt(std::uint64_t m, std::uint64_t l, std::uint64_t n) {
  if (m >= n) throw MessageTooLarge("rsa_encrypt: message must be smaller than the modulus");
  return modpow(m, l, n);
}

inline std::uint64_t rsa_decrypt(std::uint64_t e, std::uint64_t k, std::uint64_t n) {
  if (e >= n) throw MessageTooLarge("rsa_decrypt: ciphertext must be smaller than the modulus");
  return modpow(e, k, n);
}

// ---- BB84 -------------------------------------------------------------------

enum class Basis : std::uint8_t { Z = 0, X = 1 };

/// Matching-basis positions (0-based) kept after sifting.
inline std::vector<std::size_t> bb84_sift(const std::vector<Basis>& alice,
                                          const std::vector<Basis>& bob) {
  if (alice.size() != bob.size()) throw KeyLengthError("bb84_sift: basis lists differ in length");
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < alice.size(); ++i)
    if (alice[i] == bob[i]) kept.push_back(i);
  return kept;
}

struct Bb84Run {
  std::vector<std::uint8_t> alice_bits;
  std::vector<Basis> alice_bases;
  std::vector<Basis> bob_bases;
  std::vector<std::uint8_t> bob_bits;
  std::vector<std::size_t> sifted_positions;  // 0-based
  std::vector<std::uint8_t> sifted_alice, sifted_bob;
  bool eavesdropped;
  double qber;        // sifted error rate
  double threshold;   // acceptance threshold on the sifted error rate
  bool accepted;      // qber < threshold
};

/// Intercept-resend BB84: with an eavesdropper measuring each qubit in a
/// random basis and forwarding the outcome state, the sifted error rate
/// concentrates at 25%.
inline Bb84Run bb84_run(std::size_t n_bits, bool eavesdrop, std::uint64_t seed,
                        double qber_threshold = 0.25) {
  if (n_bits < 8) throw InvalidArgument("bb84_run: need at least 8 rounds");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);

  Bb84Run run;
  run.eavesdropped = eavesdrop;
  run.threshold = qber_threshold;
  run.alice_bits.resize(n_bits);
  run.alice_bases.resize(n_bits);
  run.bob_bases.resize(n_bits);
  run.bob_bits.resize(n_bits);

  for (std::size_t i = 0; i < n_bits; ++i) {
    run.alice_bits[i] = coin(rng);
    run.alice_bases[i] = coin(rng) ? Basis::X : Basis::Z;
    // per-qubit state is (basis, bit); measuring in the other basis is a coin
    Basis wire_basis = run.alice_bases[i];
    std::uint8_t wire_bit = run.alice_bits[i];
    if (eavesdrop) {
      const Basis eve_basis = coin(rng) ? Basis::X : Basis::Z;
      const std::uint8_t eve_bit = eve_basis == wire_basis ? wire_bit : coin(rng);
      wire_basis = eve_basis;
      wire_bit = eve_bit;
    }
    run.bob_bases[i] = coin(rng) ? Basis::X : Basis::Z;
    run.bob_bits[i] = run.bob_bases[i] == wire_basis ? wire_bit : coin(rng);
  }

  run.sifted_positions = bb84_sift(run.alice_bases, run.bob_bases);
  std::size_t disagreements = 0;
  for (std::size_t pos : run.sifted_positions) {
    run.sifted_alice.push_back(run.alice_bits[pos]);
    run.sifted_bob.push_back(run.bob_bits[pos]);
    disagreements += run.alice_bits[pos] != run.bob_bits[pos];
  }
  run.qber = run.sifted_positions.empty()
                 ? 0.0
                 : static_cast<double>(disagreements) / run.sifted_positions.size();
  run.accepted = run.qber < run.threshold;
  return run;
}

// ---- Ekert91 ----------------------------------------------------------------

// Azimuthal measurement angles of the protocol.
inline constexpr std::array<double, 3> kEkertAnglesAlice = {0.0, M_PI / 4, M_PI / 2};
inline constexpr std::array<double, 3> kEkertAnglesBob = {M_PI / 4, M_PI / 2, 3 * M_PI / 4};

struct EkertRun {
  std::size_t n_pairs;
  std::array<std::array<std::int64_t, 3>, 3> counts{};      // rounds per (i,j)
  std::array<std::array<std::int64_t, 3>, 3> product_sum{};  // sum of a*b per (i,j)
  std::vector<std::uint8_t> sifted_alice, sifted_bob;        // matching-angle rounds
  double s_value;
  double s_sigma;  // propagated per-setting binomial errors
};

/// Singlet statistics: P(++) = P(--) = (1 - cos dphi)/4, P(+-) = P(-+) =
/// (1 + cos dphi)/4, so E = -cos dphi; matching orientations give perfect
/// anticorrelation and feed the sifted key.
inline EkertRun ekert91_run(std::size_t n_pairs, std::uint64_t seed) {
  if (n_pairs < 100) throw InvalidArgument("ekert91_run: need at least 100 pairs");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, 2);
  std::bernoulli_distribution coin(0.5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  EkertRun run;
  run.n_pairs = n_pairs;
  for (std::size_t t = 0; t < n_pairs; ++t) {
    const int i = pick(rng), j = pick(rng);
    const double dphi = kEkertAnglesAlice[i] - kEkertAnglesBob[j];
    const int a = coin(rng) ? +1 : -1;
    // conditional law of b given a: P(b = a | a) = (1 - cos dphi)/2
    const int b = unit(rng) < (1.0 - std::cos(dphi)) / 2 ? a : -a;
    run.counts[i][j] += 1;
    run.product_sum[i][j] += a * b;
    if (std::abs(kEkertAnglesAlice[i] - kEkertAnglesBob[j]) < 1e-12) {
      run.sifted_alice.push_back(a > 0 ? 0 : 1);
      run.sifted_bob.push_back(b > 0 ? 0 : 1);
    }
  }

  auto corr = [&](int i, int j) {
    return run.counts[i][j] > 0
               ? static_cast<double>(run.product_sum[i][j]) / run.counts[i][j]
               : 0.0;
  };
  auto corr_var = [&](int i, int j) {
    const double e = corr(i, j);
    return run.counts[i][j] > 0 ? (1.0 - e * e) / run.counts[i][j] : 0.0;
  };
  // S from the mismatched-orientation groups (1-based settings 1 and 3).
  run.s_value = std::abs(corr(0, 0) + corr(2, 2) - corr(0, 2) + corr(2, 0));
  run.s_sigma = std::sqrt(corr_var(0, 0) + corr_var(2, 2) + corr_var(0, 2) + corr_var(2, 0));
  return run;
}

/// Exact CHSH combination for the protocol's angles: S = 2*sqrt(2).
inline double ekert91_exact_s() {
  auto e = [](double pa, double pb) { return -std::cos(pa - pb); };
  return std::abs(e(kEkertAnglesAlice[0], kEkertAnglesBob[0]) +
                  e(kEkertAnglesAlice[2], kEkertAnglesBob[2]) -
                  e(kEkertAnglesAlice[0], kEkertAnglesBob[2]) +
                  e(kEkertAnglesAlice[2], kEkertAnglesBob[0]));
}

/// Maximum of the same CHSH combination over all 64 deterministic local
/// strategies; never exceeds 2.
inline double chsh_classical_max() {
  double best = 0.0;
  for (int mask = 0; mask < 64; ++mask) {
    const int a1 = mask & 1 ? 1 : -1, a3 = mask & 2 ? 1 : -1;
    const int b1 = mask & 4 ? 1 : -1, b3 = mask & 8 ? 1 : -1;
    best = std::max(best, std::abs(static_cast<double>(a1 * b1 + a3 * b3 - a1 * b3 + a3 * b1)));
  }
  return best;
}

}  // namespace gaussqkd
