#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "bqtru/ring.hpp"
#include "bqtru/scheme.hpp"
#include "bqtru/types.hpp"

namespace bqtru::ntru {

/// Reference NTRU over Z_q[x]/(x^n - 1) with d_f = d_g = d_r = d.
struct NtruParams {
  int n = 0;
  i64 p = 0;
  i64 q = 0;
  int d = 0;

  void validate() const;
  /// q > (6d + 1) p: decryption cannot fail.
  bool no_failure_guard() const { return q > (6 * static_cast<i64>(d) + 1) * p; }
  bool operator==(const NtruParams&) const = default;
};

/// Schoolbook cyclic convolution; n^2 scalar multiplications per call.
/// A modulus of 0 keeps integer coefficients.
IntVector convolve(const IntVector& a, const IntVector& b, i64 modulus, OpCounter* counter = nullptr);

/// Row i holds x^i * h, so vector(f) * circulant(h) = vector(f * h).
IntMatrix circulant(const IntVector& h);

/// Inverse in Z_m[x]/(x^n - 1) for m prime or a prime power.
std::optional<IntVector> inverse(const IntVector& f, i64 m);

/// d ones and d minus ones plus extra_ones further ones.
IntVector sample_ternary(int n, int d, Rng& rng, int extra_ones = 0);

struct PublicKey {
  NtruParams params;
  IntVector h;
};

struct PrivateKey {
  NtruParams params;
  IntVector f;
  IntVector g;
  IntVector f_p_inv;
};

struct KeyPair {
  PublicKey pub;
  PrivateKey priv;
};

/// f has d + 1 ones so that f(1) = 1. h = f_q^-1 * g. Throws RetriesExhausted.
KeyPair keygen(const NtruParams& params, Rng& rng, int max_attempts = 1000);

/// c = p h * r + m mod q with m centered mod p.
IntVector encrypt(const PublicKey& key, const IntVector& m, Rng& rng, const IntVector* r = nullptr,
                  OpCounter* counter = nullptr);

/// Strict mode throws DecryptionFailure when f * c mod q does not split into
/// p g * r + f * m with |g * r| <= 2d.
IntVector decrypt(const PrivateKey& key, const IntVector& c, bool strict = false);

/// n ceil(log2 q).
std::size_t public_key_bits(const NtruParams& params);

std::string serialize_public(const PublicKey& key);
std::string serialize_private(const PrivateKey& key);
PublicKey deserialize_public(std::string_view text);
PrivateKey deserialize_private(std::string_view text);

}  // namespace bqtru::ntru
