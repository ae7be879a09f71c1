#pragma once

#include <optional>
#include <vector>

#include "bqtru/types.hpp"

namespace bqtru {

/// Representative of x in [0, m).
inline i64 mod(i64 x, i64 m) {
  i64 r = x % m;
  return r < 0 ? r + m : r;
}

/// Representative of x mod m in [-(m-1)/2, (m-1)/2] for odd m; for even m the
/// range is [-m/2 + 1, m/2].
inline i64 centered(i64 x, i64 m) {
  i64 r = mod(x, m);
  return r > m / 2 ? r - m : r;
}

i64 mul_mod(i64 a, i64 b, i64 m);
i64 pow_mod(i64 base, u64 exp, i64 m);

/// Inverse of a modulo m; std::nullopt when gcd(a, m) != 1.
std::optional<i64> inv_mod(i64 a, i64 m);

bool is_prime(i64 n);

/// Multiplicative order of a modulo prime p (a != 0 mod p).
i64 multiplicative_order(i64 a, i64 p);

/// Smallest generator of (Z/pZ)^*.
i64 primitive_root(i64 p);

/// If m = p^k with p prime, returns p.
std::optional<i64> prime_power_base(i64 m);

/// Solves x * A = b over Z_p (A square, p prime). Returns std::nullopt when A is
/// singular mod p. Row-vector convention matches the multiplication matrices
/// used throughout the library.
std::optional<IntVector> solve_left_mod_prime(const IntMatrix& a, const IntVector& b, i64 p);

/// Rank of A over Z_p.
int rank_mod_prime(IntMatrix a, i64 p);

}  // namespace bqtru
