#include "bqtru/modular.hpp"

#include <cmath>
#include <stdexcept>

#include "bqtru/error.hpp"

namespace bqtru {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::NotAGridPoint: return "NotAGridPoint";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::EvenModulus: return "EvenModulus";
    case ErrorKind::NormVanishesOutsideT: return "NormVanishesOutsideT";
    case ErrorKind::InvalidWeight: return "InvalidWeight";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::NonIntegralU: return "NonIntegralU";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NoPointInRadius: return "NoPointInRadius";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::WeightTooLarge: return "WeightTooLarge";
    case ErrorKind::RetriesExhausted: return "RetriesExhausted";
    case ErrorKind::MessageOutOfRange: return "MessageOutOfRange";
    case ErrorKind::DecryptionFailure: return "DecryptionFailure";
    case ErrorKind::PayloadTooLarge: return "PayloadTooLarge";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

double log_big(const BigInt& x) {
  if (x <= 0) throw std::domain_error("log_big of non-positive value");
  const unsigned bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 62) return std::log(static_cast<double>(x.convert_to<i64>()));
  const unsigned shift = bits - 62;
  const BigInt top = x >> shift;
  return std::log(static_cast<double>(top.convert_to<i64>())) + shift * std::log(2.0);
}

i64 mul_mod(i64 a, i64 b, i64 m) {
  return static_cast<i64>((static_cast<__int128>(mod(a, m)) * mod(b, m)) % m);
}

i64 pow_mod(i64 base, u64 exp, i64 m) {
  i64 result = 1 % m;
  i64 b = mod(base, m);
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, b, m);
    b = mul_mod(b, b, m);
    exp >>= 1U;
  }
  return result;
}

std::optional<i64> inv_mod(i64 a, i64 m) {
  i64 old_r = mod(a, m), r = m;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    const i64 quot = old_r / r;
    i64 tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) return std::nullopt;
  return mod(old_s, m);
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (i64 d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

i64 multiplicative_order(i64 a, i64 p) {
  a = mod(a, p);
  i64 x = a;
  for (i64 k = 1; k < p; ++k) {
    if (x == 1) return k;
    x = mul_mod(x, a, p);
  }
  throw std::domain_error("multiplicative_order: element is not a unit");
}

i64 primitive_root(i64 p) {
  if (p == 2) return 1;
  for (i64 g = 2; g < p; ++g)
    if (multiplicative_order(g, p) == p - 1) return g;
  throw std::domain_error("primitive_root: modulus is not prime");
}

std::optional<i64> prime_power_base(i64 m) {
  if (m < 2) return std::nullopt;
  i64 p = 0;
  for (i64 d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return m;
  while (m % p == 0) m /= p;
  if (m != 1) return std::nullopt;
  return p;
}

std::optional<IntVector> solve_left_mod_prime(const IntMatrix& a, const IntVector& b, i64 p) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.size() != n)
    throw Error(ErrorKind::DimensionMismatch, "solve_left_mod_prime expects a square system");
  // x * A = b  <=>  A^T x = b. Eliminate on the augmented transpose.
  IntMatrix aug(n, n + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) aug(i, j) = mod(a(j, i), p);
    aug(i, n) = mod(b(i), p);
  }
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && aug(pivot, col) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) aug.row(pivot).swap(aug.row(col));
    const i64 inv = *inv_mod(aug(col, col), p);
    for (Eigen::Index j = col; j <= n; ++j) aug(col, j) = mul_mod(aug(col, j), inv, p);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == col || aug(i, col) == 0) continue;
      const i64 factor = aug(i, col);
      for (Eigen::Index j = col; j <= n; ++j)
        aug(i, j) = mod(aug(i, j) - factor * aug(col, j), p);
    }
  }
  return IntVector(aug.col(n));
}

int rank_mod_prime(IntMatrix a, i64 p) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = mod(a(i, j), p);
  int rank = 0;
  for (Eigen::Index col = 0; col < a.cols() && rank < a.rows(); ++col) {
    Eigen::Index pivot = rank;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    a.row(pivot).swap(a.row(rank));
    const i64 inv = *inv_mod(a(rank, col), p);
    for (Eigen::Index j = col; j < a.cols(); ++j) a(rank, j) = mul_mod(a(rank, j), inv, p);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i == rank || a(i, col) == 0) continue;
      const i64 factor = a(i, col);
      for (Eigen::Index j = col; j < a.cols(); ++j) a(i, j) = mod(a(i, j) - factor * a(rank, j), p);
    }
    ++rank;
  }
  return rank;
}

}  // namespace bqtru
