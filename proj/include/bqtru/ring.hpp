#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bqtru/types.hpp"

namespace bqtru {

/// Instrumentation filled in by the caller-owned counter passed to the
/// multiplication routines. Nothing here is global.
struct OpCounter {
  u64 ring_mults = 0;    // convolution products
  u64 scalar_mults = 0;  // coefficient multiplications inside them
};

/// Element of Z_m[x, y] / (x^n - 1, y^n - 1). The coefficient of x^a y^b is
/// stored at index a * n + b. A modulus of 0 denotes the unreduced ring over Z.
class RingElem {
 public:
  RingElem() = default;
  RingElem(int n, i64 modulus);
  RingElem(int n, i64 modulus, IntVector coeffs);

  static RingElem one(int n, i64 modulus);
  static RingElem monomial(int n, i64 modulus, int a, int b, i64 c = 1);

  int n() const { return n_; }
  i64 modulus() const { return modulus_; }
  int size() const { return n_ * n_; }
  const IntVector& coeffs() const { return coeffs_; }

  i64 operator[](int index) const { return coeffs_(index); }
  i64 at(int a, int b) const { return coeffs_(a * n_ + b); }
  void set(int index, i64 value);

  bool is_zero() const { return coeffs_.isZero(); }

  /// Same ring degree and modulus.
  bool same_context(const RingElem& other) const {
    return n_ == other.n_ && modulus_ == other.modulus_;
  }

  /// Reinterprets the coefficients modulo m (m = 0 keeps them as integers).
  RingElem reduce(i64 m) const;
  /// Integer element whose coefficients are the [0, m) representatives.
  RingElem to_integer() const;
  /// Integer element with coefficients in [-(m-1)/2, (m-1)/2].
  RingElem lift_centered() const;

  RingElem& operator+=(const RingElem& rhs);
  RingElem& operator-=(const RingElem& rhs);
  RingElem& operator*=(i64 scalar);

  friend RingElem operator+(RingElem lhs, const RingElem& rhs) { return lhs += rhs; }
  friend RingElem operator-(RingElem lhs, const RingElem& rhs) { return lhs -= rhs; }
  friend RingElem operator*(RingElem lhs, i64 scalar) { return lhs *= scalar; }
  friend RingElem operator*(i64 scalar, RingElem rhs) { return rhs *= scalar; }
  RingElem operator-() const;

  bool operator==(const RingElem& other) const {
    return same_context(other) && coeffs_ == other.coeffs_;
  }

 private:
  void normalize();

  int n_ = 0;
  i64 modulus_ = 0;
  IntVector coeffs_;
};

/// Two-dimensional cyclic convolution.
RingElem conv_mul(const RingElem& f, const RingElem& g, OpCounter* counter = nullptr);

/// Matrix whose row r is the coefficient vector of x^(r / n) y^(r % n) * h, so
/// that coeffs(f) * multiplication_matrix(h) = coeffs(f * h).
IntMatrix multiplication_matrix(const RingElem& h);

/// Inverse in R'_m for prime m by solving the linear system of f's
/// multiplication matrix. Throws NotInvertible.
RingElem ring_inverse(const RingElem& f, i64 m);

/// The grid E of paired n-th roots of unity mod q. Point k is
/// (omega^(k / n), omega^(k % n)).
class EvalDomain {
 public:
  EvalDomain(int n, i64 q);

  int n() const { return n_; }
  i64 q() const { return q_; }
  i64 omega() const { return omega_; }
  int size() const { return n_ * n_; }

  std::pair<i64, i64> point(int index) const {
    return {powers_[index / n_], powers_[index % n_]};
  }
  const std::vector<std::pair<i64, i64>>& points() const { return points_; }
  std::optional<int> index_of(i64 a, i64 b) const;

  /// omega^k for k in [0, n).
  i64 power(int k) const { return powers_[((k % n_) + n_) % n_]; }

  /// Row k holds the [0, q) coefficient vector of the Lagrange interpolant at
  /// point k.
  const IntMatrix& lagrange_matrix() const { return lagrange_; }

  /// Permutation listing the given grid indices first, the rest in order.
  std::vector<int> t_first_order(const std::vector<int>& t) const;

 private:
  int n_;
  i64 q_;
  i64 omega_;
  std::vector<i64> powers_;
  std::vector<std::pair<i64, i64>> points_;
  IntMatrix lagrange_;
};

/// f(a, b) mod q. Integer elements are reduced on the fly.
i64 eval(const RingElem& f, i64 a, i64 b, i64 q);
inline i64 eval(const RingElem& f, i64 a, i64 b) { return eval(f, a, b, f.modulus()); }

/// All grid values of f, indexed like dom.points().
std::vector<i64> evaluate_grid(const RingElem& f, const EvalDomain& dom);

RingElem lagrange_interpolant(const EvalDomain& dom, i64 a, i64 b);
RingElem lagrange_interpolant(const EvalDomain& dom, int index);

/// Exact inverse of evaluate_grid.
RingElem interpolate(const EvalDomain& dom, const std::vector<i64>& values);

/// alpha * lambda_{a,b} == alpha(a, b) * lambda_{a,b}.
bool absorb_check(const RingElem& alpha, const EvalDomain& dom, i64 a, i64 b);

std::string to_text(const RingElem& f);
RingElem ring_from_text(std::string_view text, int n, i64 modulus);

}  // namespace bqtru
