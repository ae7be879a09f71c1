#pragma once

#include <array>
#include <string>
#include <vector>

#include "bqtru/ring.hpp"

namespace bqtru {

/// c0 + c1 i + c2 j + c3 k in the split algebra (1,1 / R'_m):
/// i^2 = j^2 = 1, ij = -ji = k, k^2 = -1.
class Quaternion {
 public:
  Quaternion() = default;
  Quaternion(RingElem c0, RingElem c1, RingElem c2, RingElem c3);

  static Quaternion zero(int n, i64 modulus);
  static Quaternion one(int n, i64 modulus);
  /// Basis element 1, i, j or k for unit = 0..3.
  static Quaternion basis(int n, i64 modulus, int unit);
  /// Embeds r as r * 1.
  static Quaternion scalar(const RingElem& r);

  int n() const { return c_[0].n(); }
  i64 modulus() const { return c_[0].modulus(); }
  bool same_context(const Quaternion& other) const { return c_[0].same_context(other.c_[0]); }

  const RingElem& operator[](int k) const { return c_[k]; }
  RingElem& operator[](int k) { return c_[k]; }

  Quaternion reduce(i64 m) const;
  Quaternion to_integer() const;
  Quaternion lift_centered() const;
  bool is_zero() const;

  /// Coefficient vector of length 4 n^2, component-major.
  IntVector to_vector() const;
  static Quaternion from_vector(int n, i64 modulus, const IntVector& v);

  Quaternion& operator+=(const Quaternion& rhs);
  Quaternion& operator-=(const Quaternion& rhs);
  Quaternion& operator*=(i64 s);
  friend Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend Quaternion operator*(Quaternion a, i64 s) { return a *= s; }
  friend Quaternion operator*(i64 s, Quaternion a) { return a *= s; }
  Quaternion operator-() const;

  bool operator==(const Quaternion& other) const { return c_ == other.c_; }

 private:
  std::array<RingElem, 4> c_;
};

/// Product table of the algebra: component `out` of F∘H collects
/// sign * f_i * h_{partner} over i. Used by every product routine and by the
/// block matrix of the key-recovery lattice.
struct ProductTerm {
  int h;
  int sign;
};
const ProductTerm& product_term(int f_index, int out_index);

Quaternion quat_mul_schoolbook(const Quaternion& f, const Quaternion& g, OpCounter* counter = nullptr);
Quaternion quat_mul_strassen(const Quaternion& f, const Quaternion& g, OpCounter* counter = nullptr);

/// [[c0 + c1, c2 + c3], [c2 - c3, c0 - c1]].
using RingMatrix2 = std::array<std::array<RingElem, 2>, 2>;
RingMatrix2 quat_to_matrix(const Quaternion& f);
Quaternion quat_from_matrix(const RingMatrix2& m);
RingMatrix2 matrix_mul(const RingMatrix2& a, const RingMatrix2& b);

Quaternion conjugate(const Quaternion& f);
/// c0^2 - c1^2 - c2^2 + c3^2.
RingElem quat_norm(const Quaternion& f);

/// N(F)^-1 * conj(F) over R'_p.
Quaternion quat_inverse_mod_p(const Quaternion& f, i64 p);

/// Scalar quaternion over Z_q, components (s0, s1, s2, s3).
using ScalarQuat = std::array<i64, 4>;
ScalarQuat sq_mul(const ScalarQuat& a, const ScalarQuat& b, i64 q);
ScalarQuat sq_conjugate(const ScalarQuat& a, i64 q);
i64 sq_norm(const ScalarQuat& a, i64 q);
ScalarQuat sq_scale(const ScalarQuat& a, i64 s, i64 q);
bool sq_is_zero(const ScalarQuat& a);

/// Values of a quaternion on every grid point, indexed like EvalDomain::points.
using EvalVector = std::vector<ScalarQuat>;

EvalVector rho(const Quaternion& f, const EvalDomain& dom);
EvalVector pointwise_mul(const EvalVector& a, const EvalVector& b, i64 q);
EvalVector pointwise_add(const EvalVector& a, const EvalVector& b, i64 q);
/// Inverse of rho: the quaternion whose components interpolate the entries.
Quaternion interpolate(const EvalDomain& dom, const EvalVector& values);

/// Inverse modulo J = Q + Qi + Qj + Qk: pointwise inverse on E \ T, zero on T.
/// Throws NormVanishesOutsideT.
Quaternion quat_inverse_mod_J(const Quaternion& f, const std::vector<int>& t, const EvalDomain& dom);

/// "c0: ..." through "c3: ..." with the given label letter.
std::string to_text(const Quaternion& f, char label = 'c');

}  // namespace bqtru
