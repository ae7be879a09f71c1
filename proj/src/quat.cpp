#include "bqtru/quat.hpp"

#include <algorithm>

#include "bqtru/error.hpp"
#include "bqtru/modular.hpp"

namespace bqtru {

namespace {

// Rows are the index of f, columns the output component.
constexpr ProductTerm kTable[4][4] = {
    {{0, 1}, {1, 1}, {2, 1}, {3, 1}},
    {{1, 1}, {0, 1}, {3, 1}, {2, 1}},
    {{2, 1}, {3, -1}, {0, 1}, {1, -1}},
    {{3, -1}, {2, 1}, {1, -1}, {0, 1}},
};

void require_same(const Quaternion& a, const Quaternion& b) {
  if (!a.same_context(b)) throw Error(ErrorKind::ContextMismatch, "quaternions live in different rings");
}

}  // namespace

const ProductTerm& product_term(int f_index, int out_index) { return kTable[f_index][out_index]; }

Quaternion::Quaternion(RingElem c0, RingElem c1, RingElem c2, RingElem c3)
    : c_{std::move(c0), std::move(c1), std::move(c2), std::move(c3)} {
  for (int k = 1; k < 4; ++k)
    if (!c_[k].same_context(c_[0]))
      throw Error(ErrorKind::ContextMismatch, "quaternion components differ in ring");
}

Quaternion Quaternion::zero(int n, i64 modulus) {
  RingElem z(n, modulus);
  return Quaternion(z, z, z, z);
}

Quaternion Quaternion::one(int n, i64 modulus) { return basis(n, modulus, 0); }

Quaternion Quaternion::basis(int n, i64 modulus, int unit) {
  Quaternion out = zero(n, modulus);
  out.c_[unit] = RingElem::one(n, modulus);
  return out;
}

Quaternion Quaternion::scalar(const RingElem& r) {
  RingElem z(r.n(), r.modulus());
  return Quaternion(r, z, z, z);
}

Quaternion Quaternion::reduce(i64 m) const {
  return Quaternion(c_[0].reduce(m), c_[1].reduce(m), c_[2].reduce(m), c_[3].reduce(m));
}

Quaternion Quaternion::to_integer() const {
  return Quaternion(c_[0].to_integer(), c_[1].to_integer(), c_[2].to_integer(), c_[3].to_integer());
}

Quaternion Quaternion::lift_centered() const {
  return Quaternion(c_[0].lift_centered(), c_[1].lift_centered(), c_[2].lift_centered(),
                    c_[3].lift_centered());
}

bool Quaternion::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const RingElem& r) { return r.is_zero(); });
}

IntVector Quaternion::to_vector() const {
  const int s = c_[0].size();
  IntVector v(4 * s);
  for (int k = 0; k < 4; ++k) v.segment(k * s, s) = c_[k].coeffs();
  return v;
}

Quaternion Quaternion::from_vector(int n, i64 modulus, const IntVector& v) {
  const int s = n * n;
  if (v.size() != 4 * s) throw Error(ErrorKind::DimensionMismatch, "expected 4 n^2 entries");
  return Quaternion(RingElem(n, modulus, v.segment(0, s)), RingElem(n, modulus, v.segment(s, s)),
                    RingElem(n, modulus, v.segment(2 * s, s)), RingElem(n, modulus, v.segment(3 * s, s)));
}

Quaternion& Quaternion::operator+=(const Quaternion& rhs) {
  require_same(*this, rhs);
  for (int k = 0; k < 4; ++k) c_[k] += rhs.c_[k];
  return *this;
}

Quaternion& Quaternion::operator-=(const Quaternion& rhs) {
  require_same(*this, rhs);
  for (int k = 0; k < 4; ++k) c_[k] -= rhs.c_[k];
  return *this;
}

Quaternion& Quaternion::operator*=(i64 s) {
  for (auto& c : c_) c *= s;
  return *this;
}

Quaternion Quaternion::operator-() const { return Quaternion(-c_[0], -c_[1], -c_[2], -c_[3]); }

Quaternion quat_mul_schoolbook(const Quaternion& f, const Quaternion& g, OpCounter* counter) {
  require_same(f, g);
  Quaternion out = Quaternion::zero(f.n(), f.modulus());
  for (int i = 0; i < 4; ++i)
    for (int o = 0; o < 4; ++o) {
      const ProductTerm& t = kTable[i][o];
      RingElem prod = conv_mul(f[i], g[t.h], counter);
      if (t.sign > 0)
        out[o] += prod;
      else
        out[o] -= prod;
    }
  return out;
}

RingMatrix2 quat_to_matrix(const Quaternion& f) {
  return {{{f[0] + f[1], f[2] + f[3]}, {f[2] - f[3], f[0] - f[1]}}};
}

namespace {

// Halves x exactly over Z, or multiplies by 2^-1 mod an odd modulus.
RingElem halve(const RingElem& x) {
  if (x.modulus() == 0) {
    IntVector c = x.coeffs();
    for (auto& v : c) {
      if (v % 2 != 0) throw Error(ErrorKind::EvenModulus, "matrix image has no integral preimage");
      v /= 2;
    }
    return RingElem(x.n(), 0, std::move(c));
  }
  if (x.modulus() % 2 == 0) throw Error(ErrorKind::EvenModulus, "2 is not invertible");
  return x * ((x.modulus() + 1) / 2);
}

}  // namespace

Quaternion quat_from_matrix(const RingMatrix2& m) {
  return Quaternion(halve(m[0][0] + m[1][1]), halve(m[0][0] - m[1][1]), halve(m[0][1] + m[1][0]),
                    halve(m[0][1] - m[1][0]));
}

RingMatrix2 matrix_mul(const RingMatrix2& a, const RingMatrix2& b) {
  RingMatrix2 out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out[r][c] = conv_mul(a[r][0], b[0][c]) + conv_mul(a[r][1], b[1][c]);
  return out;
}

Quaternion quat_mul_strassen(const Quaternion& f, const Quaternion& g, OpCounter* counter) {
  require_same(f, g);
  if (f.modulus() != 0 && f.modulus() % 2 == 0) throw Error(ErrorKind::EvenModulus, "Strassen needs 2^-1");
  const RingMatrix2 a = quat_to_matrix(f);
  const RingMatrix2 b = quat_to_matrix(g);
  const RingElem m1 = conv_mul(a[0][0] + a[1][1], b[0][0] + b[1][1], counter);
  const RingElem m2 = conv_mul(a[1][0] + a[1][1], b[0][0], counter);
  const RingElem m3 = conv_mul(a[0][0], b[0][1] - b[1][1], counter);
  const RingElem m4 = conv_mul(a[1][1], b[1][0] - b[0][0], counter);
  const RingElem m5 = conv_mul(a[0][0] + a[0][1], b[1][1], counter);
  const RingElem m6 = conv_mul(a[1][0] - a[0][0], b[0][0] + b[0][1], counter);
  const RingElem m7 = conv_mul(a[0][1] - a[1][1], b[1][0] + b[1][1], counter);
  RingMatrix2 c;
  c[0][0] = m1 + m4 - m5 + m7;
  c[0][1] = m3 + m5;
  c[1][0] = m2 + m4;
  c[1][1] = m1 - m2 + m3 + m6;
  return quat_from_matrix(c);
}

Quaternion conjugate(const Quaternion& f) { return Quaternion(f[0], -f[1], -f[2], -f[3]); }

RingElem quat_norm(const Quaternion& f) {
  return conv_mul(f[0], f[0]) - conv_mul(f[1], f[1]) - conv_mul(f[2], f[2]) + conv_mul(f[3], f[3]);
}

Quaternion quat_inverse_mod_p(const Quaternion& f, i64 p) {
  const Quaternion fp = f.reduce(p);
  const RingElem ninv = ring_inverse(quat_norm(fp), p);
  const Quaternion bar = conjugate(fp);
  return Quaternion(conv_mul(ninv, bar[0]), conv_mul(ninv, bar[1]), conv_mul(ninv, bar[2]),
                    conv_mul(ninv, bar[3]));
}

ScalarQuat sq_mul(const ScalarQuat& a, const ScalarQuat& b, i64 q) {
  ScalarQuat out{0, 0, 0, 0};
  for (int i = 0; i < 4; ++i)
    for (int o = 0; o < 4; ++o) {
      const ProductTerm& t = kTable[i][o];
      out[o] += t.sign * mul_mod(a[i], b[t.h], q);
    }
  for (auto& v : out) v = mod(v, q);
  return out;
}

ScalarQuat sq_conjugate(const ScalarQuat& a, i64 q) {
  return {mod(a[0], q), mod(-a[1], q), mod(-a[2], q), mod(-a[3], q)};
}

i64 sq_norm(const ScalarQuat& a, i64 q) {
  const i64 s = mul_mod(a[0], a[0], q) - mul_mod(a[1], a[1], q) - mul_mod(a[2], a[2], q) +
                mul_mod(a[3], a[3], q);
  return mod(s, q);
}

ScalarQuat sq_scale(const ScalarQuat& a, i64 s, i64 q) {
  return {mul_mod(a[0], s, q), mul_mod(a[1], s, q), mul_mod(a[2], s, q), mul_mod(a[3], s, q)};
}

bool sq_is_zero(const ScalarQuat& a) { return a[0] == 0 && a[1] == 0 && a[2] == 0 && a[3] == 0; }

EvalVector rho(const Quaternion& f, const EvalDomain& dom) {
  EvalVector out(dom.size());
  for (int k = 0; k < 4; ++k) {
    const std::vector<i64> values = evaluate_grid(f[k], dom);
    for (int e = 0; e < dom.size(); ++e) out[e][k] = values[e];
  }
  return out;
}

EvalVector pointwise_mul(const EvalVector& a, const EvalVector& b, i64 q) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "evaluation vectors differ in length");
  EvalVector out(a.size());
  for (std::size_t e = 0; e < a.size(); ++e) out[e] = sq_mul(a[e], b[e], q);
  return out;
}

EvalVector pointwise_add(const EvalVector& a, const EvalVector& b, i64 q) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "evaluation vectors differ in length");
  EvalVector out(a.size());
  for (std::size_t e = 0; e < a.size(); ++e)
    for (int k = 0; k < 4; ++k) out[e][k] = mod(a[e][k] + b[e][k], q);
  return out;
}

Quaternion interpolate(const EvalDomain& dom, const EvalVector& values) {
  if (static_cast<int>(values.size()) != dom.size())
    throw Error(ErrorKind::DimensionMismatch, "expected one entry per grid point");
  std::array<RingElem, 4> comps;
  std::vector<i64> column(dom.size());
  for (int k = 0; k < 4; ++k) {
    for (int e = 0; e < dom.size(); ++e) column[e] = values[e][k];
    comps[k] = interpolate(dom, column);
  }
  return Quaternion(comps[0], comps[1], comps[2], comps[3]);
}

Quaternion quat_inverse_mod_J(const Quaternion& f, const std::vector<int>& t, const EvalDomain& dom) {
  const i64 q = dom.q();
  std::vector<bool> in_t(dom.size(), false);
  for (int idx : t) in_t.at(idx) = true;
  EvalVector values = rho(f.reduce(q), dom);
  for (int e = 0; e < dom.size(); ++e) {
    if (in_t[e]) {
      values[e] = {0, 0, 0, 0};
      continue;
    }
    const auto ninv = inv_mod(sq_norm(values[e], q), q);
    if (!ninv) throw Error(ErrorKind::NormVanishesOutsideT, "N(F) vanishes at grid index " + std::to_string(e));
    values[e] = sq_scale(sq_conjugate(values[e], q), *ninv, q);
  }
  return interpolate(dom, values);
}

std::string to_text(const Quaternion& f, char label) {
  std::string out;
  for (int k = 0; k < 4; ++k) {
    out += label;
    out += std::to_string(k) + ": " + to_text(f[k]) + "\n";
  }
  return out;
}

}  // namespace bqtru
