#include "bqtru/ring.hpp"

#include <sstream>

#include "bqtru/error.hpp"
#include "bqtru/modular.hpp"

namespace bqtru {

RingElem::RingElem(int n, i64 modulus) : n_(n), modulus_(modulus), coeffs_(IntVector::Zero(n * n)) {}

RingElem::RingElem(int n, i64 modulus, IntVector coeffs)
    : n_(n), modulus_(modulus), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != n * n) throw Error(ErrorKind::DimensionMismatch, "expected n^2 coefficients");
  normalize();
}

RingElem RingElem::one(int n, i64 modulus) { return monomial(n, modulus, 0, 0, 1); }

RingElem RingElem::monomial(int n, i64 modulus, int a, int b, i64 c) {
  RingElem out(n, modulus);
  out.set(((a % n + n) % n) * n + ((b % n + n) % n), c);
  return out;
}

void RingElem::set(int index, i64 value) {
  coeffs_(index) = modulus_ > 0 ? mod(value, modulus_) : value;
}

void RingElem::normalize() {
  if (modulus_ <= 0) return;
  for (auto& c : coeffs_) c = mod(c, modulus_);
}

RingElem RingElem::reduce(i64 m) const { return RingElem(n_, m, coeffs_); }

RingElem RingElem::to_integer() const { return RingElem(n_, 0, coeffs_); }

RingElem RingElem::lift_centered() const {
  RingElem out(n_, 0, coeffs_);
  if (modulus_ > 0)
    for (auto& c : out.coeffs_) c = centered(c, modulus_);
  return out;
}

static void require_same(const RingElem& a, const RingElem& b) {
  if (!a.same_context(b))
    throw Error(ErrorKind::ContextMismatch, "ring elements live in different rings");
}

RingElem& RingElem::operator+=(const RingElem& rhs) {
  require_same(*this, rhs);
  coeffs_ += rhs.coeffs_;
  normalize();
  return *this;
}

RingElem& RingElem::operator-=(const RingElem& rhs) {
  require_same(*this, rhs);
  coeffs_ -= rhs.coeffs_;
  normalize();
  return *this;
}

RingElem& RingElem::operator*=(i64 scalar) {
  if (modulus_ > 0) {
    const i64 s = mod(scalar, modulus_);
    for (auto& c : coeffs_) c = mul_mod(c, s, modulus_);
  } else {
    coeffs_ *= scalar;
  }
  return *this;
}

RingElem RingElem::operator-() const {
  RingElem out(n_, modulus_, -coeffs_);
  return out;
}

RingElem conv_mul(const RingElem& f, const RingElem& g, OpCounter* counter) {
  require_same(f, g);
  const int n = f.n();
  const int size = n * n;
  IntVector acc = IntVector::Zero(size);
  const i64* fc = f.coeffs().data();
  const i64* gc = g.coeffs().data();
  i64* out = acc.data();
  for (int c = 0; c < n; ++c) {
    for (int d = 0; d < n; ++d) {
      const i64 fv = fc[c * n + d];
      if (fv == 0) continue;
      for (int a = 0; a < n; ++a) {
        const int ra = a + c < n ? a + c : a + c - n;
        const i64* grow = gc + a * n;
        i64* orow = out + ra * n;
        for (int b = 0; b < n - d; ++b) orow[b + d] += fv * grow[b];
        for (int b = n - d; b < n; ++b) orow[b + d - n] += fv * grow[b];
      }
    }
  }
  if (counter != nullptr) {
    counter->ring_mults += 1;
    // Schoolbook cost: every pair of coefficients is multiplied.
    counter->scalar_mults += static_cast<u64>(size) * static_cast<u64>(size);
  }
  return RingElem(n, f.modulus(), std::move(acc));
}

IntMatrix multiplication_matrix(const RingElem& h) {
  const int n = h.n();
  const int size = n * n;
  IntMatrix m(size, size);
  for (int r = 0; r < size; ++r) {
    const int a = r / n, b = r % n;
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d) m(r, ((a + c) % n) * n + (b + d) % n) = h.at(c, d);
  }
  return m;
}

RingElem ring_inverse(const RingElem& f, i64 m) {
  if (!is_prime(m)) throw Error(ErrorKind::ContextMismatch, "ring_inverse expects a prime modulus");
  const RingElem fm = f.reduce(m);
  const int size = fm.size();
  IntVector unit = IntVector::Zero(size);
  unit(0) = 1;
  auto solution = solve_left_mod_prime(multiplication_matrix(fm), unit, m);
  if (!solution) throw Error(ErrorKind::NotInvertible, "element is a zero divisor");
  return RingElem(fm.n(), m, std::move(*solution));
}

EvalDomain::EvalDomain(int n, i64 q) : n_(n), q_(q) {
  if (n < 1 || q < 2 || (q - 1) % n != 0)
    throw Error(ErrorKind::InvalidParams, "grid needs n | q - 1");
  const i64 g = primitive_root(q);
  omega_ = pow_mod(g, static_cast<u64>((q - 1) / n), q);
  powers_.resize(n);
  powers_[0] = 1;
  for (int k = 1; k < n; ++k) powers_[k] = mul_mod(powers_[k - 1], omega_, q);
  points_.reserve(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) points_.emplace_back(powers_[a], powers_[b]);

  // lambda at (w^s, w^t) has coefficient n^-2 w^-(s i + t j) at x^i y^j.
  const i64 n2inv = *inv_mod(static_cast<i64>(n) * n % q, q);
  const int size = n * n;
  lagrange_.resize(size, size);
  for (int k = 0; k < size; ++k) {
    const int s = k / n, t = k % n;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const int e = ((n - (s * i) % n) + (n - (t * j) % n)) % n;
        lagrange_(k, i * n + j) = mul_mod(n2inv, powers_[e], q);
      }
  }
}

std::optional<int> EvalDomain::index_of(i64 a, i64 b) const {
  a = mod(a, q_);
  b = mod(b, q_);
  int ia = -1, ib = -1;
  for (int k = 0; k < n_; ++k) {
    if (powers_[k] == a) ia = k;
    if (powers_[k] == b) ib = k;
  }
  if (ia < 0 || ib < 0) return std::nullopt;
  return ia * n_ + ib;
}

std::vector<int> EvalDomain::t_first_order(const std::vector<int>& t) const {
  std::vector<int> order(t.begin(), t.end());
  std::vector<bool> used(size(), false);
  for (int k : t) used[k] = true;
  for (int k = 0; k < size(); ++k)
    if (!used[k]) order.push_back(k);
  return order;
}

i64 eval(const RingElem& f, i64 a, i64 b, i64 q) {
  const int n = f.n();
  a = mod(a, q);
  b = mod(b, q);
  i64 result = 0;
  i64 apow = 1;
  for (int i = 0; i < n; ++i) {
    i64 inner = 0;
    i64 bpow = 1;
    for (int j = 0; j < n; ++j) {
      inner = mod(inner + mul_mod(f.at(i, j), bpow, q), q);
      bpow = mul_mod(bpow, b, q);
    }
    result = mod(result + mul_mod(inner, apow, q), q);
    apow = mul_mod(apow, a, q);
  }
  return result;
}

std::vector<i64> evaluate_grid(const RingElem& f, const EvalDomain& dom) {
  const int n = dom.n();
  const i64 q = dom.q();
  // partial[i][t] = sum_j f_ij w^(t j)
  std::vector<i64> partial(n * n);
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < n; ++t) {
      i64 acc = 0;
      for (int j = 0; j < n; ++j) acc += mod(f.at(i, j), q) * dom.power(t * j);
      partial[i * n + t] = mod(acc, q);
    }
  std::vector<i64> values(n * n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      i64 acc = 0;
      for (int i = 0; i < n; ++i) acc += partial[i * n + t] * dom.power(s * i);
      values[s * n + t] = mod(acc, q);
    }
  return values;
}

RingElem lagrange_interpolant(const EvalDomain& dom, int index) {
  if (index < 0 || index >= dom.size()) throw Error(ErrorKind::NotAGridPoint, "grid index out of range");
  return RingElem(dom.n(), dom.q(), IntVector(dom.lagrange_matrix().row(index).transpose()));
}

RingElem lagrange_interpolant(const EvalDomain& dom, i64 a, i64 b) {
  const auto index = dom.index_of(a, b);
  if (!index) throw Error(ErrorKind::NotAGridPoint, "point is not on the root-of-unity grid");
  return lagrange_interpolant(dom, *index);
}

RingElem interpolate(const EvalDomain& dom, const std::vector<i64>& values) {
  const int size = dom.size();
  if (static_cast<int>(values.size()) != size)
    throw Error(ErrorKind::DimensionMismatch, "interpolate expects n^2 values");
  const i64 q = dom.q();
  IntVector coeffs = IntVector::Zero(size);
  const IntMatrix& lag = dom.lagrange_matrix();
  for (int k = 0; k < size; ++k) {
    const i64 v = mod(values[k], q);
    if (v == 0) continue;
    for (int c = 0; c < size; ++c) coeffs(c) = (coeffs(c) + v * lag(k, c)) % q;
  }
  return RingElem(dom.n(), q, std::move(coeffs));
}

bool absorb_check(const RingElem& alpha, const EvalDomain& dom, i64 a, i64 b) {
  const RingElem lambda = lagrange_interpolant(dom, a, b);
  const RingElem a_q = alpha.reduce(dom.q());
  return conv_mul(a_q, lambda) == lambda * eval(a_q, a, b);
}

std::string to_text(const RingElem& f) {
  std::ostringstream out;
  for (int i = 0; i < f.size(); ++i) {
    if (i > 0) out << ' ';
    out << f[i];
  }
  return out.str();
}

RingElem ring_from_text(std::string_view text, int n, i64 modulus) {
  std::istringstream in{std::string(text)};
  IntVector coeffs(n * n);
  for (int i = 0; i < n * n; ++i) {
    std::string token;
    if (!(in >> token)) throw Error(ErrorKind::MalformedInput, "too few coefficients");
    std::size_t used = 0;
    i64 value = 0;
    try {
      value = std::stoll(token, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::MalformedInput, "bad coefficient '" + token + "'");
    }
    if (used != token.size()) throw Error(ErrorKind::MalformedInput, "bad coefficient '" + token + "'");
    if (modulus > 0 && (value < 0 || value >= modulus))
      throw Error(ErrorKind::MalformedInput, "coefficient out of range");
    coeffs(i) = value;
  }
  std::string extra;
  if (in >> extra) throw Error(ErrorKind::MalformedInput, "too many coefficients");
  return RingElem(n, modulus, std::move(coeffs));
}

}  // namespace bqtru
