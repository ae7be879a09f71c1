#include "bqtru/ntru.hpp"

#include <numeric>
#include <sstream>

#include "bqtru/error.hpp"
#include "bqtru/modular.hpp"
#include "bqtru/textio.hpp"

namespace bqtru::ntru {

void NtruParams::validate() const {
  auto fail = [](const std::string& why) { throw Error(ErrorKind::InvalidParams, why); };
  if (n < 2) fail("n must exceed 1");
  if (p < 2 || q < 2) fail("moduli must be at least 2");
  if (std::gcd(p, q) != 1) fail("p and q must be coprime");
  if (q <= p) fail("q must exceed p");
  if (!prime_power_base(p) || !prime_power_base(q)) fail("p and q must be prime powers");
  if (d < 0 || 2 * d + 1 > n) fail("weight d too large for n");
}

IntVector convolve(const IntVector& a, const IntVector& b, i64 modulus, OpCounter* counter) {
  const int n = static_cast<int>(a.size());
  if (b.size() != n) throw Error(ErrorKind::DimensionMismatch, "operands differ in length");
  IntVector out = IntVector::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (a(i) == 0) continue;
    for (int j = 0; j < n; ++j) {
      const int k = i + j < n ? i + j : i + j - n;
      out(k) += a(i) * b(j);
    }
  }
  if (counter) {
    counter->ring_mults += 1;
    counter->scalar_mults += static_cast<u64>(n) * n;
  }
  if (modulus > 0)
    for (auto& c : out) c = mod(c, modulus);
  return out;
}

IntMatrix circulant(const IntVector& h) {
  const int n = static_cast<int>(h.size());
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, (i + j) % n) = h(j);
  return m;
}

std::optional<IntVector> inverse(const IntVector& f, i64 m) {
  const auto base = prime_power_base(m);
  if (!base) throw Error(ErrorKind::InvalidParams, "modulus must be a prime power");
  const i64 p = *base;
  const int n = static_cast<int>(f.size());
  IntMatrix a = circulant(f);
  for (auto& v : a.reshaped()) v = mod(v, p);
  IntVector one = IntVector::Zero(n);
  one(0) = 1;
  auto g = solve_left_mod_prime(a, one, p);
  if (!g) return std::nullopt;
  // Newton: g <- g (2 - f g) doubles the p-adic precision.
  IntVector inv = *g;
  for (i64 reached = p; reached < m;) {
    reached = reached > m / reached ? m : reached * reached;
    IntVector two_minus = -convolve(f, inv, reached);
    two_minus(0) += 2;
    inv = convolve(inv, two_minus, reached);
  }
  for (auto& c : inv) c = mod(c, m);
  return inv;
}

IntVector sample_ternary(int n, int d, Rng& rng, int extra_ones) {
  if (d < 0 || 2 * d + extra_ones > n) throw Error(ErrorKind::WeightTooLarge, "too many nonzero coefficients");
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  const int picks = 2 * d + extra_ones;
  for (int i = 0; i < picks; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  IntVector v = IntVector::Zero(n);
  for (int i = 0; i < d + extra_ones; ++i) v(idx[i]) = 1;
  for (int i = d + extra_ones; i < picks; ++i) v(idx[i]) = -1;
  return v;
}

KeyPair keygen(const NtruParams& params, Rng& rng, int max_attempts) {
  params.validate();
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const IntVector f = sample_ternary(params.n, params.d, rng, 1);
    const auto fq = inverse(f, params.q);
    if (!fq) continue;
    const auto fp = inverse(f, params.p);
    if (!fp) continue;
    const IntVector g = sample_ternary(params.n, params.d, rng);
    KeyPair kp;
    kp.pub.params = kp.priv.params = params;
    kp.pub.h = convolve(*fq, g, params.q);
    kp.priv.f = f;
    kp.priv.g = g;
    kp.priv.f_p_inv = *fp;
    return kp;
  }
  throw Error(ErrorKind::RetriesExhausted, "no invertible f found");
}

IntVector encrypt(const PublicKey& key, const IntVector& m, Rng& rng, const IntVector* r, OpCounter* counter) {
  const NtruParams& p = key.params;
  if (m.size() != p.n) throw Error(ErrorKind::DimensionMismatch, "message length differs from n");
  const i64 half = p.p / 2;
  for (auto c : m)
    if (c < -half || c > half) throw Error(ErrorKind::MessageOutOfRange, "message coefficient out of range");
  const IntVector blind = r ? *r : sample_ternary(p.n, p.d, rng);
  IntVector c = convolve(key.h, blind, p.q, counter) * p.p + m;
  for (auto& v : c) v = mod(v, p.q);
  return c;
}

IntVector decrypt(const PrivateKey& key, const IntVector& c, bool strict) {
  const NtruParams& p = key.params;
  if (c.size() != p.n) throw Error(ErrorKind::DimensionMismatch, "ciphertext length differs from n");
  IntVector a = convolve(key.f, c, p.q);
  for (auto& v : a) v = centered(v, p.q);
  IntVector m = convolve(key.f_p_inv, a, p.p);
  for (auto& v : m) v = centered(v, p.p);
  if (strict) {
    const IntVector rest = a - convolve(key.f, m, 0);
    for (auto v : rest) {
      if (v % p.p != 0) throw Error(ErrorKind::DecryptionFailure, "residual is not a multiple of p");
      if (std::abs(v / p.p) > 2 * p.d) throw Error(ErrorKind::DecryptionFailure, "residual too large");
    }
  }
  return m;
}

std::size_t public_key_bits(const NtruParams& params) {
  return static_cast<std::size_t>(params.n) * ceil_log2(params.q);
}

namespace {

std::string header(const NtruParams& p) {
  std::ostringstream out;
  out << "n=" << p.n << " p=" << p.p << " q=" << p.q << " d=" << p.d;
  return out.str();
}

NtruParams parse_header(const std::string& line) {
  NtruParams p;
  long long n = 0, pp = 0, q = 0, d = 0;
  char tail = 0;
  if (std::sscanf(line.c_str(), "n=%lld p=%lld q=%lld d=%lld%c", &n, &pp, &q, &d, &tail) != 4)
    throw Error(ErrorKind::MalformedInput, "bad NTRU header");
  p.n = static_cast<int>(n);
  p.p = pp;
  p.q = q;
  p.d = static_cast<int>(d);
  if (header(p) != line) throw Error(ErrorKind::MalformedInput, "bad NTRU header");
  p.validate();
  return p;
}

IntVector parse_vec(const std::string& line, const char* label, int n, i64 lo, i64 hi) {
  const auto values = parse_ints(labeled(line, label), n);
  IntVector v(n);
  for (int i = 0; i < n; ++i) {
    if (values[i] < lo || values[i] > hi) throw Error(ErrorKind::MalformedInput, std::string(label) + " out of range");
    v(i) = values[i];
  }
  return v;
}

std::string vec_line(const char* label, const IntVector& v) {
  return std::string(label) + ": " + join_ints(std::vector<i64>(v.begin(), v.end())) + "\n";
}

std::vector<std::string> open(std::string_view text, const char* magic, std::size_t count) {
  auto lines = unseal(text);
  if (lines.size() != count || lines[0] != magic) throw Error(ErrorKind::MalformedInput, std::string("expected ") + magic);
  return lines;
}

}  // namespace

std::string serialize_public(const PublicKey& key) {
  return seal("NTRU v1 public\n" + header(key.params) + "\n" + vec_line("h", key.h));
}

std::string serialize_private(const PrivateKey& key) {
  return seal("NTRU v1 private\n" + header(key.params) + "\n" + vec_line("f", key.f) + vec_line("g", key.g));
}

PublicKey deserialize_public(std::string_view text) {
  const auto lines = open(text, "NTRU v1 public", 3);
  PublicKey key;
  key.params = parse_header(lines[1]);
  key.h = parse_vec(lines[2], "h", key.params.n, 0, key.params.q - 1);
  return key;
}

PrivateKey deserialize_private(std::string_view text) {
  const auto lines = open(text, "NTRU v1 private", 4);
  PrivateKey key;
  key.params = parse_header(lines[1]);
  key.f = parse_vec(lines[2], "f", key.params.n, -1, 1);
  key.g = parse_vec(lines[3], "g", key.params.n, -1, 1);
  const auto fp = inverse(key.f, key.params.p);
  if (!fp) throw Error(ErrorKind::MalformedInput, "f is not invertible mod p");
  key.f_p_inv = *fp;
  return key;
}

}  // namespace bqtru::ntru
