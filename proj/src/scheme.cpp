#include "bqtru/scheme.hpp"

#include <algorithm>
#include <numeric>

#include "bqtru/analysis.hpp"
#include "bqtru/error.hpp"
#include "bqtru/modular.hpp"
#include "bqtru/textio.hpp"

namespace bqtru {

RingElem sample_ternary(int n, int d, Rng& rng, int extra_ones) {
  const int size = n * n;
  if (d < 0 || extra_ones < 0 || 2 * d + extra_ones > size)
    throw Error(ErrorKind::WeightTooLarge, "cannot place " + std::to_string(2 * d + extra_ones) + " nonzero coefficients");
  std::vector<int> idx(size);
  std::iota(idx.begin(), idx.end(), 0);
  const int picks = 2 * d + extra_ones;
  for (int i = 0; i < picks; ++i) {
    std::uniform_int_distribution<int> pick(i, size - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  IntVector c = IntVector::Zero(size);
  for (int i = 0; i < d + extra_ones; ++i) c(idx[i]) = 1;
  for (int i = d + extra_ones; i < picks; ++i) c(idx[i]) = -1;
  return RingElem(n, 0, std::move(c));
}

Quaternion sample_ternary_quat(int n, int d, Rng& rng) {
  RingElem c0 = sample_ternary(n, d, rng);
  RingElem c1 = sample_ternary(n, d, rng);
  RingElem c2 = sample_ternary(n, d, rng);
  RingElem c3 = sample_ternary(n, d, rng);
  return Quaternion(std::move(c0), std::move(c1), std::move(c2), std::move(c3));
}

Quaternion sample_private_F(const Params& params, Rng& rng) {
  RingElem c0 = sample_ternary(params.n, params.d_f, rng, 1);
  RingElem c1 = sample_ternary(params.n, params.d_f, rng);
  RingElem c2 = sample_ternary(params.n, params.d_f, rng);
  RingElem c3 = sample_ternary(params.n, params.d_f, rng);
  return Quaternion(std::move(c0), std::move(c1), std::move(c2), std::move(c3));
}

Quaternion sample_message(const Params& params, Rng& rng) {
  const i64 half = (params.p - 1) / 2;
  std::uniform_int_distribution<i64> dist(-half, half);
  IntVector v(params.quat_size());
  for (auto& x : v) x = dist(rng);
  return Quaternion::from_vector(params.n, 0, v);
}

void complete_private_key(PrivateKey& key) {
  const Params& p = key.params;
  const EvalDomain dom(p.n, p.q);
  key.ideal = make_ideal(key.ideal.T, key.ideal.weights, dom);
  key.D_prime = build_D_prime(key.ideal.T, dom);
  key.reduced = std::make_shared<const ReducedBasis<double>>(lll_reduce<double>(key.D_prime.rows));
  key.F_p_inv = quat_inverse_mod_p(key.F, p.p);
}

KeyPair keygen(const Params& params, Rng& rng, const KeygenOptions& options) {
  params.validate();
  const int n = params.n;
  const i64 q = params.q;
  const EvalDomain dom(n, q);

  Quaternion G, F;
  std::vector<int> t;
  bool found = false;
  for (int g_try = 0; g_try < options.max_g_attempts && !found; ++g_try) {
    G = sample_ternary_quat(n, params.d_g, rng);
    t = derive_T(G, dom);
    if (t.empty() || static_cast<int>(t.size()) > params.t_cap()) continue;
    std::vector<bool> in_t(dom.size(), false);
    for (int e : t) in_t[e] = true;

    for (int f_try = 0; f_try < options.f_attempts_per_g; ++f_try) {
      F = sample_private_F(params, rng);
      const EvalVector fv = rho(F.reduce(q), dom);
      bool norm_ok = true;
      for (int e = 0; e < dom.size() && norm_ok; ++e)
        if (!in_t[e] && sq_norm(fv[e], q) == 0) norm_ok = false;
      if (!norm_ok) continue;
      try {
        quat_inverse_mod_p(F, params.p);
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::NotInvertible) throw;
        continue;
      }
      found = true;
      break;
    }
  }
  if (!found) throw Error(ErrorKind::RetriesExhausted, "no admissible (G, F) pair within the attempt budget");

  std::uniform_int_distribution<i64> nonzero(1, q - 1);
  std::vector<i64> weights(t.size());
  for (auto& w : weights) w = nonzero(rng);
  ScalarQuat w_quat;
  do {
    for (auto& c : w_quat) c = nonzero(rng);
  } while (sq_norm(w_quat, q) == 0);

  KeyPair kp;
  PrivateKey& sk = kp.priv;
  sk.params = params;
  sk.F = F;
  sk.G = G;
  sk.W = w_quat;
  sk.ideal.T = t;
  sk.ideal.weights = weights;
  complete_private_key(sk);

  const Quaternion f_inv = quat_inverse_mod_J(F.reduce(q), t, dom);
  const RingElem& sigma = sk.ideal.sigma;
  const Quaternion theta(sigma * w_quat[0], sigma * w_quat[1], sigma * w_quat[2], sigma * w_quat[3]);
  kp.pub.params = params;
  kp.pub.H = quat_mul_strassen(f_inv, G.reduce(q)) + theta;

  // rho(F ∘ theta) is F(t) (q_t W) on T and zero elsewhere.
  const EvalVector fv = rho(F.reduce(q), dom);
  sk.rho_gamma.assign(dom.size(), ScalarQuat{0, 0, 0, 0});
  for (std::size_t i = 0; i < t.size(); ++i)
    sk.rho_gamma[t[i]] = sq_mul(fv[t[i]], sq_scale(w_quat, weights[i], q), q);
  return kp;
}

Ciphertext encrypt(const PublicKey& key, const Quaternion& message, Rng& rng, const EncryptOptions& options) {
  const Params& p = key.params;
  const i64 half = (p.p - 1) / 2;
  if (message.n() != p.n) throw Error(ErrorKind::ContextMismatch, "message has the wrong ring degree");
  for (int k = 0; k < 4; ++k)
    for (auto c : message[k].coeffs())
      if (c < -half || c > half) throw Error(ErrorKind::MessageOutOfRange, "message coefficient out of range");

  Quaternion phi = options.phi ? *options.phi : sample_ternary_quat(p.n, p.d_phi, rng);
  const Quaternion hq = key.H.reduce(p.q);
  const Quaternion phq = phi.reduce(p.q);
  const Quaternion prod = options.schoolbook ? quat_mul_schoolbook(hq, phq, options.counter)
                                             : quat_mul_strassen(hq, phq, options.counter);
  Ciphertext ct;
  ct.params = p;
  ct.C = prod * p.p + message.reduce(p.q);
  return ct;
}

Quaternion decrypt(const PrivateKey& key, const Ciphertext& ct, const DecryptOptions& options) {
  const Params& p = key.params;
  if (!(ct.params == p)) throw Error(ErrorKind::ContextMismatch, "ciphertext parameters differ from the key");
  if (!key.reduced) throw Error(ErrorKind::InvalidParams, "private key is missing its reduced basis");
  const Quaternion a = quat_mul_strassen(key.F.reduce(p.q), ct.C.reduce(p.q));
  const double fallback = 3.0 * noise_std(p) * p.n;

  std::array<RingElem, 4> v;
  for (int c = 0; c < 4; ++c) {
    const IntVector& t = a[c].coeffs();
    const IntVector b = closest_vector<double>(*key.reduced, t.cast<double>(), fallback);
    v[c] = RingElem(p.n, 0, t - b);
  }
  const Quaternion noise(v[0], v[1], v[2], v[3]);
  if (options.noise) *options.noise = noise;
  const Quaternion m = quat_mul_strassen(key.F_p_inv, noise.reduce(p.p)).lift_centered();

  if (options.strict) {
    const Quaternion e = noise - quat_mul_schoolbook(key.F, m);
    const i64 inf_bound = 8 * std::min(p.d_g, p.d_phi);
    const i64 norm_bound = 2 * 64 * static_cast<i64>(p.d_g) * p.d_phi + 16;
    i64 norm = 0;
    for (int k = 0; k < 4; ++k)
      for (auto c : e[k].coeffs()) {
        if (c % p.p != 0) throw Error(ErrorKind::DecryptionFailure, "residual is not a multiple of p");
        const i64 r = c / p.p;
        if (r > inf_bound || r < -inf_bound) throw Error(ErrorKind::DecryptionFailure, "residual coefficient too large");
        norm += r * r;
      }
    if (norm > norm_bound) throw Error(ErrorKind::DecryptionFailure, "residual norm too large");
  }
  return m;
}

namespace {

constexpr int kPrefixDigits = 16;

BigInt big_pow(i64 base, int exp) { return boost::multiprecision::pow(BigInt(base), exp); }

}  // namespace

std::size_t message_capacity(const Params& params) {
  const int digits = params.quat_size() - kPrefixDigits;
  if (digits <= 0) return 0;
  const BigInt room = big_pow(params.p, digits);
  std::size_t bytes = 0;
  BigInt span = 256;
  while (span <= room) {
    ++bytes;
    span *= 256;
  }
  return bytes;
}

Quaternion encode_message(const std::vector<std::uint8_t>& payload, const Params& params) {
  const std::size_t cap = message_capacity(params);
  if (payload.size() > cap)
    throw Error(ErrorKind::PayloadTooLarge,
                std::to_string(payload.size()) + " bytes exceed the capacity of " + std::to_string(cap));
  const i64 p = params.p;
  IntVector digits = IntVector::Zero(params.quat_size());
  i64 len = static_cast<i64>(payload.size());
  for (int i = 0; i < kPrefixDigits; ++i) {
    digits(i) = len % p;
    len /= p;
  }
  BigInt x = 0;
  if (!payload.empty()) import_bits(x, payload.begin(), payload.end(), 8, false);
  for (int i = kPrefixDigits; i < digits.size() && x != 0; ++i) {
    digits(i) = static_cast<i64>(x % p);
    x /= p;
  }
  for (auto& d : digits) d = centered(d, p);
  return Quaternion::from_vector(params.n, 0, digits);
}

std::vector<std::uint8_t> decode_message(const Quaternion& message, const Params& params) {
  const i64 p = params.p;
  IntVector digits = message.to_vector();
  if (digits.size() != params.quat_size()) throw Error(ErrorKind::DimensionMismatch, "wrong message size");
  for (auto& d : digits) d = mod(d, p);
  i64 len = 0;
  for (int i = kPrefixDigits - 1; i >= 0; --i) len = len * p + digits(i);
  if (len < 0 || static_cast<std::size_t>(len) > message_capacity(params))
    throw Error(ErrorKind::MalformedInput, "length prefix exceeds the capacity");
  BigInt x = 0;
  for (int i = static_cast<int>(digits.size()) - 1; i >= kPrefixDigits; --i) x = x * p + digits(i);
  std::vector<std::uint8_t> out(static_cast<std::size_t>(len));
  for (auto& byte : out) {
    byte = static_cast<std::uint8_t>(static_cast<unsigned>(x & 0xff));
    x >>= 8;
  }
  if (x != 0) throw Error(ErrorKind::MalformedInput, "payload digits exceed the stated length");
  return out;
}

namespace {

const char* const kMagicPublic = "BQTRU v1 public";
const char* const kMagicPrivate = "BQTRU v1 private";
const char* const kMagicCt = "BQTRU v1 ct";

std::string quat_lines(const Quaternion& f, char label) { return to_text(f, label); }

Quaternion parse_quat(const std::vector<std::string>& lines, std::size_t first, char label, int n, i64 modulus) {
  std::array<RingElem, 4> c;
  for (int k = 0; k < 4; ++k) {
    const std::string name = std::string(1, label) + std::to_string(k);
    c[k] = ring_from_text(labeled(lines.at(first + k), name), n, modulus);
  }
  return Quaternion(c[0], c[1], c[2], c[3]);
}

void expect_lines(const std::vector<std::string>& lines, std::size_t count, const char* magic) {
  if (lines.empty() || lines[0] != magic) throw Error(ErrorKind::MalformedInput, std::string("expected '") + magic + "'");
  if (lines.size() != count) throw Error(ErrorKind::MalformedInput, "unexpected number of lines");
}

void check_ternary(const RingElem& r, int plus, int minus, const char* what) {
  int seen_plus = 0, seen_minus = 0;
  for (auto c : r.coeffs()) {
    if (c == 1) ++seen_plus;
    else if (c == -1) ++seen_minus;
    else if (c != 0) throw Error(ErrorKind::MalformedInput, std::string(what) + " is not ternary");
  }
  if (seen_plus != plus || seen_minus != minus)
    throw Error(ErrorKind::MalformedInput, std::string(what) + " has the wrong weight");
}

std::vector<i64> in_range(std::vector<i64> values, i64 lo, i64 hi, const char* what) {
  for (auto v : values)
    if (v < lo || v > hi) throw Error(ErrorKind::MalformedInput, std::string(what) + " out of range");
  return values;
}

}  // namespace

std::string serialize_public(const PublicKey& key) {
  return seal(std::string(kMagicPublic) + "\n" + to_header(key.params) + "\n" + quat_lines(key.H.reduce(key.params.q), 'h'));
}

PublicKey deserialize_public(std::string_view text) {
  const auto lines = unseal(text);
  expect_lines(lines, 6, kMagicPublic);
  PublicKey key;
  key.params = params_from_header(lines[1]);
  key.H = parse_quat(lines, 2, 'h', key.params.n, key.params.q);
  return key;
}

std::string serialize_private(const PrivateKey& key) {
  const Params& p = key.params;
  std::string body = std::string(kMagicPrivate) + "\n" + to_header(p) + "\n";
  body += quat_lines(key.F, 'f');
  body += quat_lines(key.G, 'g');
  body += "T: " + join_ints(std::vector<i64>(key.ideal.T.begin(), key.ideal.T.end())) + "\n";
  body += "weights: " + join_ints(key.ideal.weights) + "\n";
  body += "W: " + join_ints(std::vector<i64>(key.W.begin(), key.W.end())) + "\n";
  std::vector<i64> rg;
  rg.reserve(4 * key.rho_gamma.size());
  for (const auto& e : key.rho_gamma) rg.insert(rg.end(), e.begin(), e.end());
  body += "rhogamma: " + join_ints(rg) + "\n";
  return seal(std::move(body));
}

PrivateKey deserialize_private(std::string_view text) {
  const auto lines = unseal(text);
  expect_lines(lines, 14, kMagicPrivate);
  PrivateKey key;
  key.params = params_from_header(lines[1]);
  const Params& p = key.params;
  key.F = parse_quat(lines, 2, 'f', p.n, 0);
  key.G = parse_quat(lines, 6, 'g', p.n, 0);
  for (int k = 0; k < 4; ++k) {
    check_ternary(key.F[k], p.d_f + (k == 0 ? 1 : 0), p.d_f, "F");
    check_ternary(key.G[k], p.d_g, p.d_g, "G");
  }
  const auto t = in_range(parse_ints(labeled(lines[10], "T")), 0, p.ring_size() - 1, "T");
  if (t.empty() || static_cast<int>(t.size()) > p.t_cap() || !std::is_sorted(t.begin(), t.end()) ||
      std::adjacent_find(t.begin(), t.end()) != t.end())
    throw Error(ErrorKind::MalformedInput, "T must be a nonempty increasing index list");
  key.ideal.T.assign(t.begin(), t.end());
  key.ideal.weights = in_range(parse_ints(labeled(lines[11], "weights"), static_cast<long>(t.size())), 1, p.q - 1, "weights");
  const auto w = in_range(parse_ints(labeled(lines[12], "W"), 4), 1, p.q - 1, "W");
  std::copy(w.begin(), w.end(), key.W.begin());
  if (sq_norm(key.W, p.q) == 0) throw Error(ErrorKind::MalformedInput, "W is not invertible");
  const auto rg = in_range(parse_ints(labeled(lines[13], "rhogamma"), p.quat_size()), 0, p.q - 1, "rhogamma");
  key.rho_gamma.resize(p.ring_size());
  for (int e = 0; e < p.ring_size(); ++e)
    for (int c = 0; c < 4; ++c) key.rho_gamma[e][c] = rg[4 * e + c];
  try {
    complete_private_key(key);
  } catch (const Error& e) {
    throw Error(ErrorKind::MalformedInput, std::string("inconsistent private key: ") + e.what());
  }
  return key;
}

std::string serialize_ciphertext(const Ciphertext& ct) {
  return seal(std::string(kMagicCt) + "\n" + to_header(ct.params) + "\n" + quat_lines(ct.C.reduce(ct.params.q), 'c'));
}

Ciphertext deserialize_ciphertext(std::string_view text) {
  const auto lines = unseal(text);
  expect_lines(lines, 6, kMagicCt);
  Ciphertext ct;
  ct.params = params_from_header(lines[1]);
  ct.C = parse_quat(lines, 2, 'c', ct.params.n, ct.params.q);
  return ct;
}

std::vector<std::uint8_t> pack_public(const PublicKey& key) {
  const IntVector v = key.H.reduce(key.params.q).to_vector();
  return pack_bits(std::vector<i64>(v.begin(), v.end()), ceil_log2(key.params.q));
}

std::size_t packed_public_bits(const PublicKey& key) {
  return static_cast<std::size_t>(key.params.quat_size()) * ceil_log2(key.params.q);
}

bool verify_key_membership(const PrivateKey& priv, const PublicKey& pub) {
  const EvalDomain dom(priv.params.n, priv.params.q);
  return verify_key_membership(priv.F, priv.G, priv.rho_gamma, pub.H, dom);
}

}  // namespace bqtru
