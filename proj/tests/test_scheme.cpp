#include "doctest.h"
#include "oracles.hpp"

#include "bqtru/error.hpp"
#include "bqtru/scheme.hpp"
#include "bqtru/textio.hpp"

using namespace bqtru;

namespace {

const Params& toy() {
  static const Params p = *named_params("toy");
  return p;
}

const Params& moderate() {
  static const Params p = *named_params("moderate");
  return p;
}

const KeyPair& moderate_key() {
  static const KeyPair kp = [] {
    Rng rng(42);
    return keygen(moderate(), rng);
  }();
  return kp;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::ContextMismatch;
}

}  // namespace

TEST_CASE("ternary sampling has exact weights") {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const RingElem r = sample_ternary(7, 6, rng, trial % 2);
    int plus = 0, minus = 0;
    for (auto c : r.coeffs()) {
      plus += c == 1;
      minus += c == -1;
      CHECK((c >= -1 && c <= 1));
    }
    CHECK(plus == 6 + trial % 2);
    CHECK(minus == 6);
  }
  CHECK(kind_of([&] { sample_ternary(3, 5, rng); }) == ErrorKind::WeightTooLarge);
  CHECK(kind_of([&] { sample_ternary(3, 4, rng, 2); }) == ErrorKind::WeightTooLarge);

  const Quaternion f = sample_private_F(moderate(), rng);
  i64 sum0 = 0;
  for (auto c : f[0].coeffs()) sum0 += c;
  CHECK(sum0 == 1);

  double mean = 0;
  for (int trial = 0; trial < 200; ++trial)
    for (auto c : sample_message(moderate(), rng).to_vector()) {
      CHECK((c >= -1 && c <= 1));
      mean += static_cast<double>(c);
    }
  CHECK(std::abs(mean / (200.0 * 196)) < 0.02);
}

TEST_CASE("key structure") {
  Rng rng(3);
  for (const Params& params : {toy(), moderate()}) {
    const EvalDomain dom(params.n, params.q);
    for (int trial = 0; trial < 20; ++trial) {
      const KeyPair kp = keygen(params, rng);
      const PrivateKey& sk = kp.priv;
      const std::vector<int>& t = sk.ideal.T;
      REQUIRE(!t.empty());
      CHECK(t.front() == 0);
      CHECK(static_cast<int>(t.size()) <= params.t_cap());
      CHECK(derive_T(sk.G, dom) == t);

      std::vector<bool> in_t(dom.size(), false);
      for (int e : t) in_t[e] = true;
      const Quaternion fq = sk.F.reduce(params.q);
      const Quaternion f_inv = quat_inverse_mod_J(fq, t, dom);
      const EvalVector prod = rho(quat_mul_schoolbook(fq, f_inv), dom);
      const Quaternion theta = kp.pub.H - quat_mul_schoolbook(f_inv, sk.G.reduce(params.q));
      const EvalVector th = rho(theta, dom);
      for (int e = 0; e < dom.size(); ++e) {
        if (!in_t[e]) {
          CHECK(prod[e] == ScalarQuat{1, 0, 0, 0});
          CHECK(sq_is_zero(th[e]));
        } else {
          CHECK_FALSE(sq_is_zero(th[e]));
        }
      }
      // rho(F ∘ H - G) is rho(gamma).
      CHECK(rho(quat_mul_schoolbook(fq, kp.pub.H) - sk.G.reduce(params.q), dom) == sk.rho_gamma);
      CHECK(quat_mul_schoolbook(sk.F.reduce(params.p), sk.F_p_inv) == Quaternion::one(params.n, params.p));
    }
  }
}

TEST_CASE("keygen is deterministic for a fixed seed") {
  Rng a(77), b(77);
  const KeyPair ka = keygen(moderate(), a);
  const KeyPair kb = keygen(moderate(), b);
  CHECK(serialize_public(ka.pub) == serialize_public(kb.pub));
  CHECK(serialize_private(ka.priv) == serialize_private(kb.priv));
}

TEST_CASE("keygen gives up with RetriesExhausted") {
  Rng rng(5);
  const Params p = moderate();
  KeygenOptions opts;
  opts.max_g_attempts = 1;
  opts.f_attempts_per_g = 0;
  CHECK(kind_of([&] { keygen(p, rng, opts); }) == ErrorKind::RetriesExhausted);
}

TEST_CASE("encryption basics") {
  Rng rng(8);
  const KeyPair& kp = moderate_key();
  const Quaternion m = sample_message(moderate(), rng);

  const Quaternion zero = Quaternion::zero(7, 0);
  EncryptOptions no_blind;
  no_blind.phi = &zero;
  CHECK(encrypt(kp.pub, m, rng, no_blind).C == m.reduce(113));

  const Quaternion phi = sample_ternary_quat(7, 6, rng);
  OpCounter fast, slow;
  EncryptOptions a, b;
  a.phi = b.phi = &phi;
  a.counter = &fast;
  b.counter = &slow;
  b.schoolbook = true;
  CHECK(encrypt(kp.pub, m, rng, a).C == encrypt(kp.pub, m, rng, b).C);
  CHECK(fast.ring_mults == 7);
  CHECK(slow.ring_mults == 16);

  IntVector bad = m.to_vector();
  bad(3) = 2;
  CHECK(kind_of([&] { encrypt(kp.pub, Quaternion::from_vector(7, 0, bad), rng); }) == ErrorKind::MessageOutOfRange);

  Ciphertext ct = encrypt(kp.pub, m, rng);
  ct.params.q = 127;
  CHECK(kind_of([&] { decrypt(kp.priv, ct); }) == ErrorKind::ContextMismatch);
}

TEST_CASE("round trips at the moderate set") {
  Rng rng(9);
  const KeyPair& kp = moderate_key();
  int ok = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Quaternion m = sample_message(moderate(), rng);
    Quaternion noise;
    DecryptOptions opts;
    opts.noise = &noise;
    const Quaternion out = decrypt(kp.priv, encrypt(kp.pub, m, rng), opts);
    if (out == m) ++ok;
  }
  CHECK(ok >= 298);
}

TEST_CASE("oversized q never fails") {
  // q > 24 d p with q = 1 mod 7.
  const Params big{7, 3, 547, 7, 6, 6, 6, 7};
  big.validate();
  Rng rng(10);
  int ok = 0;
  const int trials = 1000;
  KeyPair kp;
  for (int trial = 0; trial < trials; ++trial) {
    if (trial % 100 == 0) kp = keygen(big, rng);
    const Quaternion m = sample_message(big, rng);
    DecryptOptions strict;
    strict.strict = true;
    if (decrypt(kp.priv, encrypt(kp.pub, m, rng), strict) == m) ++ok;
  }
  CHECK(ok == trials);
}

TEST_CASE("tiny q makes failures observable") {
  Rng rng(12);
  int failures = 0;
  KeyPair kp;
  for (int trial = 0; trial < 300; ++trial) {
    if (trial % 50 == 0) kp = keygen(toy(), rng);
    const Quaternion m = sample_message(toy(), rng);
    if (!(decrypt(kp.priv, encrypt(kp.pub, m, rng)) == m)) ++failures;
  }
  CHECK(failures > 0);
}

TEST_CASE("strict mode rejects tampered ciphertexts") {
  Rng rng(13);
  const KeyPair& kp = moderate_key();
  DecryptOptions strict;
  strict.strict = true;
  int rejected = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Quaternion m = sample_message(moderate(), rng);
    Ciphertext ct = encrypt(kp.pub, m, rng);
    CHECK(decrypt(kp.priv, ct, strict) == m);
    IntVector c = ct.C.to_vector();
    c(trial * 7) = mod(c(trial * 7) + 56, 113);
    ct.C = Quaternion::from_vector(7, 113, c);
    try {
      decrypt(kp.priv, ct, strict);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::DecryptionFailure) ++rejected;
    }
  }
  CHECK(rejected == 20);
}

TEST_CASE("message codec") {
  CHECK(message_capacity(moderate()) == 35);
  CHECK(message_capacity(toy()) == 3);

  const Quaternion m = encode_message({0xFF}, moderate());
  const IntVector v = m.to_vector();
  CHECK(v(0) == 1);
  for (int i = 1; i < 16; ++i) CHECK(v(i) == 0);
  const i64 expect[] = {0, 1, 1, 0, 0, 1};
  for (int i = 0; i < 6; ++i) CHECK(v(16 + i) == expect[i]);
  for (int i = 22; i < v.size(); ++i) CHECK(v(i) == 0);

  CHECK(decode_message(encode_message({}, moderate()), moderate()).empty());

  Rng rng(14);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<int> len(0, 35);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::uint8_t> payload(len(rng));
    for (auto& b : payload) b = static_cast<std::uint8_t>(byte(rng));
    const Quaternion enc = encode_message(payload, moderate());
    for (auto c : enc.to_vector()) CHECK((c >= -1 && c <= 1));
    CHECK(decode_message(enc, moderate()) == payload);
  }

  CHECK(kind_of([&] { encode_message(std::vector<std::uint8_t>(36, 1), moderate()); }) == ErrorKind::PayloadTooLarge);
  IntVector bogus = IntVector::Zero(196);
  bogus(0) = 1;
  bogus(1) = 1;
  bogus(2) = 1;  // length 13
  bogus(195) = 1;
  CHECK(kind_of([&] { decode_message(Quaternion::from_vector(7, 0, bogus), moderate()); }) == ErrorKind::MalformedInput);
  bogus.setZero();
  bogus(5) = 1;  // length 243
  CHECK(kind_of([&] { decode_message(Quaternion::from_vector(7, 0, bogus), moderate()); }) == ErrorKind::MalformedInput);
}

TEST_CASE("payload round trip through the cipher") {
  Rng rng(15);
  const KeyPair& kp = moderate_key();
  std::vector<std::uint8_t> payload(16);
  for (std::size_t i = 0; i < payload.size(); ++i) payload[i] = static_cast<std::uint8_t>(i * 37 + 1);
  const Ciphertext ct = encrypt(kp.pub, encode_message(payload, moderate()), rng);
  CHECK(decode_message(decrypt(kp.priv, ct), moderate()) == payload);
}

TEST_CASE("serialization round trips") {
  Rng rng(16);
  const KeyPair& kp = moderate_key();
  const std::string pub_text = serialize_public(kp.pub);
  const PublicKey pub = deserialize_public(pub_text);
  CHECK(pub.params == kp.pub.params);
  CHECK(pub.H == kp.pub.H);
  CHECK(pub_text.rfind("BQTRU v1 public\nn=7 p=3 q=113 df=7 dg=6 dphi=6\nh0: ", 0) == 0);

  const PrivateKey priv = deserialize_private(serialize_private(kp.priv));
  CHECK(priv.F == kp.priv.F);
  CHECK(priv.G == kp.priv.G);
  CHECK(priv.ideal.T == kp.priv.ideal.T);
  CHECK(priv.ideal.weights == kp.priv.ideal.weights);
  CHECK(priv.ideal.sigma == kp.priv.ideal.sigma);
  CHECK(priv.W == kp.priv.W);
  CHECK(priv.rho_gamma == kp.priv.rho_gamma);
  CHECK(priv.F_p_inv == kp.priv.F_p_inv);
  CHECK(priv.D_prime.rows == kp.priv.D_prime.rows);
  CHECK(serialize_private(priv) == serialize_private(kp.priv));

  const Quaternion m = sample_message(moderate(), rng);
  const Ciphertext ct = deserialize_ciphertext(serialize_ciphertext(encrypt(pub, m, rng)));
  CHECK(decrypt(priv, ct) == m);
  CHECK(verify_key_membership(priv, pub));

  CHECK(kind_of([&] { deserialize_public(serialize_ciphertext(ct)); }) == ErrorKind::MalformedInput);
  CHECK(kind_of([&] { deserialize_private(pub_text); }) == ErrorKind::MalformedInput);
  CHECK(kind_of([&] { deserialize_public(""); }) == ErrorKind::MalformedInput);
}

TEST_CASE("every single-bit corruption is rejected") {
  Rng rng(17);
  const KeyPair kp = keygen(toy(), rng);
  for (const std::string& text : {serialize_public(kp.pub), serialize_private(kp.priv)}) {
    int rejected = 0, total = 0;
    for (std::size_t i = 0; i < text.size(); ++i)
      for (int bit = 0; bit < 8; ++bit) {
        std::string bad = text;
        bad[i] = static_cast<char>(bad[i] ^ (1 << bit));
        ++total;
        try {
          if (text[0] == 'B' && text.find("public") < 20)
            deserialize_public(bad);
          else
            deserialize_private(bad);
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::MalformedInput) ++rejected;
        }
      }
    CHECK(rejected == total);
  }
}

TEST_CASE("tampered key fields are rejected even with a fresh checksum") {
  Rng rng(18);
  const KeyPair kp = keygen(toy(), rng);
  const std::string text = serialize_private(kp.priv);
  const auto lines = unseal(text);
  auto reseal = [&](std::size_t line, const std::string& value) {
    std::string body;
    for (std::size_t i = 0; i < lines.size(); ++i) body += (i == line ? value : lines[i]) + "\n";
    return seal(body);
  };
  CHECK(kind_of([&] { deserialize_private(reseal(10, "T: 0 0")); }) == ErrorKind::MalformedInput);
  CHECK(kind_of([&] { deserialize_private(reseal(12, "W: 0 1 1 1")); }) == ErrorKind::MalformedInput);
  CHECK(kind_of([&] { deserialize_private(reseal(2, "f0: 2 0 0 0 0 0 0 0 0")); }) == ErrorKind::MalformedInput);
  CHECK(kind_of([&] { deserialize_private(reseal(1, "n=3 p=3 q=8 df=1 dg=1 dphi=1")); }) == ErrorKind::InvalidParams);
}

TEST_CASE("packed public key sizes") {
  CHECK(packed_public_bits(moderate_key().pub) == 1372);
  CHECK(pack_public(moderate_key().pub).size() == (1372 + 7) / 8);
  const IntVector h = moderate_key().pub.H.to_vector();
  const auto back = unpack_bits(pack_public(moderate_key().pub), 7, 196);
  CHECK(std::equal(back.begin(), back.end(), h.begin()));

  Rng rng(19);
  const KeyPair high = keygen(*named_params("highest"), rng);
  CHECK(packed_public_bits(high.pub) == 3872);
}
