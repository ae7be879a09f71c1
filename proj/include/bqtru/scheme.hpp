#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "bqtru/ideal.hpp"
#include "bqtru/lattice.hpp"
#include "bqtru/params.hpp"
#include "bqtru/quat.hpp"

namespace bqtru {

using Rng = std::mt19937_64;

/// Exactly d coefficients +1 and d coefficients -1 (plus extra_ones further
/// +1 coefficients), uniformly placed. Integer ring (modulus 0).
RingElem sample_ternary(int n, int d, Rng& rng, int extra_ones = 0);
Quaternion sample_ternary_quat(int n, int d, Rng& rng);

/// F for key generation: f0 carries d_f + 1 ones so that N(F)(1, 1) = 1.
Quaternion sample_private_F(const Params& params, Rng& rng);

/// Uniform coefficients in [-(p-1)/2, (p-1)/2].
Quaternion sample_message(const Params& params, Rng& rng);

struct PublicKey {
  Params params;
  Quaternion H;  // mod q
};

struct PrivateKey {
  Params params;
  Quaternion F;  // ternary, integer ring
  Quaternion G;
  EvalVector rho_gamma;
  IdealSpec ideal;
  ScalarQuat W{};
  // Derived on construction or load.
  Quaternion F_p_inv;
  LatticeBasis D_prime;
  std::shared_ptr<const ReducedBasis<double>> reduced;
};

struct KeyPair {
  PublicKey pub;
  PrivateKey priv;
};

struct KeygenOptions {
  int max_g_attempts = 10000;
  int f_attempts_per_g = 100;
};

/// Throws RetriesExhausted.
KeyPair keygen(const Params& params, Rng& rng, const KeygenOptions& options = {});

/// Recomputes sigma, D', its reduced basis and F_p^-1 from the stored fields.
void complete_private_key(PrivateKey& key);

struct Ciphertext {
  Params params;
  Quaternion C;  // mod q
};

struct EncryptOptions {
  bool schoolbook = false;           // 16 products instead of Strassen's 7
  const Quaternion* phi = nullptr;   // fixed blinding quaternion (tests)
  OpCounter* counter = nullptr;
};

/// C = p H ∘ Phi + M mod q. M is an integer quaternion with centered
/// coefficients; throws MessageOutOfRange otherwise.
Ciphertext encrypt(const PublicKey& key, const Quaternion& message, Rng& rng, const EncryptOptions& options = {});

struct DecryptOptions {
  bool strict = false;
  Quaternion* noise = nullptr;  // receives V = p G ∘ Phi + F ∘ M when set
};

/// Returns the centered integer message. In strict mode throws
/// DecryptionFailure when V - F ∘ M is not p times a plausible G ∘ Phi.
Quaternion decrypt(const PrivateKey& key, const Ciphertext& ct, const DecryptOptions& options = {});

/// Bytes carried by one message quaternion.
std::size_t message_capacity(const Params& params);
Quaternion encode_message(const std::vector<std::uint8_t>& payload, const Params& params);
std::vector<std::uint8_t> decode_message(const Quaternion& message, const Params& params);

std::string serialize_public(const PublicKey& key);
std::string serialize_private(const PrivateKey& key);
std::string serialize_ciphertext(const Ciphertext& ct);
PublicKey deserialize_public(std::string_view text);
PrivateKey deserialize_private(std::string_view text);
Ciphertext deserialize_ciphertext(std::string_view text);

/// ceil(log2 q) bits per coefficient, no header.
std::vector<std::uint8_t> pack_public(const PublicKey& key);
std::size_t packed_public_bits(const PublicKey& key);

bool verify_key_membership(const PrivateKey& priv, const PublicKey& pub);

}  // namespace bqtru
