#include "bqtru/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <random>
#include <sstream>

#include "bqtru/analysis.hpp"
#include "bqtru/error.hpp"
#include "bqtru/ideal.hpp"
#include "bqtru/lattice.hpp"
#include "bqtru/ntru.hpp"
#include "bqtru/scheme.hpp"
#include "bqtru/textio.hpp"

namespace bqtru {

namespace {

struct ParamFlags {
  std::string name = "moderate";
  int n = 0;
  i64 p = 0, q = 0;
  int d_f = -1, d_g = -1, d_phi = -1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--params", name, "toy, moderate or highest");
    cmd->add_option("--n", n, "ring degree (overrides the named set)");
    cmd->add_option("--p", p, "small modulus");
    cmd->add_option("--q", q, "large modulus");
    cmd->add_option("--df", d_f, "weight of F");
    cmd->add_option("--dg", d_g, "weight of G");
    cmd->add_option("--dphi", d_phi, "weight of Phi");
  }

  Params resolve() const {
    const auto named = named_params(name);
    if (!named) throw Error(ErrorKind::InvalidParams, "unknown parameter set '" + name + "'");
    Params params = *named;
    if (n) params.n = n, params.max_T = n;
    if (p) params.p = p;
    if (q) params.q = q;
    if (d_f >= 0) params.d_f = d_f;
    if (d_g >= 0) params.d_g = d_g;
    if (d_phi >= 0) params.d_phi = params.d_m = d_phi;
    params.validate();
    return params;
  }

  bool explicit_values() const { return n || p || q || d_f >= 0 || d_g >= 0 || d_phi >= 0; }
  std::string label() const { return explicit_values() ? "custom" : name; }
};

struct SeedFlag {
  std::optional<u64> seed;

  void attach(CLI::App* cmd) { cmd->add_option("--seed", seed, "RNG seed (falls back to BQTRU_SEED)"); }

  Rng make() const {
    if (seed) return Rng(*seed);
    if (const char* env = std::getenv("BQTRU_SEED")) {
      try {
        return Rng(std::stoull(env));
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidParams, "BQTRU_SEED is not an unsigned integer");
      }
    }
    std::random_device rd;
    return Rng((static_cast<u64>(rd()) << 32) ^ rd());
  }
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_or_fail(const std::string& path) {
  try {
    return read_file(path);
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
}

void write_or_fail(const std::string& path, std::string_view contents) {
  try {
    write_file_atomic(path, contents);
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

template <typename Fn>
double time_us(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

int cmd_keygen(const ParamFlags& pf, const SeedFlag& sf, const std::string& prefix, std::ostream& out) {
  const Params params = pf.resolve();
  Rng rng = sf.make();
  const KeyPair kp = keygen(params, rng);
  write_or_fail(prefix + ".pub", serialize_public(kp.pub));
  write_or_fail(prefix + ".priv", serialize_private(kp.priv));
  if (pf.label() == "toy") out << "warning = NOT SECURE (testing only)\n";
  out << "params = " << to_header(params) << "\n";
  out << "T_size = " << kp.priv.ideal.T.size() << "\n";
  out << "public_key_bits = " << packed_public_bits(kp.pub) << "\n";
  out << "wrote = " << prefix << ".pub " << prefix << ".priv\n";
  return 0;
}

int cmd_encrypt(const std::string& key_path, const std::string& in_path, const std::string& out_path,
                const SeedFlag& sf, std::ostream& out) {
  const PublicKey key = deserialize_public(read_or_fail(key_path));
  const std::string payload = read_or_fail(in_path);
  const Quaternion m = encode_message(std::vector<std::uint8_t>(payload.begin(), payload.end()), key.params);
  Rng rng = sf.make();
  write_or_fail(out_path, serialize_ciphertext(encrypt(key, m, rng)));
  out << "bytes = " << payload.size() << "\n";
  out << "capacity = " << message_capacity(key.params) << "\n";
  return 0;
}

int cmd_decrypt(const std::string& key_path, const std::string& in_path, const std::string& out_path,
                bool lenient, std::ostream& out) {
  const PrivateKey key = deserialize_private(read_or_fail(key_path));
  Ciphertext ct;
  std::vector<std::uint8_t> payload;
  try {
    ct = deserialize_ciphertext(read_or_fail(in_path));
    DecryptOptions opts;
    opts.strict = !lenient;
    payload = decode_message(decrypt(key, ct, opts), key.params);
  } catch (const Error& e) {
    // Any damage to the ciphertext surfaces as a decryption failure.
    if (e.kind() == ErrorKind::MalformedInput || e.kind() == ErrorKind::ContextMismatch)
      throw Error(ErrorKind::DecryptionFailure, e.what());
    throw;
  }
  write_or_fail(out_path, std::string(payload.begin(), payload.end()));
  out << "bytes = " << payload.size() << "\n";
  return 0;
}

int cmd_analyze(const ParamFlags& pf, bool as_json, std::ostream& out) {
  const Params params = pf.resolve();
  const auto rows = analysis_report(params, pf.label());
  if (!as_json) {
    out << render_report(rows);
    return 0;
  }
  nlohmann::ordered_json j;
  for (const auto& row : rows) {
    nlohmann::ordered_json cell;
    cell["value"] = row.value;
    if (!row.published.empty()) cell["published"] = row.published;
    j[row.name] = cell;
  }
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_bench(const ParamFlags& pf, const SeedFlag& sf, int trials, std::ostream& out) {
  const Params params = pf.resolve();
  Rng rng = sf.make();
  const KeyPair kp = keygen(params, rng);
  const int n = params.n;
  const u64 n4 = static_cast<u64>(n) * n * n * n;

  OpCounter fast, slow;
  {
    const Quaternion m = sample_message(params, rng);
    EncryptOptions a, b;
    a.counter = &fast;
    b.counter = &slow;
    b.schoolbook = true;
    encrypt(kp.pub, m, rng, a);
    encrypt(kp.pub, m, rng, b);
  }
  const int big_n = 4 * n * n;
  const ntru::NtruParams np{big_n, params.p, params.q, params.d_phi};
  const ntru::KeyPair nk = ntru::keygen(np, rng);
  OpCounter ntru_count;
  ntru::encrypt(nk.pub, IntVector::Zero(big_n), rng, nullptr, &ntru_count);

  out << "params = " << to_header(params) << "\n";
  out << "bqtru_strassen_convolutions = " << fast.ring_mults << "\n";
  out << "bqtru_schoolbook_convolutions = " << slow.ring_mults << "\n";
  out << "convolution_ratio = " << slow.ring_mults << "/" << fast.ring_mults << " = "
      << fmt(static_cast<double>(slow.ring_mults) / fast.ring_mults, 6) << "\n";
  out << "bqtru_strassen_scalar_mults = " << fast.scalar_mults << " (7n^4 = " << 7 * n4 << ")\n";
  out << "bqtru_schoolbook_scalar_mults = " << slow.scalar_mults << " (16n^4 = " << 16 * n4 << ")\n";
  out << "ntru_degree = " << big_n << "\n";
  out << "ntru_scalar_mults = " << ntru_count.scalar_mults << " (16n^4 = " << 16 * n4 << ")\n";
  out << "ntru_vs_strassen_ratio = " << fmt(static_cast<double>(ntru_count.scalar_mults) / fast.scalar_mults, 6)
      << "\n";

  std::vector<double> t_fast, t_slow, t_ntru;
  EncryptOptions school;
  school.schoolbook = true;
  for (int t = 0; t < trials; ++t) {
    const Quaternion m = sample_message(params, rng);
    t_fast.push_back(time_us([&] { encrypt(kp.pub, m, rng); }));
    t_slow.push_back(time_us([&] { encrypt(kp.pub, m, rng, school); }));
    t_ntru.push_back(time_us([&] { ntru::encrypt(nk.pub, IntVector::Zero(big_n), rng); }));
  }
  out << "trials = " << trials << "\n";
  out << "median_us_bqtru_strassen = " << fmt(median(t_fast), 1) << "\n";
  out << "median_us_bqtru_schoolbook = " << fmt(median(t_slow), 1) << "\n";
  out << "median_us_ntru = " << fmt(median(t_ntru), 1) << "\n";
  out << "speedup_schoolbook_over_strassen = " << fmt(median(t_slow) / std::max(median(t_fast), 1e-9), 3) << "\n";
  out << "speedup_ntru_over_strassen = " << fmt(median(t_ntru) / std::max(median(t_fast), 1e-9), 3) << "\n";
  return 0;
}

// Monomial shifts of F up to sign, compared against the F block of a vector.
bool matches_private_key(const IntVector& f_block, const Quaternion& f) {
  const int n = f.n();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      IntVector mono = IntVector::Zero(n * n);
      mono(a * n + b) = 1;
      const RingElem x(n, 0, mono);
      const Quaternion shifted(conv_mul(f[0], x), conv_mul(f[1], x), conv_mul(f[2], x), conv_mul(f[3], x));
      const IntVector v = shifted.to_vector();
      if (f_block == v || f_block == -v) return true;
    }
  return false;
}

int cmd_attack(const ParamFlags& pf, const SeedFlag& sf, const std::string& target, const std::string& priv_path,
               u64 budget, std::ostream& out) {
  std::optional<PrivateKey> priv;
  PublicKey pub;
  if (!target.empty()) {
    pub = deserialize_public(read_or_fail(target));
    if (!priv_path.empty()) priv = deserialize_private(read_or_fail(priv_path));
  } else {
    Rng rng = sf.make();
    KeyPair kp = keygen(pf.resolve(), rng);
    pub = kp.pub;
    priv = kp.priv;
  }
  const Params& params = pub.params;
  const int n = params.n;
  const i64 q = params.q;
  const EvalDomain dom(n, q);
  const LatticeBasis m_bqtru = build_bqtru_lattice(pub.H, dom);
  const LatticeBasis m_exp = build_expanded_lattice(pub.H, dom);
  const double gh = expanded_gaussian_heuristic(n, q);
  out << "params = " << to_header(params) << "\n";
  if (n <= 3) out << "warning = NOT SECURE (testing only)\n";
  out << "bqtru_lattice_dimension = " << m_bqtru.dim() << "\n";
  out << "expanded_lattice_dimension = " << m_exp.dim() << "\n";
  out << "gaussian_heuristic = " << fmt(gh, 4) << "\n";
  if (priv) {
    out << "membership_identity = " << (verify_key_membership(*priv, pub) ? "verified" : "FAILED") << "\n";
    const MembershipWitness w = expanded_witness(priv->F, priv->G, priv->rho_gamma, pub.H, dom);
    out << "honest_euclidean_norm = " << fmt(std::sqrt(static_cast<double>(w.expected.squaredNorm())), 4) << "\n";
  }
  if (n > 3) {
    out << "reduction = skipped (dimension too large for a desk run)\n";
    return 0;
  }

  LllOptions opts;
  opts.max_swaps = budget;
  ReducedBasis<double> red;
  try {
    red = lll_reduce<double>(m_exp.rows, opts);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
    out << "reduction = budget exceeded after " << budget << " swaps\n";
    return kExitBudget;
  }
  int best = 0;
  for (int r = 1; r < red.dim(); ++r)
    if (red.rows.row(r).squaredNorm() < red.rows.row(best).squaredNorm()) best = r;
  const IntVector shortest = red.rows.row(best).transpose();
  const int s = 4 * n * n;
  const IntVector mapped = psi(shortest, n, q);
  out << "swaps = " << red.swaps << "\n";
  out << "shortest_euclidean_norm = " << fmt(std::sqrt(static_cast<double>(shortest.squaredNorm())), 4) << "\n";
  out << "shortest_hybrid_norm = "
      << fmt(hybrid_norm(mapped.head(s), mapped.segment(s, s), mapped.tail(s), q), 4) << "\n";
  if (priv) {
    bool recovered = false;
    for (int r = 0; r < red.dim() && !recovered; ++r)
      recovered = matches_private_key(red.rows.row(r).segment(s, s).transpose(), priv->F);
    out << "private_key_recovered = " << (recovered ? "yes" : "no") << "\n";
  } else {
    out << "private_key_recovered = unknown (no private key to compare)\n";
  }
  return 0;
}

int cmd_size(const ParamFlags& pf, std::ostream& out) {
  const Params params = pf.resolve();
  out << "params = " << to_header(params) << "\n";
  out << "public_key_bits = " << public_key_size_bits(params) << "\n";
  out << "public_key_bytes = " << (public_key_size_bits(params) + 7) / 8 << "\n";
  out << "message_capacity_bytes = " << message_capacity(params) << "\n";
  out << "ntru_167_128_public_key_bits = " << ntru::public_key_bits({167, 3, 128, 20}) << "\n";
  return 0;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RetriesExhausted:
      return kExitRetries;
    case ErrorKind::DecryptionFailure:
      return kExitDecryption;
    case ErrorKind::PayloadTooLarge:
      return kExitPayload;
    case ErrorKind::BudgetExceeded:
      return kExitBudget;
    default:
      return kExitIo;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"BQTRU toolkit"};
  app.require_subcommand(1);

  ParamFlags params;
  SeedFlag seed;
  std::string prefix, key, in, out_path, target, priv_path;
  bool lenient = false, as_json = false;
  int trials = 25;
  u64 budget = 2'000'000;

  auto* keygen_cmd = app.add_subcommand("keygen", "generate <prefix>.pub and <prefix>.priv");
  params.attach(keygen_cmd);
  seed.attach(keygen_cmd);
  keygen_cmd->add_option("--out", prefix, "output path prefix")->required();

  auto* enc = app.add_subcommand("encrypt", "encrypt a file");
  enc->add_option("--key", key, "public key file")->required();
  enc->add_option("--in", in, "payload file")->required();
  enc->add_option("--out", out_path, "ciphertext file")->required();
  seed.attach(enc);

  auto* dec = app.add_subcommand("decrypt", "decrypt a file");
  dec->add_option("--key", key, "private key file")->required();
  dec->add_option("--in", in, "ciphertext file")->required();
  dec->add_option("--out", out_path, "payload file")->required();
  dec->add_flag("--lenient", lenient, "skip the residual check");

  auto* ana = app.add_subcommand("analyze", "parameter report");
  params.attach(ana);
  ana->add_flag("--json", as_json, "machine-readable output");

  auto* bench = app.add_subcommand("bench", "operation counts and timings");
  params.attach(bench);
  seed.attach(bench);
  bench->add_option("--trials", trials, "timed repetitions")->check(CLI::PositiveNumber);

  auto* attack = app.add_subcommand("attack", "toy key-recovery lattice experiment");
  params.attach(attack);
  seed.attach(attack);
  attack->add_option("--target", target, "public key file (default: fresh key)");
  attack->add_option("--private", priv_path, "matching private key, to score recovery");
  attack->add_option("--budget", budget, "LLL swap budget");

  auto* size = app.add_subcommand("size", "key and message sizes");
  params.attach(size);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (params.name == "n3") params.name = "toy";
    if (*keygen_cmd) return cmd_keygen(params, seed, prefix, out);
    if (*enc) return cmd_encrypt(key, in, out_path, seed, out);
    if (*dec) return cmd_decrypt(key, in, out_path, lenient, out);
    if (*ana) return cmd_analyze(params, as_json, out);
    if (*bench) return cmd_bench(params, seed, trials, out);
    if (*attack) return cmd_attack(params, seed, target, priv_path, budget, out);
    if (*size) return cmd_size(params, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kExitIo;
}

}  // namespace bqtru
