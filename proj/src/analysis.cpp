#include "bqtru/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "bqtru/error.hpp"
#include "bqtru/ideal.hpp"
#include "bqtru/lattice.hpp"
#include "bqtru/modular.hpp"
#include "bqtru/textio.hpp"

namespace bqtru {

double noise_variance(const Params& params) {
  const double p = static_cast<double>(params.p);
  const double n2 = static_cast<double>(params.n) * params.n;
  return 16.0 * p * p * params.d_phi * params.d_g / n2 + 4.0 * params.d_f * (p * p - 1.0) / 6.0;
}

double noise_std(const Params& params) { return std::sqrt(noise_variance(params)); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double success_probability(const Params& params) {
  const double theta = noise_std(params);
  if (theta == 0) return 1.0;
  const double z = (static_cast<double>(params.q) - 1.0) / (2.0 * theta);
  // 2 Phi(z) - 1 = 1 - erfc(z / sqrt 2); log1p keeps the tail digits.
  const double tail = std::erfc(z / std::sqrt(2.0));
  return std::exp(params.quat_size() * std::log1p(-tail));
}

double failure_probability(const Params& params) {
  const double theta = noise_std(params);
  if (theta == 0) return 0.0;
  const double z = (static_cast<double>(params.q) - 1.0) / (2.0 * theta);
  const double tail = std::erfc(z / std::sqrt(2.0));
  return -std::expm1(params.quat_size() * std::log1p(-tail));
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double phat = successes / n;
  const double z2 = z * z;
  const double centre = (phat + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n));
  Interval out{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  if (successes == 0) out.lo = 0;
  if (successes == trials) out.hi = 1;
  return out;
}

MonteCarloResult monte_carlo_success_rate(const Params& params, std::size_t trials, Rng& rng,
                                          std::size_t keys_every) {
  MonteCarloResult out;
  out.trials = trials;
  KeyPair kp;
  for (std::size_t t = 0; t < trials; ++t) {
    if (t % std::max<std::size_t>(keys_every, 1) == 0) kp = keygen(params, rng);
    const Quaternion m = sample_message(params, rng);
    const Ciphertext ct = encrypt(kp.pub, m, rng);
    if (decrypt(kp.priv, ct) == m) ++out.successes;
  }
  out.rate = trials ? static_cast<double>(out.successes) / trials : 0.0;
  out.wilson = wilson_interval(out.successes, trials);
  return out;
}

double empirical_noise_variance(const Params& params, std::size_t samples, Rng& rng) {
  double sum = 0, sum_sq = 0;
  std::size_t count = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Quaternion g = sample_ternary_quat(params.n, params.d_g, rng);
    const Quaternion f = sample_private_F(params, rng);
    const Quaternion phi = sample_ternary_quat(params.n, params.d_phi, rng);
    const Quaternion m = sample_message(params, rng);
    const Quaternion v = quat_mul_strassen(g, phi) * params.p + quat_mul_strassen(f, m);
    for (auto c : v.to_vector()) {
      sum += static_cast<double>(c);
      sum_sq += static_cast<double>(c) * c;
      ++count;
    }
  }
  if (count < 2) return 0;
  const double mean = sum / count;
  return (sum_sq - count * mean * mean) / (count - 1);
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt ideal_count(const Params& params) {
  const int n2 = params.ring_size();
  BigInt total = 0;
  BigInt power = 1;
  for (int i = 1; i <= params.n; ++i) {
    power *= params.q - 1;
    total += power * binomial(n2, i);
  }
  return total;
}

i64 invertible_scalar_quaternions(i64 q) {
  if (q > 64) throw Error(ErrorKind::InvalidParams, "enumeration is limited to q <= 64");
  i64 count = 0;
  for (i64 a = 0; a < q; ++a)
    for (i64 b = 0; b < q; ++b)
      for (i64 c = 0; c < q; ++c)
        for (i64 d = 0; d < q; ++d)
          if (inv_mod(sq_norm({a, b, c, d}, q), q)) ++count;
  return count;
}

BigInt unit_group_order(const Params& params) {
  return boost::multiprecision::pow(BigInt(invertible_scalar_quaternions(params.q)), params.ring_size());
}

double key_security_bits(const Params& params, const std::optional<BigInt>& units) {
  const int n2 = params.ring_size();
  const BigInt a = binomial(n2, params.d_g);
  const BigInt b = binomial(n2 - params.d_g, params.d_g);
  BigInt total = a * a * b * b * ideal_count(params);
  if (units) total *= *units;
  return log2_big(total);
}

double message_security_bits(const Params& params) {
  const int n2 = params.ring_size();
  const BigInt a = binomial(n2, params.d_phi);
  const BigInt b = binomial(n2 - params.d_phi, params.d_phi);
  return log2_big(a * a * b * b);
}

std::size_t public_key_size_bits(const Params& params) {
  return static_cast<std::size_t>(params.quat_size()) * ceil_log2(params.q);
}

ExpansionReport expansion_ratio(int n, i64 q) {
  ExpansionReport r;
  const double n2 = static_cast<double>(n) * n;
  r.n = n;
  r.q = q;
  r.real_log_dimension = 12 * n2 + 4 * n2 * std::log2(3.4 * n2 + 1);
  r.ntru_dimension = 8 * n * n;
  r.ratio = r.real_log_dimension / r.ntru_dimension;
  r.bound = 2 + std::log2(static_cast<double>(n));
  r.built_dimension = (4 * expansion_bits(q) + 12) * n * n;
  return r;
}

double expanded_gaussian_heuristic(int n, i64 q) {
  const int dim = (4 * expansion_bits(q) + 12) * n * n;
  return gaussian_heuristic(dim, boost::multiprecision::pow(BigInt(q), 4 * n * n));
}

double lambda_q_poltyrev(int n, i64 q, int t_size) {
  return poltyrev_sigma_max(boost::multiprecision::pow(BigInt(q), n * n - t_size), n * n);
}

IntVector fold_to_univariate(const RingElem& f, int r, int s) {
  const int n = f.n();
  if (r < 0 || r >= n || s < 0 || s >= n) throw Error(ErrorKind::InvalidParams, "fold exponents must lie in [0, n)");
  IntVector out = IntVector::Zero(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out((r * a + s * b) % n) += f.coeffs()(a * n + b);
  if (f.modulus() > 0)
    for (auto& c : out) c = mod(c, f.modulus());
  return out;
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct PublishedCells {
  const char* var = "";
  const char* success = "";
  const char* key_bits = "";
  const char* msg_bits = "";
  const char* pub_bits = "";
  const char* expanded_dim = "";
};

PublishedCells published_cells(const std::string& set_name) {
  if (set_name == "moderate") return {"", "0.9985784846", ">166", "92", "1372", "2036"};
  if (set_name == "highest") return {"263", "0.9999995349", ">396", "212", "3872", ""};
  return {};
}

}  // namespace

std::vector<ReportRow> analysis_report(const Params& params, const std::string& set_name) {
  const PublishedCells published = published_cells(set_name);
  const ExpansionReport ex = expansion_ratio(params.n, params.q);
  std::vector<ReportRow> rows;
  rows.push_back({"params", to_header(params), ""});
  if (set_name == "toy") rows.push_back({"warning", "NOT SECURE (testing only)", ""});
  rows.push_back({"noise_variance", fixed(noise_variance(params), 4), published.var});
  rows.push_back({"noise_std", fixed(noise_std(params), 4), ""});
  rows.push_back({"success_probability", fixed(success_probability(params), 10), published.success});
  rows.push_back({"failure_probability", fixed(failure_probability(params), 10), ""});
  rows.push_back({"ideal_count_log2", fixed(log2_big(ideal_count(params)), 4), ""});
  rows.push_back({"key_security_bits", fixed(key_security_bits(params), 4), published.key_bits});
  rows.push_back({"message_security_bits", fixed(message_security_bits(params), 4), published.msg_bits});
  rows.push_back({"message_security_floor", std::to_string(static_cast<long>(std::floor(message_security_bits(params)))),
                  published.msg_bits});
  rows.push_back({"public_key_bits", std::to_string(public_key_size_bits(params)), published.pub_bits});
  rows.push_back({"message_capacity_bytes", std::to_string(message_capacity(params)), ""});
  rows.push_back({"expanded_dimension_real_log", fixed(ex.real_log_dimension, 2), published.expanded_dim});
  rows.push_back({"ntru_comparable_dimension", std::to_string(ex.ntru_dimension), set_name == "moderate" ? "392" : ""});
  rows.push_back({"expansion_ratio", fixed(ex.ratio, 4), ""});
  rows.push_back({"expansion_ratio_bound", fixed(ex.bound, 4), ""});
  rows.push_back({"expanded_dimension_built", std::to_string(ex.built_dimension), ""});
  rows.push_back({"bqtru_lattice_dimension", std::to_string(12 * params.ring_size()), ""});
  rows.push_back({"expanded_gaussian_heuristic", fixed(expanded_gaussian_heuristic(params.n, params.q), 4), ""});
  rows.push_back({"poltyrev_sigma2_max", fixed(lambda_q_poltyrev(params.n, params.q, params.t_cap()), 4),
                  set_name == "highest" ? ">885" : ""});
  return rows;
}

std::string render_report(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  for (const auto& row : rows) {
    out << row.name << " = " << row.value;
    if (!row.published.empty()) out << "  [published: " << row.published << "]";
    out << '\n';
  }
  return out.str();
}

}  // namespace bqtru
