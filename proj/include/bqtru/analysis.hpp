#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bqtru/params.hpp"
#include "bqtru/ring.hpp"
#include "bqtru/scheme.hpp"
#include "bqtru/types.hpp"

namespace bqtru {

/// Per-coefficient variance of V = pG∘Phi + F∘M:
/// 16 p^2 d_phi d_g / n^2 + 4 d_f (p^2 - 1) / 6.
double noise_variance(const Params& params);
double noise_std(const Params& params);

/// Standard normal CDF through erfc.
double normal_cdf(double z);

/// (2 Phi((q - 1) / 2 theta) - 1)^(4 n^2): every coefficient of V lands in
/// the decodable window. Equals 1 when theta is 0.
double success_probability(const Params& params);
double failure_probability(const Params& params);

struct Interval {
  double lo = 0;
  double hi = 1;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Wilson score interval; z = 1.96 gives 95%.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

struct MonteCarloResult {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double rate = 0;
  Interval wilson;
};

/// Round trips of uniform messages; a fresh key every keys_every trials.
MonteCarloResult monte_carlo_success_rate(const Params& params, std::size_t trials, Rng& rng,
                                          std::size_t keys_every = 500);

/// Sample variance of the coefficients of pG∘Phi + F∘M over `samples`
/// freshly drawn quaternion tuples.
double empirical_noise_variance(const Params& params, std::size_t samples, Rng& rng);

BigInt binomial(int n, int k);

/// Sum_{i=1}^{n} (q-1)^i C(n^2, i).
BigInt ideal_count(const Params& params);

/// Number of invertible scalar quaternions mod q, by enumeration of all q^4.
i64 invertible_scalar_quaternions(i64 q);

/// |A_q^*| = (count at one grid point)^(n^2). Enumerates, so tiny q only.
BigInt unit_group_order(const Params& params);

/// log2(|A*| C(n^2,d_g)^2 C(n^2-d_g,d_g)^2 ideal_count). |A*| defaults to 1.
double key_security_bits(const Params& params, const std::optional<BigInt>& units = std::nullopt);

/// log2(C(n^2,d_phi)^2 C(n^2-d_phi,d_phi)^2).
double message_security_bits(const Params& params);

/// 4 n^2 ceil(log2 q).
std::size_t public_key_size_bits(const Params& params);

struct ExpansionReport {
  int n = 0;
  double real_log_dimension = 0;  // 12n^2 + 4n^2 log2(3.4n^2 + 1)
  int ntru_dimension = 0;         // 8n^2
  double ratio = 0;
  double bound = 0;               // 2 + log2 n
  i64 q = 0;
  int built_dimension = 0;        // (4l + 12) n^2 with l = floor(log2 q)
};

ExpansionReport expansion_ratio(int n, i64 q);

/// Gaussian heuristic of the expanded lattice (det q^(4n^2)).
double expanded_gaussian_heuristic(int n, i64 q);

/// Poltyrev limit of Lambda_Q with |T| interpolant rows.
double lambda_q_poltyrev(int n, i64 q, int t_size);

/// x -> t^r, y -> t^s in Z[t]/(t^n - 1). Reduced mod f.modulus() when set.
IntVector fold_to_univariate(const RingElem& f, int r, int s);

struct ReportRow {
  std::string name;
  std::string value;
  std::string published;  // empty when there is nothing to compare with
};

std::vector<ReportRow> analysis_report(const Params& params, const std::string& set_name);

/// "name = value" per line, with "  [published: x]" appended where known.
std::string render_report(const std::vector<ReportRow>& rows);

}  // namespace bqtru
