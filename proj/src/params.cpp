#include "bqtru/params.hpp"

#include <numeric>
#include <sstream>

#include "bqtru/error.hpp"
#include "bqtru/modular.hpp"

namespace bqtru {

void Params::validate() const {
  auto fail = [](const std::string& why) { throw Error(ErrorKind::InvalidParams, why); };
  if (n < 2 || !is_prime(n)) fail("n must be prime");
  if (!is_prime(p)) fail("p must be prime");
  if (!is_prime(q)) fail("q must be prime");
  if (p == 2 || q == 2) fail("moduli must be odd");
  if (q <= p) fail("q must exceed p");
  if ((q - 1) % n != 0) fail("n must divide q - 1");
  if (std::gcd(p, q) != 1 || std::gcd(static_cast<i64>(n), q) != 1) fail("moduli must be coprime");
  const int half = (n * n) / 2;
  for (int d : {d_f, d_g, d_phi, d_m})
    if (d < 0 || d > half) fail("weights must lie in [0, n^2/2]");
  // f0 carries one extra +1 (see keygen), so it needs 2 d_f + 1 slots.
  if (2 * d_f + 1 > n * n) fail("d_f too large");
  if (max_T < 0 || max_T > n) fail("max_T must lie in [0, n]");
}

std::optional<Params> named_params(std::string_view name) {
  if (name == "toy") return Params{3, 3, 7, 1, 1, 1, 1, 3};
  if (name == "moderate") return Params{7, 3, 113, 7, 6, 6, 6, 7};
  if (name == "highest") return Params{11, 3, 199, 17, 17, 13, 13, 11};
  return std::nullopt;
}

std::vector<std::string> param_set_names() { return {"toy", "moderate", "highest"}; }

std::string to_header(const Params& params) {
  std::ostringstream out;
  out << "n=" << params.n << " p=" << params.p << " q=" << params.q << " df=" << params.d_f
      << " dg=" << params.d_g << " dphi=" << params.d_phi;
  return out.str();
}

Params params_from_header(std::string_view line) {
  Params params;
  std::istringstream in{std::string(line)};
  std::string token;
  int seen = 0;
  const char* keys[] = {"n=", "p=", "q=", "df=", "dg=", "dphi="};
  while (in >> token) {
    if (seen >= 6) throw Error(ErrorKind::MalformedInput, "unexpected token in parameter line");
    const std::string key = keys[seen];
    if (token.rfind(key, 0) != 0) throw Error(ErrorKind::MalformedInput, "expected " + key);
    const std::string value = token.substr(key.size());
    if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos || value.size() > 9)
      throw Error(ErrorKind::MalformedInput, "bad value for " + key);
    const i64 v = std::stoll(value);
    switch (seen) {
      case 0: params.n = static_cast<int>(v); break;
      case 1: params.p = v; break;
      case 2: params.q = v; break;
      case 3: params.d_f = static_cast<int>(v); break;
      case 4: params.d_g = static_cast<int>(v); break;
      case 5: params.d_phi = static_cast<int>(v); break;
    }
    ++seen;
  }
  if (seen != 6) throw Error(ErrorKind::MalformedInput, "incomplete parameter line");
  params.d_m = params.d_phi;
  params.max_T = params.n;
  params.validate();
  return params;
}

}  // namespace bqtru
