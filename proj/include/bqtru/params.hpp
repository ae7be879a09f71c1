#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bqtru/types.hpp"

namespace bqtru {

/// Public system parameters. Weights are per-sign counts: a ternary element
/// with weight d has d coefficients equal to +1 and d equal to -1.
struct Params {
  int n = 0;
  i64 p = 0;
  i64 q = 0;
  int d_f = 0;
  int d_g = 0;
  int d_phi = 0;
  int d_m = 0;
  int max_T = 0;  // 0 means "use n"

  int ring_size() const { return n * n; }
  int quat_size() const { return 4 * n * n; }
  int t_cap() const { return max_T == 0 ? n : max_T; }

  /// Throws Error(InvalidParams) describing the first violated invariant.
  void validate() const;

  bool operator==(const Params&) const = default;
};

/// "toy", "moderate" or "highest". The toy set is for tests only.
std::optional<Params> named_params(std::string_view name);
std::vector<std::string> param_set_names();

/// Renders the header form used by key files: "n=7 p=3 q=113 df=7 dg=6 dphi=6".
std::string to_header(const Params& params);
Params params_from_header(std::string_view line);

}  // namespace bqtru
