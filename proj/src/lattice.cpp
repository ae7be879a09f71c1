#include "bqtru/lattice.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bqtru/error.hpp"
#include "bqtru/modular.hpp"

namespace bqtru {

std::string export_basis(const LatticeBasis& basis) {
  std::ostringstream out;
  out << "dim " << basis.dim() << " label " << (basis.label.empty() ? "unnamed" : basis.label) << "\n";
  for (int r = 0; r < basis.rows.rows(); ++r) {
    for (int c = 0; c < basis.rows.cols(); ++c) out << (c ? " " : "") << basis.rows(r, c);
    out << "\n";
  }
  return out.str();
}

LatticeBasis import_basis(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string word, label_word;
  int dim = 0;
  LatticeBasis basis;
  if (!(in >> word) || word != "dim" || !(in >> dim) || dim <= 0 || !(in >> label_word) ||
      label_word != "label" || !(in >> basis.label))
    throw Error(ErrorKind::MalformedInput, "expected 'dim N label L'");
  basis.rows.resize(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      if (!(in >> basis.rows(r, c))) throw Error(ErrorKind::MalformedInput, "truncated basis");
  if (in >> word) throw Error(ErrorKind::MalformedInput, "trailing data after basis");
  return basis;
}

namespace {

template <typename Real>
Real int_dot(const IntMatrix& b, int i, int j) {
  __int128 acc = 0;
  const i64* x = b.row(i).data();
  const i64* y = b.row(j).data();
  for (int c = 0; c < b.cols(); ++c) acc += static_cast<__int128>(x[c]) * y[c];
  return static_cast<Real>(acc);
}

// Row k of mu and |b*_k|^2 from exact Gram entries; rows < k must be current.
template <typename Real>
void gso_row(const IntMatrix& b, Matrix<Real>& mu, Vector<Real>& norms, int k) {
  for (int j = 0; j < k; ++j) {
    Real r = int_dot<Real>(b, k, j);
    for (int i = 0; i < j; ++i) r -= mu(j, i) * mu(k, i) * norms(i);
    mu(k, j) = r / norms(j);
  }
  Real s = int_dot<Real>(b, k, k);
  for (int j = 0; j < k; ++j) s -= mu(k, j) * mu(k, j) * norms(j);
  mu(k, k) = 1;
  norms(k) = s;
}

bool full_row_rank(const IntMatrix& b) {
  if (b.rows() > b.cols()) return false;
  for (i64 prime : {2147483647LL, 1000000007LL})
    if (rank_mod_prime(b, prime) == b.rows()) return true;
  return false;
}

template <typename Real>
i64 round_to_int(Real x) {
  return static_cast<i64>(std::llround(static_cast<long double>(x)));
}

}  // namespace

template <typename Real>
Gso<Real> gram_schmidt(const IntMatrix& rows) {
  const int m = static_cast<int>(rows.rows());
  Gso<Real> g;
  g.mu = Matrix<Real>::Zero(m, m);
  g.norms = Vector<Real>::Zero(m);
  g.bstar = Matrix<Real>::Zero(m, rows.cols());
  for (int k = 0; k < m; ++k) gso_row(rows, g.mu, g.norms, k);
  for (int k = 0; k < m; ++k) {
    g.bstar.row(k) = rows.row(k).template cast<Real>();
    for (int j = 0; j < k; ++j) g.bstar.row(k) -= g.mu(k, j) * g.bstar.row(j);
  }
  return g;
}

template <typename Real>
ReducedBasis<Real> as_reduced(const IntMatrix& basis, double delta) {
  ReducedBasis<Real> out;
  out.rows = basis;
  out.gso = gram_schmidt<Real>(basis);
  out.delta = delta;
  return out;
}

template <typename Real>
ReducedBasis<Real> lll_reduce(const IntMatrix& basis, const LllOptions& options) {
  if (!(options.delta > 0.25 && options.delta < 1.0))
    throw Error(ErrorKind::InvalidParams, "delta must lie in (1/4, 1)");
  if (!full_row_rank(basis)) throw Error(ErrorKind::RankDeficient, "basis rows are dependent");
  const int m = static_cast<int>(basis.rows());
  IntMatrix b = basis;
  Matrix<Real> mu = Matrix<Real>::Zero(m, m);
  Vector<Real> norms = Vector<Real>::Zero(m);
  const Real delta = static_cast<Real>(options.delta);
  u64 swaps = 0;

  if (m > 0) gso_row(b, mu, norms, 0);
  int valid = 0;  // rows 0..valid have current GSO data
  int k = 1;
  while (k < m) {
    for (int r = valid + 1; r <= k; ++r) gso_row(b, mu, norms, r);
    valid = k;

    for (int pass = 0;; ++pass) {
      bool changed = false;
      for (int j = k - 1; j >= 0; --j) {
        // A slack above 1/2 stops rounding ties from flipping mu between +-1/2.
        if (std::abs(mu(k, j)) <= Real(0.5 + 1e-9)) continue;
        const i64 r = round_to_int(mu(k, j));
        b.row(k) -= r * b.row(j);
        for (int i = 0; i < j; ++i) mu(k, i) -= static_cast<Real>(r) * mu(j, i);
        mu(k, j) -= static_cast<Real>(r);
        changed = true;
      }
      if (!changed) break;
      gso_row(b, mu, norms, k);
      if (pass > 200) throw Error(ErrorKind::BudgetExceeded, "size reduction does not settle");
    }
    if (!(norms(k) > 0)) throw Error(ErrorKind::RankDeficient, "vanishing Gram-Schmidt norm");

    const Real lhs = norms(k);
    const Real rhs = (delta - mu(k, k - 1) * mu(k, k - 1)) * norms(k - 1);
    if (lhs >= rhs) {
      ++k;
      continue;
    }
    b.row(k).swap(b.row(k - 1));
    if (++swaps > options.max_swaps) throw Error(ErrorKind::BudgetExceeded, "LLL swap budget exhausted");
    valid = k - 2;
    if (valid < 0) {
      gso_row(b, mu, norms, 0);
      valid = 0;
    }
    k = std::max(k - 1, 1);
  }

  ReducedBasis<Real> out = as_reduced<Real>(b, options.delta);
  out.swaps = swaps;
  return out;
}

template <typename Real>
bool is_lll_reduced(const IntMatrix& rows, double delta, double eps) {
  const Gso<Real> g = gram_schmidt<Real>(rows);
  const int m = static_cast<int>(rows.rows());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(static_cast<double>(g.mu(i, j))) > 0.5 + eps) return false;
  for (int k = 1; k < m; ++k) {
    const double lhs = static_cast<double>(g.norms(k));
    const double rhs = (delta - static_cast<double>(g.mu(k, k - 1) * g.mu(k, k - 1))) * static_cast<double>(g.norms(k - 1));
    if (lhs < rhs * (1 - eps)) return false;
  }
  return true;
}

template <typename Real>
Real squared_distance(const IntVector& v, const Vector<Real>& target) {
  Real s = 0;
  for (int i = 0; i < v.size(); ++i) {
    const Real d = static_cast<Real>(v(i)) - target(i);
    s += d * d;
  }
  return s;
}

namespace {

template <typename Real>
Vector<Real> gs_coordinates(const ReducedBasis<Real>& basis, const Vector<Real>& target) {
  if (target.size() != basis.ambient())
    throw Error(ErrorKind::DimensionMismatch, "target length differs from lattice ambient dimension");
  Vector<Real> y = basis.gso.bstar * target;
  for (int i = 0; i < y.size(); ++i) y(i) /= basis.gso.norms(i);
  return y;
}

IntVector combine(const IntMatrix& rows, const std::vector<i64>& u) {
  IntVector v = IntVector::Zero(rows.cols());
  for (int i = 0; i < rows.rows(); ++i)
    if (u[i] != 0) v += u[i] * rows.row(i).transpose();
  return v;
}

}  // namespace

template <typename Real>
IntVector babai_nearest_plane(const ReducedBasis<Real>& basis, const Vector<Real>& target) {
  const int m = basis.dim();
  const Vector<Real> y = gs_coordinates(basis, target);
  std::vector<i64> u(m, 0);
  for (int i = m - 1; i >= 0; --i) {
    Real c = y(i);
    for (int j = i + 1; j < m; ++j) c -= static_cast<Real>(u[j]) * basis.gso.mu(j, i);
    u[i] = round_to_int(c);
  }
  return combine(basis.rows, u);
}

template <typename Real>
IntVector sphere_decode(const ReducedBasis<Real>& basis, const Vector<Real>& target, Real radius) {
  if (!(radius > 0)) throw Error(ErrorKind::InvalidParams, "radius must be positive");
  const int m = basis.dim();
  const Vector<Real> y = gs_coordinates(basis, target);
  const Matrix<Real>& mu = basis.gso.mu;
  const Vector<Real>& norms = basis.gso.norms;

  // Component of the target orthogonal to the lattice span (zero when square).
  Real base = squared_distance<Real>(IntVector::Zero(basis.ambient()), target);
  for (int i = 0; i < m; ++i) base -= y(i) * y(i) * norms(i);
  if (base < 0) base = 0;

  Real bound = radius * radius;
  auto slack = [](Real r2) { return r2 + Real(1e-9) * (r2 + 1); };

  std::vector<i64> u(m, 0), best;
  std::vector<i64> dx(m, 0), ddx(m, 0);
  std::vector<Real> center(m, 0), partial(m + 1, 0);
  partial[m] = base;
  Real best_exact = 0;
  bool found = false;

  if (m == 0) return IntVector::Zero(basis.ambient());

  auto enter = [&](int i) {
    Real c = y(i);
    for (int j = i + 1; j < m; ++j) c -= static_cast<Real>(u[j]) * mu(j, i);
    center[i] = c;
    u[i] = round_to_int(c);
    dx[i] = ddx[i] = (c >= static_cast<Real>(u[i])) ? 1 : -1;
  };
  auto advance = [&](int i) {
    u[i] += dx[i];
    ddx[i] = -ddx[i];
    dx[i] = ddx[i] - dx[i];
  };

  int i = m - 1;
  enter(i);
  while (true) {
    const Real diff = center[i] - static_cast<Real>(u[i]);
    const Real level = partial[i + 1] + diff * diff * norms(i);
    if (level <= slack(bound)) {
      if (i == 0) {
        const IntVector v = combine(basis.rows, u);
        const Real exact = squared_distance(v, target);
        if (!found || exact < best_exact) {
          found = true;
          best_exact = exact;
          best = u;
          bound = std::min(bound, exact);
        }
        advance(0);
      } else {
        partial[i] = level;
        --i;
        enter(i);
      }
    } else {
      ++i;
      if (i == m) break;
      advance(i);
    }
  }
  if (!found) throw Error(ErrorKind::NoPointInRadius, "no lattice point inside the search radius");
  return combine(basis.rows, best);
}

template <typename Real>
IntVector closest_vector(const ReducedBasis<Real>& basis, const Vector<Real>& target, Real fallback_radius) {
  const IntVector seed = babai_nearest_plane(basis, target);
  const Real seed_dist = squared_distance(seed, target);
  if (seed_dist == 0) return seed;
  Real radius = fallback_radius;
  while (radius > 0 && radius * radius < seed_dist) {
    try {
      return sphere_decode(basis, target, radius);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoPointInRadius) throw;
      radius *= 2;
    }
  }
  return sphere_decode(basis, target, std::sqrt(seed_dist));
}

#define BQTRU_INSTANTIATE(Real)                                                                        \
  template Gso<Real> gram_schmidt<Real>(const IntMatrix&);                                             \
  template ReducedBasis<Real> as_reduced<Real>(const IntMatrix&, double);                              \
  template ReducedBasis<Real> lll_reduce<Real>(const IntMatrix&, const LllOptions&);                   \
  template bool is_lll_reduced<Real>(const IntMatrix&, double, double);                                \
  template IntVector babai_nearest_plane<Real>(const ReducedBasis<Real>&, const Vector<Real>&);        \
  template IntVector sphere_decode<Real>(const ReducedBasis<Real>&, const Vector<Real>&, Real);         \
  template IntVector closest_vector<Real>(const ReducedBasis<Real>&, const Vector<Real>&, Real);       \
  template Real squared_distance<Real>(const IntVector&, const Vector<Real>&);

BQTRU_INSTANTIATE(double)
BQTRU_INSTANTIATE(long double)
#undef BQTRU_INSTANTIATE

double hadamard_ratio(const IntMatrix& rows) {
  const BigInt det = abs(determinant(rows));
  if (det == 0) return 0;
  double log_ratio = log_big(det);
  for (int i = 0; i < rows.rows(); ++i)
    log_ratio -= 0.5 * std::log(static_cast<double>(rows.row(i).template cast<long double>().squaredNorm()));
  return std::exp(log_ratio / static_cast<double>(rows.rows()));
}

double gaussian_heuristic(int dim, const BigInt& det) {
  if (dim < 1 || det <= 0) throw Error(ErrorKind::InvalidParams, "need dim >= 1 and det > 0");
  const double two_pi_e = 2 * std::numbers::pi * std::numbers::e;
  return std::sqrt(dim / two_pi_e) * std::exp(log_big(det) / dim);
}

double poltyrev_sigma_max(const BigInt& vol, int dim) {
  if (dim < 1 || vol <= 0) throw Error(ErrorKind::InvalidParams, "need dim >= 1 and vol > 0");
  const double two_pi_e = 2 * std::numbers::pi * std::numbers::e;
  return std::exp(2 * log_big(vol) / dim) / two_pi_e;
}

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

void sub_row(std::vector<BigInt>& target, const std::vector<BigInt>& src, const BigInt& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < target.size(); ++c) target[c] -= k * src[c];
}

}  // namespace

BigMatrix hermite_normal_form(BigMatrix a) {
  if (a.empty()) return a;
  const std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    while (true) {
      std::size_t pivot = a.size();
      for (std::size_t i = r; i < a.size(); ++i)
        if (a[i][c] != 0 && (pivot == a.size() || abs(a[i][c]) < abs(a[pivot][c]))) pivot = i;
      if (pivot == a.size()) break;
      std::swap(a[r], a[pivot]);
      bool clean = true;
      for (std::size_t i = r + 1; i < a.size(); ++i) {
        if (a[i][c] == 0) continue;
        sub_row(a[i], a[r], floor_div(a[i][c], a[r][c]));
        if (a[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (r >= a.size() || a[r][c] == 0) continue;
    if (a[r][c] < 0)
      for (auto& v : a[r]) v = -v;
    for (std::size_t i = 0; i < r; ++i) sub_row(a[i], a[r], floor_div(a[i][c], a[r][c]));
    ++r;
  }
  a.resize(r);
  return a;
}

BigMatrix to_big(const IntMatrix& m) {
  BigMatrix out(m.rows(), std::vector<BigInt>(m.cols()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  return out;
}

IntMatrix to_int(const BigMatrix& m) {
  IntMatrix out(m.size(), m.empty() ? 0 : m[0].size());
  for (int r = 0; r < out.rows(); ++r)
    for (int c = 0; c < out.cols(); ++c) out(r, c) = static_cast<i64>(m[r][c]);
  return out;
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
  const int n = static_cast<int>(m.rows());
  if (n == 0) return 1;
  BigMatrix a = to_big(m);
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n && swap_row < 0; ++i)
        if (a[i][k] != 0) swap_row = i;
      if (swap_row < 0) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

std::optional<IntVector> solve_triangular_integer(const IntMatrix& m, const IntVector& v) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n || v.size() != n) throw Error(ErrorKind::DimensionMismatch, "square system expected");
  bool lower = true, upper = true;
  for (int i = 0; i < n && (lower || upper); ++i)
    for (int j = 0; j < n; ++j) {
      if (j > i && m(i, j) != 0) lower = false;
      if (j < i && m(i, j) != 0) upper = false;
    }
  if (!lower && !upper) throw Error(ErrorKind::DimensionMismatch, "matrix is not triangular");
  for (int i = 0; i < n; ++i)
    if (m(i, i) == 0) throw Error(ErrorKind::RankDeficient, "zero on the diagonal");

  // v_j = sum_i x_i m(i, j)
  IntVector x = IntVector::Zero(n);
  auto solve_column = [&](int j, int from, int to) -> bool {
    __int128 acc = v(j);
    for (int i = from; i < to; ++i)
      if (x(i) != 0 && m(i, j) != 0) acc -= static_cast<__int128>(x(i)) * m(i, j);
    if (acc % m(j, j) != 0) return false;
    x(j) = static_cast<i64>(acc / m(j, j));
    return true;
  };
  if (lower) {
    for (int j = n - 1; j >= 0; --j)
      if (!solve_column(j, j + 1, n)) return std::nullopt;
  } else {
    for (int j = 0; j < n; ++j)
      if (!solve_column(j, 0, j)) return std::nullopt;
  }
  return x;
}

}  // namespace bqtru
