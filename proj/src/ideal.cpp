#include "bqtru/ideal.hpp"

#include <algorithm>
#include <cmath>

#include "bqtru/error.hpp"
#include "bqtru/modular.hpp"

namespace bqtru {

std::vector<int> derive_T(const Quaternion& g, const EvalDomain& dom) {
  const Quaternion gq = g.reduce(dom.q());
  const EvalVector values = rho(gq, dom);
  std::vector<int> t;
  for (int e = 0; e < dom.size(); ++e)
    if (sq_is_zero(values[e])) t.push_back(e);
  return t;
}

RingElem build_sigma(const std::vector<int>& t, const std::vector<i64>& weights, const EvalDomain& dom) {
  if (t.size() != weights.size()) throw Error(ErrorKind::DimensionMismatch, "one weight per point of T");
  std::vector<i64> values(dom.size(), 0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const i64 w = mod(weights[i], dom.q());
    if (w == 0) throw Error(ErrorKind::InvalidWeight, "weights must be nonzero mod q");
    values.at(t[i]) = w;
  }
  return interpolate(dom, values);
}

IdealSpec make_ideal(std::vector<int> t, std::vector<i64> weights, const EvalDomain& dom) {
  IdealSpec spec;
  spec.sigma = build_sigma(t, weights, dom);
  spec.T = std::move(t);
  spec.weights = std::move(weights);
  return spec;
}

LatticeBasis build_D_prime(const std::vector<int>& t, const EvalDomain& dom) {
  const int size = dom.size();
  const i64 q = dom.q();
  IntMatrix l(t.size(), size);
  for (std::size_t i = 0; i < t.size(); ++i) l.row(i) = dom.lagrange_matrix().row(t[i]);

  // Reduced row echelon form over Z_q.
  std::vector<int> pivot_of_column(size, -1);
  int rank = 0;
  for (int c = 0; c < size && rank < l.rows(); ++c) {
    int pivot = -1;
    for (int r = rank; r < l.rows(); ++r)
      if (mod(l(r, c), q) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    l.row(pivot).swap(l.row(rank));
    const i64 inv = *inv_mod(mod(l(rank, c), q), q);
    for (int j = 0; j < size; ++j) l(rank, j) = mul_mod(l(rank, j), inv, q);
    for (int r = 0; r < l.rows(); ++r) {
      if (r == rank || l(r, c) == 0) continue;
      const i64 factor = l(r, c);
      for (int j = 0; j < size; ++j) l(r, j) = mod(l(r, j) - mul_mod(factor, l(rank, j), q), q);
    }
    pivot_of_column[c] = rank++;
  }
  if (rank != static_cast<int>(t.size())) throw Error(ErrorKind::RankDeficient, "interpolants are dependent");

  LatticeBasis basis;
  basis.label = "D_prime";
  basis.rows = IntMatrix::Zero(size, size);
  for (int c = 0; c < size; ++c) {
    if (pivot_of_column[c] >= 0)
      basis.rows.row(c) = l.row(pivot_of_column[c]);
    else
      basis.rows(c, c) = q;
  }
  return basis;
}

LatticeBasis build_private_lattice(const LatticeBasis& d_prime) {
  const int s = d_prime.dim();
  LatticeBasis out;
  out.label = "private";
  out.rows = IntMatrix::Zero(4 * s, 4 * s);
  for (int k = 0; k < 4; ++k) out.rows.block(k * s, k * s, s, s) = d_prime.rows;
  return out;
}

IntMatrix quat_product_matrix(const Quaternion& h) {
  const int s = h.n() * h.n();
  IntMatrix m(4 * s, 4 * s);
  std::array<IntMatrix, 4> blocks;
  for (int k = 0; k < 4; ++k) blocks[k] = multiplication_matrix(h[k]);
  for (int i = 0; i < 4; ++i)
    for (int o = 0; o < 4; ++o) {
      const ProductTerm& term = product_term(i, o);
      m.block(i * s, o * s, s, s) = term.sign * blocks[term.h];
    }
  return m;
}

IntMatrix lagrange_block(const EvalDomain& dom) {
  const int s = dom.size();
  IntMatrix m = IntMatrix::Zero(4 * s, 4 * s);
  for (int k = 0; k < 4; ++k) m.block(k * s, k * s, s, s) = dom.lagrange_matrix();
  return m;
}

LatticeBasis build_bqtru_lattice(const Quaternion& h, const EvalDomain& dom) {
  const int s = 4 * dom.size();
  const Quaternion hq = h.reduce(dom.q());
  LatticeBasis out;
  out.label = "bqtru";
  out.rows = IntMatrix::Zero(3 * s, 3 * s);
  out.rows.block(0, 0, s, s).diagonal().setConstant(dom.q());
  out.rows.block(s, 0, s, s) = quat_product_matrix(hq);
  out.rows.block(s, s, s, s).diagonal().setOnes();
  out.rows.block(2 * s, 0, s, s) = lagrange_block(dom);
  out.rows.block(2 * s, 2 * s, s, s).diagonal().setOnes();
  return out;
}

int expansion_bits(i64 q) {
  int l = 0;
  while ((i64{1} << (l + 1)) <= q) ++l;
  return l;
}

LatticeBasis build_expanded_lattice(const Quaternion& h, const EvalDomain& dom) {
  const int grid = dom.size();
  const int s = 4 * grid;
  const int digits = expansion_bits(dom.q()) + 1;
  const int third = s * digits;
  const Quaternion hq = h.reduce(dom.q());
  LatticeBasis out;
  out.label = "expanded";
  out.rows = IntMatrix::Zero(2 * s + third, 2 * s + third);
  out.rows.block(0, 0, s, s).diagonal().setConstant(dom.q());
  out.rows.block(s, 0, s, s) = quat_product_matrix(hq);
  out.rows.block(s, s, s, s).diagonal().setOnes();
  const IntMatrix& lag = dom.lagrange_matrix();
  for (int c = 0; c < 4; ++c)
    for (int k = 0; k < grid; ++k)
      for (int i = 0; i < digits; ++i) {
        const int row = 2 * s + (c * grid + k) * digits + i;
        out.rows.block(row, c * grid, 1, grid) = lag.row(k) * (i64{1} << i);
      }
  out.rows.block(2 * s, 2 * s, third, third).diagonal().setOnes();
  return out;
}

IntVector flatten(const EvalVector& values) {
  const int grid = static_cast<int>(values.size());
  IntVector v(4 * grid);
  for (int c = 0; c < 4; ++c)
    for (int k = 0; k < grid; ++k) v(c * grid + k) = values[k][c];
  return v;
}

IntVector expand_bits(const IntVector& values, i64 q) {
  const int digits = expansion_bits(q) + 1;
  IntVector out(values.size() * digits);
  for (int k = 0; k < values.size(); ++k) {
    const i64 v = values(k);
    if (v < 0 || v >= q) throw Error(ErrorKind::DimensionMismatch, "entries must lie in [0, q)");
    for (int i = 0; i < digits; ++i) out(k * digits + i) = (v >> i) & 1;
  }
  return out;
}

IntVector psi(const IntVector& expanded, int n, i64 q) {
  const int s = 4 * n * n;
  const int digits = expansion_bits(q) + 1;
  if (expanded.size() != 2 * s + s * digits)
    throw Error(ErrorKind::DimensionMismatch, "not an expanded-lattice vector");
  IntVector out(3 * s);
  out.head(2 * s) = expanded.head(2 * s);
  for (int k = 0; k < s; ++k) {
    i64 acc = 0;
    for (int i = 0; i < digits; ++i) acc += expanded(2 * s + k * digits + i) * (i64{1} << i);
    out(2 * s + k) = acc;
  }
  return out;
}

double hybrid_norm(const IntVector& g_part, const IntVector& f_part, const IntVector& rho_part, i64 q) {
  const double euclid = std::sqrt(static_cast<double>(g_part.squaredNorm() + f_part.squaredNorm()));
  int hamming = 0;
  for (auto v : rho_part)
    if (mod(v, q) != 0) ++hamming;
  return euclid + hamming;
}

IntVector compute_U(const Quaternion& f, const Quaternion& g, const IntVector& y, const Quaternion& h,
                    const EvalDomain& dom) {
  const i64 q = dom.q();
  const IntVector fh = quat_mul_schoolbook(f.to_integer(), h.reduce(q).to_integer()).to_vector();
  const IntVector yd = (y.transpose() * lagrange_block(dom)).transpose();
  const IntVector num = fh + yd - g.to_integer().to_vector();
  IntVector u(num.size());
  for (int i = 0; i < num.size(); ++i) {
    if (num(i) % q != 0) throw Error(ErrorKind::NonIntegralU, "F ∘ H - G - gamma is not divisible by q");
    u(i) = num(i) / q;
  }
  return u;
}

namespace {

MembershipWitness assemble(const Quaternion& f, const Quaternion& g, const IntVector& u, const IntVector& third) {
  const IntVector fv = f.to_integer().to_vector();
  const int s = static_cast<int>(fv.size());
  MembershipWitness w;
  w.coefficients.resize(2 * s + third.size());
  w.coefficients << -u, fv, third;
  w.expected.resize(2 * s + third.size());
  w.expected << g.to_integer().to_vector(), fv, third;
  return w;
}

}  // namespace

MembershipWitness bqtru_witness(const Quaternion& f, const Quaternion& g, const EvalVector& rho_gamma,
                                const Quaternion& h, const EvalDomain& dom) {
  const IntVector y = -flatten(rho_gamma);
  return assemble(f, g, compute_U(f, g, y, h, dom), y);
}

MembershipWitness expanded_witness(const Quaternion& f, const Quaternion& g, const EvalVector& rho_gamma,
                                   const Quaternion& h, const EvalDomain& dom) {
  const i64 q = dom.q();
  IntVector y = -flatten(rho_gamma);
  for (auto& v : y) v = mod(v, q);
  return assemble(f, g, compute_U(f, g, y, h, dom), expand_bits(y, q));
}

bool verify_key_membership(const Quaternion& f, const Quaternion& g, const EvalVector& rho_gamma,
                           const Quaternion& h, const EvalDomain& dom) {
  MembershipWitness w;
  try {
    w = bqtru_witness(f, g, rho_gamma, h, dom);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NonIntegralU) return false;
    throw;
  }
  const IntMatrix m = build_bqtru_lattice(h, dom).rows;
  const IntVector product = (w.coefficients.transpose() * m).transpose();
  return product == w.expected;
}

}  // namespace bqtru
