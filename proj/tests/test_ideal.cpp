#include <set>

#include "doctest.h"
#include "oracles.hpp"

#include "bqtru/error.hpp"
#include "bqtru/ideal.hpp"
#include "bqtru/scheme.hpp"

using namespace bqtru;

namespace {

IntVector reduced_vector(const RingElem& r, i64 q) { return r.reduce(q).coeffs(); }

bool in_lattice(const IntMatrix& basis, const IntVector& v) {
  return solve_triangular_integer(basis, v).has_value();
}

// Rows of the Lagrange matrix at T, lifted to [0, q), plus q e_j for j not in S.
IntMatrix s_set_basis(const EvalDomain& dom, const std::vector<int>& t, const std::vector<int>& s) {
  const int size = dom.size();
  IntMatrix m = IntMatrix::Zero(size, size);
  std::vector<bool> in_s(size, false);
  for (int j : s) in_s[j] = true;
  int row = 0;
  for (int e : t) m.row(row++) = dom.lagrange_matrix().row(e);
  for (int j = 0; j < size; ++j)
    if (!in_s[j]) m(row++, j) = dom.q();
  return m;
}

}  // namespace

TEST_CASE("derive_T agrees with a direct scan of the grid") {
  std::mt19937_64 rng(11);
  const EvalDomain dom(3, 7);
  for (int trial = 0; trial < 200; ++trial) {
    const Quaternion g = sample_ternary_quat(3, 1, rng);
    std::vector<int> expect;
    for (int e = 0; e < dom.size(); ++e) {
      const auto [a, b] = dom.point(e);
      bool zero = true;
      for (int c = 0; c < 4; ++c) zero = zero && oracle::naive_eval(g[c], a, b, 7) == 0;
      if (zero) expect.push_back(e);
    }
    CHECK(derive_T(g, dom) == expect);
    CHECK(!expect.empty());
    CHECK(expect.front() == 0);
  }
}

TEST_CASE("sigma takes its weights on T and vanishes elsewhere") {
  const EvalDomain dom(5, 11);
  const std::vector<int> t{0, 7, 19};
  const std::vector<i64> w{3, 10, 1};
  const RingElem sigma = build_sigma(t, w, dom);
  for (int e = 0; e < dom.size(); ++e) {
    const auto [a, b] = dom.point(e);
    i64 expect = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] == e) expect = w[i];
    CHECK(oracle::naive_eval(sigma, a, b, 11) == expect);
  }
  CHECK_THROWS_AS(build_sigma(t, {3, 11, 1}, dom), Error);
  CHECK_THROWS_AS(build_sigma(t, {3, 1}, dom), Error);
}

TEST_CASE("distinct subsets give distinct sigma") {
  const EvalDomain dom(3, 7);
  std::set<std::vector<i64>> seen;
  int count = 0;
  for (int a = 0; a < 9; ++a) {
    const RingElem s1 = build_sigma({a}, {1}, dom);
    seen.insert(std::vector<i64>(s1.coeffs().begin(), s1.coeffs().end()));
    ++count;
    for (int b = a + 1; b < 9; ++b) {
      const RingElem s2 = build_sigma({a, b}, {1, 1}, dom);
      seen.insert(std::vector<i64>(s2.coeffs().begin(), s2.coeffs().end()));
      ++count;
    }
  }
  CHECK(count == 45);
  CHECK(seen.size() == 45);
}

TEST_CASE("D' is the Hermite form of the ideal lattice") {
  for (auto [n, q] : {std::pair{3, i64{7}}, std::pair{5, i64{11}}}) {
    const EvalDomain dom(n, q);
    const int size = n * n;
    for (const std::vector<int>& t : {std::vector<int>{0}, std::vector<int>{0, 4}, std::vector<int>{0, 2, size - 1}}) {
      const LatticeBasis d = build_D_prime(t, dom);
      CHECK(d.dim() == size);
      BigInt det = 1;
      for (int i = 0; i < size; ++i) {
        det *= d.rows(i, i);
        for (int j = 0; j < i; ++j) CHECK(d.rows(i, j) == 0);
      }
      CHECK(det == boost::multiprecision::pow(BigInt(q), size - static_cast<int>(t.size())));
      CHECK(determinant(d.rows) == det);

      // Independent route: integer HNF of [q I ; lambda_T].
      IntMatrix stacked = IntMatrix::Zero(size + t.size(), size);
      stacked.topRows(size).diagonal().setConstant(q);
      for (std::size_t i = 0; i < t.size(); ++i) stacked.row(size + i) = dom.lagrange_matrix().row(t[i]);
      CHECK(to_int(hermite_normal_form(to_big(stacked))) == d.rows);
    }
  }
}

TEST_CASE("interpolant rows with q e_j off a column set span a sublattice") {
  const EvalDomain dom(3, 7);
  const std::vector<int> t{0, 5};
  const LatticeBasis d = build_D_prime(t, dom);
  int checked = 0;
  for (int a = 0; a < 9; ++a)
    for (int b = a + 1; b < 9; ++b) {
      const std::vector<int> s{a, b};
      IntMatrix ls(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) ls(i, j) = dom.lagrange_matrix()(t[i], s[j]);
      const BigInt minor = determinant(ls);
      if (mod(static_cast<i64>(minor % 7), 7) == 0) continue;
      const IntMatrix m = s_set_basis(dom, t, s);
      for (int r = 0; r < m.rows(); ++r) CHECK(in_lattice(d.rows, m.row(r).transpose()));
      const BigInt det_m = abs(determinant(m));
      CHECK(det_m == abs(minor) * determinant(d.rows));
      ++checked;
    }
  CHECK(checked > 0);
}

TEST_CASE("ideal elements lie in D' and the private lattice") {
  std::mt19937_64 rng(5);
  const EvalDomain dom(5, 11);
  const IdealSpec spec = make_ideal({0, 3, 12}, {2, 5, 9}, dom);
  const LatticeBasis d = build_D_prime(spec, dom);
  const LatticeBasis priv = build_private_lattice(d);
  CHECK(priv.dim() == 100);
  for (int trial = 0; trial < 100; ++trial) {
    const RingElem a = oracle::random_elem(5, 11, rng);
    const RingElem v = conv_mul(a, spec.sigma);
    IntVector shifted = reduced_vector(v, 11);
    CHECK(in_lattice(d.rows, shifted));
    shifted(trial % 25) += 11 * (trial - 50);
    CHECK(in_lattice(d.rows, shifted));

    IntVector stacked(100);
    for (int k = 0; k < 4; ++k) stacked.segment(25 * k, 25) = reduced_vector(conv_mul(oracle::random_elem(5, 11, rng), spec.sigma), 11);
    CHECK(in_lattice(priv.rows, stacked));
  }
  // A non-member: the constant 1 does not vanish on the complement of T.
  IntVector one = IntVector::Zero(25);
  one(0) = 1;
  CHECK_FALSE(in_lattice(d.rows, one));
}

TEST_CASE("F-row identity and rho(gamma) times the Lagrange block") {
  std::mt19937_64 rng(9);
  const EvalDomain dom(3, 7);
  for (int trial = 0; trial < 100; ++trial) {
    const Quaternion f = oracle::random_quat(3, 7, rng);
    const Quaternion h = oracle::random_quat(3, 7, rng);
    const IntVector lhs = (f.to_integer().to_vector().transpose() * quat_product_matrix(h)).transpose();
    IntVector reduced = lhs;
    for (auto& v : reduced) v = mod(v, 7);
    CHECK(reduced == quat_mul_schoolbook(f, h).to_vector());

    const IntVector y = flatten(rho(f, dom));
    IntVector back = (y.transpose() * lagrange_block(dom)).transpose();
    for (auto& v : back) v = mod(v, 7);
    CHECK(back == f.to_vector());
  }
}

TEST_CASE("lattice dimensions") {
  std::mt19937_64 rng(1);
  const EvalDomain small(3, 7);
  const Quaternion h3 = oracle::random_quat(3, 7, rng);
  CHECK(build_bqtru_lattice(h3, small).dim() == 108);
  CHECK(build_expanded_lattice(h3, small).dim() == 180);
  CHECK(expansion_bits(7) == 2);
  CHECK(expansion_bits(113) == 6);
  CHECK(expansion_bits(128) == 7);

  const EvalDomain mid(7, 113);
  const Quaternion h7 = oracle::random_quat(7, 113, rng);
  CHECK(build_bqtru_lattice(h7, mid).dim() == 588);
  CHECK(build_expanded_lattice(h7, mid).dim() == 1764);
}

TEST_CASE("binary expansion and psi") {
  IntVector v(3);
  v << 0, 5, 112;
  const IntVector bits = expand_bits(v, 113);
  CHECK(bits.size() == 21);
  CHECK(bits.segment(7, 7) == (IntVector(7) << 1, 0, 1, 0, 0, 0, 0).finished());
  CHECK(bits.segment(14, 7) == (IntVector(7) << 0, 0, 0, 0, 1, 1, 1).finished());
  IntVector bad = v;
  bad(0) = 113;
  CHECK_THROWS_AS(expand_bits(bad, 113), Error);

  IntVector g(2), f(2), r(2);
  g << 3, 4;
  f << 0, 0;
  r << 7, 0;
  CHECK(hybrid_norm(g, f, r, 7) == doctest::Approx(5.0));
  r << 1, 8;
  CHECK(hybrid_norm(g, f, r, 7) == doctest::Approx(7.0));
}

TEST_CASE("honest keys satisfy the membership identity") {
  std::mt19937_64 rng(2024);
  const Params toy = *named_params("toy");
  const EvalDomain dom3(3, 7);
  for (int trial = 0; trial < 100; ++trial) {
    const KeyPair kp = keygen(toy, rng);
    CHECK(verify_key_membership(kp.priv, kp.pub));
    if (trial < 5) {
      const MembershipWitness b = bqtru_witness(kp.priv.F, kp.priv.G, kp.priv.rho_gamma, kp.pub.H, dom3);
      const MembershipWitness e = expanded_witness(kp.priv.F, kp.priv.G, kp.priv.rho_gamma, kp.pub.H, dom3);
      const IntMatrix m = build_expanded_lattice(kp.pub.H, dom3).rows;
      CHECK((e.coefficients.transpose() * m).transpose() == e.expected);
      IntVector mapped = psi(e.expected, 3, 7);
      IntVector direct = b.expected;
      for (int i = 72; i < 108; ++i) direct(i) = mod(direct(i), 7);
      CHECK(mapped == direct);
    }
  }

  const Params moderate = *named_params("moderate");
  const EvalDomain dom7(7, 113);
  for (int trial = 0; trial < 10; ++trial) {
    const KeyPair kp = keygen(moderate, rng);
    CHECK(verify_key_membership(kp.priv, kp.pub));
    Quaternion bad = kp.priv.F;
    IntVector c1 = bad[1].coeffs();
    c1(0) += 1;
    bad[1] = RingElem(7, 0, c1);
    CHECK_FALSE(verify_key_membership(bad, kp.priv.G, kp.priv.rho_gamma, kp.pub.H, dom7));
  }
}
