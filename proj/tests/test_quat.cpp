#include "doctest.h"
#include "oracles.hpp"

#include "bqtru/error.hpp"
#include "bqtru/quat.hpp"

using namespace bqtru;

namespace {

Quaternion unit(int u, i64 m = 7) { return Quaternion::basis(3, m, u); }

// Constant quaternion a + b i + c j + d k over R'_m.
Quaternion constant(i64 a, i64 b, i64 c, i64 d, i64 m = 7) {
  auto r = [&](i64 v) { return RingElem::one(3, m) * v; };
  return Quaternion(r(a), r(b), r(c), r(d));
}

}  // namespace

TEST_CASE("multiplication table") {
  CHECK(quat_mul_schoolbook(unit(1), unit(2)) == unit(3));
  CHECK(quat_mul_schoolbook(unit(2), unit(1)) == -unit(3));
  CHECK(quat_mul_schoolbook(unit(1), unit(1)) == unit(0));
  CHECK(quat_mul_schoolbook(unit(2), unit(2)) == unit(0));
  CHECK(quat_mul_schoolbook(unit(3), unit(3)) == -unit(0));
  CHECK(quat_mul_schoolbook(unit(2), unit(3)) == -unit(1));
  CHECK(quat_mul_schoolbook(unit(3), unit(2)) == unit(1));
  CHECK(quat_mul_schoolbook(unit(1), unit(3)) == unit(2));
  CHECK(quat_mul_schoolbook(unit(3), unit(1)) == -unit(2));
  CHECK(quat_mul_strassen(unit(1), unit(2)) == unit(3));

  // (1 + i)(1 - i) = 1 - i^2 = 0
  CHECK(quat_mul_schoolbook(constant(1, 1, 0, 0), constant(1, 6, 0, 0)).is_zero());
  std::mt19937_64 rng(7);
  const Quaternion f = oracle::random_quat(3, 7, rng);
  CHECK(quat_mul_schoolbook(f, Quaternion::one(3, 7)) == f);
  CHECK_THROWS_AS(quat_mul_schoolbook(f, Quaternion::one(3, 11)), Error);
}

TEST_CASE("scalar product matches the hand expansion") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<i64> dist(0, 112);
  for (int t = 0; t < 500; ++t) {
    ScalarQuat a{dist(rng), dist(rng), dist(rng), dist(rng)};
    ScalarQuat b{dist(rng), dist(rng), dist(rng), dist(rng)};
    REQUIRE(sq_mul(a, b, 113) == oracle::hand_sq_mul(a, b, 113));
    CHECK(sq_mul(a, sq_conjugate(a, 113), 113) == ScalarQuat{sq_norm(a, 113), 0, 0, 0});
  }
}

TEST_CASE("schoolbook is associative") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    const Quaternion a = oracle::random_quat(3, 7, rng);
    const Quaternion b = oracle::random_quat(3, 7, rng);
    const Quaternion c = oracle::random_quat(3, 7, rng);
    CHECK(quat_mul_schoolbook(quat_mul_schoolbook(a, b), c) == quat_mul_schoolbook(a, quat_mul_schoolbook(b, c)));
  }
}

TEST_CASE("matrix image") {
  const RingElem one = RingElem::one(3, 7);
  const RingElem zero(3, 7);
  const RingMatrix2 id = quat_to_matrix(Quaternion::one(3, 7));
  CHECK((id[0][0] == one && id[0][1] == zero && id[1][0] == zero && id[1][1] == one));
  const RingMatrix2 im = quat_to_matrix(unit(1));
  CHECK((im[0][0] == one && im[0][1] == zero && im[1][0] == zero && im[1][1] == -one));
  const RingMatrix2 km = matrix_mul(quat_to_matrix(unit(1)), quat_to_matrix(unit(2)));
  const RingMatrix2 k = quat_to_matrix(unit(3));
  CHECK((km[0][0] == zero && km[0][1] == one && km[1][0] == -one && km[1][1] == zero));
  CHECK((k[0][0] == km[0][0] && k[0][1] == km[0][1] && k[1][0] == km[1][0] && k[1][1] == km[1][1]));

  std::mt19937_64 rng(10);
  for (int t = 0; t < 100; ++t) {
    const Quaternion a = oracle::random_quat(3, 7, rng);
    const Quaternion b = oracle::random_quat(3, 7, rng);
    const RingMatrix2 lhs = quat_to_matrix(quat_mul_schoolbook(a, b));
    const RingMatrix2 rhs = matrix_mul(quat_to_matrix(a), quat_to_matrix(b));
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) CHECK(lhs[r][c] == rhs[r][c]);
    CHECK(quat_from_matrix(quat_to_matrix(a)) == a);
  }
}

TEST_CASE("strassen equals schoolbook with 7 versus 16 products") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const Quaternion a = oracle::random_quat(7, 113, rng);
    const Quaternion b = oracle::random_quat(7, 113, rng);
    OpCounter slow, fast;
    REQUIRE(quat_mul_strassen(a, b, &fast) == quat_mul_schoolbook(a, b, &slow));
    CHECK(slow.ring_mults == 16);
    CHECK(fast.ring_mults == 7);
  }
  // Integer inputs recombine exactly.
  const Quaternion a = oracle::random_quat(3, 7, rng).lift_centered();
  const Quaternion b = oracle::random_quat(3, 7, rng).lift_centered();
  CHECK(quat_mul_strassen(a, b) == quat_mul_schoolbook(a, b));
  const Quaternion even = Quaternion::one(3, 8);
  CHECK_THROWS_AS(quat_mul_strassen(even, even), Error);
}

TEST_CASE("conjugate and norm") {
  CHECK(quat_norm(Quaternion::one(3, 7)) == RingElem::one(3, 7));
  CHECK(quat_norm(constant(1, 1, 0, 0)).is_zero());
  std::mt19937_64 rng(12);
  for (int t = 0; t < 500; ++t) {
    const Quaternion f = oracle::random_quat(3, 7, rng);
    REQUIRE(quat_mul_schoolbook(f, conjugate(f)) == Quaternion::scalar(quat_norm(f)));
    CHECK(quat_mul_schoolbook(conjugate(f), f) == Quaternion::scalar(quat_norm(f)));
  }
  for (int t = 0; t < 100; ++t) {
    const Quaternion f = oracle::random_quat(3, 7, rng);
    const Quaternion g = oracle::random_quat(3, 7, rng);
    CHECK(quat_norm(quat_mul_schoolbook(f, g)) == conv_mul(quat_norm(f), quat_norm(g)));
  }
}

TEST_CASE("inverse mod p") {
  CHECK(quat_inverse_mod_p(Quaternion::one(3, 3), 3) == Quaternion::one(3, 3));
  CHECK(quat_inverse_mod_p(unit(1, 3), 3) == unit(1, 3));
  CHECK_THROWS_AS(quat_inverse_mod_p(constant(1, 1, 0, 0, 3), 3), Error);
  std::mt19937_64 rng(13);
  int ok = 0;
  for (int t = 0; t < 100; ++t) {
    const Quaternion f = oracle::random_quat(3, 3, rng);
    try {
      const Quaternion inv = quat_inverse_mod_p(f, 3);
      CHECK(quat_mul_schoolbook(f, inv) == Quaternion::one(3, 3));
      CHECK(quat_mul_schoolbook(inv, f) == Quaternion::one(3, 3));
      ++ok;
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotInvertible);
    }
  }
  CHECK(ok > 10);
}

TEST_CASE("rho is a homomorphism") {
  const EvalDomain dom(3, 7);
  for (const auto& entry : rho(Quaternion::one(3, 7), dom)) CHECK(entry == ScalarQuat{1, 0, 0, 0});
  std::mt19937_64 rng(14);
  for (int t = 0; t < 100; ++t) {
    const Quaternion f = oracle::random_quat(3, 7, rng);
    const Quaternion g = oracle::random_quat(3, 7, rng);
    CHECK(rho(quat_mul_schoolbook(f, g), dom) == pointwise_mul(rho(f, dom), rho(g, dom), 7));
    CHECK(rho(f + g, dom) == pointwise_add(rho(f, dom), rho(g, dom), 7));
    CHECK(interpolate(dom, rho(f, dom)) == f);
  }
  for (int k = 0; k < dom.size(); ++k) {
    const EvalVector ind = rho(Quaternion::scalar(lagrange_interpolant(dom, k)), dom);
    for (int e = 0; e < dom.size(); ++e)
      CHECK(ind[e] == (e == k ? ScalarQuat{1, 0, 0, 0} : ScalarQuat{0, 0, 0, 0}));
  }
}

TEST_CASE("inverse mod J") {
  const EvalDomain dom(3, 7);
  const std::vector<int> t{0, 4};
  const Quaternion inv1 = quat_inverse_mod_J(Quaternion::one(3, 7), t, dom);
  const EvalVector v1 = rho(inv1, dom);
  for (int e = 0; e < dom.size(); ++e)
    CHECK(v1[e] == (e == 0 || e == 4 ? ScalarQuat{0, 0, 0, 0} : ScalarQuat{1, 0, 0, 0}));

  // 1 + i has norm 0 everywhere, in particular outside T.
  CHECK_THROWS_AS(quat_inverse_mod_J(constant(1, 1, 0, 0), t, dom), Error);

  std::mt19937_64 rng(15);
  int tested = 0;
  while (tested < 100) {
    const Quaternion f = oracle::random_quat(3, 7, rng);
    Quaternion inv;
    try {
      inv = quat_inverse_mod_J(f, t, dom);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NormVanishesOutsideT);
      continue;
    }
    const EvalVector prod = rho(quat_mul_schoolbook(f, inv), dom);
    const EvalVector fv = rho(f, dom);
    for (int e = 0; e < dom.size(); ++e) {
      if (e == 0 || e == 4) continue;
      CHECK(prod[e] == ScalarQuat{1, 0, 0, 0});
      // pointwise oracle: N^-1 * conj computed by hand
      const i64 n = oracle::hand_sq_mul(fv[e], sq_conjugate(fv[e], 7), 7)[0];
      CHECK(oracle::hand_sq_mul(fv[e], sq_scale(sq_conjugate(fv[e], 7), *inv_mod(n, 7), 7), 7) ==
            ScalarQuat{1, 0, 0, 0});
    }
    ++tested;
  }
}

TEST_CASE("vector and text forms") {
  std::mt19937_64 rng(16);
  const Quaternion f = oracle::random_quat(3, 7, rng);
  CHECK(Quaternion::from_vector(3, 7, f.to_vector()) == f);
  const std::string text = to_text(f);
  CHECK(text.rfind("c0: ", 0) == 0);
  CHECK(text.find("\nc3: ") != std::string::npos);
}
