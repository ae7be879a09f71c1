#pragma once

// Slow reference implementations used only by the test suites.

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/LU>

#include "bqtru/lattice.hpp"
#include "bqtru/modular.hpp"
#include "bqtru/quat.hpp"
#include "bqtru/ring.hpp"

namespace oracle {

using bqtru::i64;
using bqtru::IntVector;
using bqtru::RingElem;

inline RingElem random_elem(int n, i64 m, std::mt19937_64& rng) {
  std::uniform_int_distribution<i64> dist(0, m - 1);
  IntVector c(n * n);
  for (auto& v : c) v = dist(rng);
  return RingElem(n, m, c);
}

inline bqtru::Quaternion random_quat(int n, i64 m, std::mt19937_64& rng) {
  return bqtru::Quaternion(random_elem(n, m, rng), random_elem(n, m, rng), random_elem(n, m, rng),
                           random_elem(n, m, rng));
}

// Coefficient of x^a y^b is sum f[c,d] g[(a-c) mod n, (b-d) mod n].
inline RingElem naive_conv(const RingElem& f, const RingElem& g) {
  const int n = f.n();
  IntVector out = IntVector::Zero(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      i64 acc = 0;
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) acc += f.at(c, d) * g.at(((a - c) % n + n) % n, ((b - d) % n + n) % n);
      out(a * n + b) = acc;
    }
  return RingElem(n, f.modulus(), out);
}

// Direct double sum of f[i,j] a^i b^j.
inline i64 naive_eval(const RingElem& f, i64 a, i64 b, i64 q) {
  i64 acc = 0;
  const int n = f.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      acc = bqtru::mod(acc + bqtru::mod(f.at(i, j), q) * bqtru::pow_mod(a, i, q) % q * bqtru::pow_mod(b, j, q), q);
  return acc;
}

// Scalar quaternion product written out from i^2 = j^2 = 1, ij = k, k^2 = -1.
inline bqtru::ScalarQuat hand_sq_mul(const bqtru::ScalarQuat& a, const bqtru::ScalarQuat& b, i64 q) {
  const i64 r0 = a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3];
  const i64 r1 = a[0] * b[1] + a[1] * b[0] - a[2] * b[3] + a[3] * b[2];
  const i64 r2 = a[0] * b[2] + a[2] * b[0] + a[1] * b[3] - a[3] * b[1];
  const i64 r3 = a[0] * b[3] + a[3] * b[0] + a[1] * b[2] - a[2] * b[1];
  return {bqtru::mod(r0, q), bqtru::mod(r1, q), bqtru::mod(r2, q), bqtru::mod(r3, q)};
}


inline bqtru::IntMatrix random_basis(int dim, i64 range, std::mt19937_64& rng) {
  std::uniform_int_distribution<i64> dist(-range, range);
  while (true) {
    bqtru::IntMatrix b(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) b(i, j) = dist(rng);
    if (bqtru::determinant(b) != 0) return b;
  }
}

// Minimum squared distance over all coefficient vectors within `box` of the
// rounded real coordinates of t.
inline double brute_force_cvp(const bqtru::IntMatrix& b, const bqtru::Vector<double>& t, int box, IntVector* arg) {
  const int dim = static_cast<int>(b.rows());
  const Eigen::MatrixXd bd = b.cast<double>();
  const Eigen::VectorXd real = bd.transpose().fullPivLu().solve(t);
  std::vector<i64> center(dim);
  for (int i = 0; i < dim; ++i) center[i] = std::llround(real(i));
  std::vector<int> u(dim, -box);
  double best = INFINITY;
  while (true) {
    IntVector v = IntVector::Zero(b.cols());
    for (int i = 0; i < dim; ++i) v += (center[i] + u[i]) * b.row(i).transpose();
    const double d = (v.cast<double>() - t).squaredNorm();
    if (d < best) {
      best = d;
      if (arg) *arg = v;
    }
    int k = 0;
    while (k < dim && u[k] == box) u[k++] = -box;
    if (k == dim) break;
    ++u[k];
  }
  return best;
}

}  // namespace oracle
