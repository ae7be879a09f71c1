#pragma once

#include <vector>

#include "bqtru/lattice.hpp"
#include "bqtru/quat.hpp"
#include "bqtru/ring.hpp"

namespace bqtru {

/// Secret ideal data: grid indices T, their nonzero weights and the
/// generator sigma = sum weights[i] * lambda_{T[i]}.
struct IdealSpec {
  std::vector<int> T;
  std::vector<i64> weights;
  RingElem sigma;
};

/// Common grid zeros of the four components of G. Empty means "resample".
std::vector<int> derive_T(const Quaternion& g, const EvalDomain& dom);

/// Throws InvalidWeight for a weight that vanishes mod q.
RingElem build_sigma(const std::vector<int>& t, const std::vector<i64>& weights, const EvalDomain& dom);
IdealSpec make_ideal(std::vector<int> t, std::vector<i64> weights, const EvalDomain& dom);

/// Hermite normal form of [q I ; lambda rows of T], computed modularly:
/// reduced echelon rows of the interpolants over Z_q plus q e_j on the free
/// columns. Upper triangular with det q^(n^2 - |T|).
LatticeBasis build_D_prime(const std::vector<int>& t, const EvalDomain& dom);
inline LatticeBasis build_D_prime(const IdealSpec& spec, const EvalDomain& dom) {
  return build_D_prime(spec.T, dom);
}

/// Four D' blocks on the diagonal.
LatticeBasis build_private_lattice(const LatticeBasis& d_prime);

/// 4n^2 x 4n^2 block matrix with vector(F) * result = vector(F ∘ H).
IntMatrix quat_product_matrix(const Quaternion& h);

/// Four copies of the full Lagrange matrix (rows lifted to [0, q)).
IntMatrix lagrange_block(const EvalDomain& dom);

/// [[q I, 0, 0], [H, I, 0], [D, 0, I]], dimension 12 n^2.
LatticeBasis build_bqtru_lattice(const Quaternion& h, const EvalDomain& dom);

/// floor(log2 q).
int expansion_bits(i64 q);

/// Third block row replaced by the binary expansion c (x) D with
/// c = (1, 2, ..., 2^l); dimension (4l + 12) n^2.
LatticeBasis build_expanded_lattice(const Quaternion& h, const EvalDomain& dom);

/// Component-major flattening of an evaluation vector (length 4 n^2).
IntVector flatten(const EvalVector& values);

/// Binary digits (l + 1 per entry, least significant first) of entries in [0, q).
IntVector expand_bits(const IntVector& values, i64 q);

/// Maps an expanded-lattice vector to the key-recovery lattice by
/// recombining each group of l + 1 binary digits.
IntVector psi(const IntVector& expanded, int n, i64 q);

/// Euclidean norm of (g, f) plus the Hamming weight of rho mod q.
double hybrid_norm(const IntVector& g_part, const IntVector& f_part, const IntVector& rho_part, i64 q);

/// U = (F ∘ H + y D - G) / q over Z for the third-block row vector y.
/// Throws NonIntegralU.
IntVector compute_U(const Quaternion& f, const Quaternion& g, const IntVector& y, const Quaternion& h,
                    const EvalDomain& dom);

/// The row vector (-U, F, y) and the lattice point it should produce, (G, F, y).
struct MembershipWitness {
  IntVector coefficients;
  IntVector expected;
};
MembershipWitness bqtru_witness(const Quaternion& f, const Quaternion& g, const EvalVector& rho_gamma,
                                const Quaternion& h, const EvalDomain& dom);
MembershipWitness expanded_witness(const Quaternion& f, const Quaternion& g, const EvalVector& rho_gamma,
                                   const Quaternion& h, const EvalDomain& dom);

/// (-U, F, -rho(gamma)) * M_BQTRU == (G, F, -rho(gamma)). A U that is not
/// integral (for instance after tampering with F) yields false.
bool verify_key_membership(const Quaternion& f, const Quaternion& g, const EvalVector& rho_gamma,
                           const Quaternion& h, const EvalDomain& dom);

}  // namespace bqtru
