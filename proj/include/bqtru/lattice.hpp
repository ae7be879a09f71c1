#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bqtru/types.hpp"

namespace bqtru {

/// Integer row basis plus a label naming the construction that produced it.
struct LatticeBasis {
  IntMatrix rows;
  std::string label;

  int dim() const { return static_cast<int>(rows.rows()); }
};

/// "dim N label L" followed by N rows of decimal integers.
std::string export_basis(const LatticeBasis& basis);
LatticeBasis import_basis(std::string_view text);

/// Gram-Schmidt data of an integer basis. mu is unit lower triangular,
/// norms(i) = |b*_i|^2 and bstar holds the orthogonalised rows.
template <typename Real>
struct Gso {
  Matrix<Real> mu;
  Vector<Real> norms;
  Matrix<Real> bstar;
};

template <typename Real>
Gso<Real> gram_schmidt(const IntMatrix& rows);

template <typename Real>
struct ReducedBasis {
  IntMatrix rows;
  Gso<Real> gso;
  double delta = 0.99;
  u64 swaps = 0;

  int dim() const { return static_cast<int>(rows.rows()); }
  int ambient() const { return static_cast<int>(rows.cols()); }
};

struct LllOptions {
  double delta = 0.99;
  u64 max_swaps = 50'000'000;
};

/// LLL with floating Gram-Schmidt and exact integer row updates. Throws
/// RankDeficient for dependent rows and BudgetExceeded past max_swaps.
template <typename Real = double>
ReducedBasis<Real> lll_reduce(const IntMatrix& basis, const LllOptions& options = {});

/// Wraps a basis without reducing it (useful for tests and tiny lattices).
template <typename Real = double>
ReducedBasis<Real> as_reduced(const IntMatrix& basis, double delta = 0.99);

/// Checks |mu_ij| <= 1/2 + eps and the Lovasz condition on a fresh GSO.
template <typename Real>
bool is_lll_reduced(const IntMatrix& rows, double delta, double eps = 1e-9);

/// Coordinates of the lattice point found by nearest-plane rounding,
/// as a vector in the ambient space.
template <typename Real>
IntVector babai_nearest_plane(const ReducedBasis<Real>& basis, const Vector<Real>& target);

/// Exact closest lattice vector within radius (Schnorr-Euchner enumeration).
/// Throws NoPointInRadius.
template <typename Real>
IntVector sphere_decode(const ReducedBasis<Real>& basis, const Vector<Real>& target, Real radius);

/// Babai seed, then sphere decoding inside the seed's distance. When
/// fallback_radius is positive and smaller, it is tried first and doubled.
template <typename Real>
IntVector closest_vector(const ReducedBasis<Real>& basis, const Vector<Real>& target, Real fallback_radius = 0);

/// Squared distance with exact integer lattice coordinates.
template <typename Real>
Real squared_distance(const IntVector& v, const Vector<Real>& target);

/// (|det| / prod |b_i|)^(1/N).
double hadamard_ratio(const IntMatrix& rows);

/// sqrt(dim / (2 pi e)) * det^(1/dim).
double gaussian_heuristic(int dim, const BigInt& det);

/// vol^(2/N) / (2 pi e).
double poltyrev_sigma_max(const BigInt& vol, int dim);

using BigMatrix = std::vector<std::vector<BigInt>>;

/// Row-style Hermite normal form: nonzero rows only, upper echelon, positive
/// pivots, entries above each pivot reduced into [0, pivot).
BigMatrix hermite_normal_form(BigMatrix rows);
BigMatrix to_big(const IntMatrix& m);
IntMatrix to_int(const BigMatrix& m);

/// Exact determinant by fraction-free elimination.
BigInt determinant(const IntMatrix& m);

/// Solves x * M = v over Z for triangular nonsingular M (upper or lower).
/// Returns std::nullopt when v is not in the row lattice.
std::optional<IntVector> solve_triangular_integer(const IntMatrix& m, const IntVector& v);

}  // namespace bqtru
