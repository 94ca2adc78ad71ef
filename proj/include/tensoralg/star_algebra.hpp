#ifndef TENSORALG_STAR_ALGEBRA_HPP
#define TENSORALG_STAR_ALGEBRA_HPP

#include <vector>

#include "tensoralg/matrix.hpp"
#include "tensoralg/report.hpp"

namespace tensoralg {

/// A unital *-subalgebra of M_n(C), stored as a basis that is orthonormal
/// under the trace pairing <a, b> = tr(a* b).  The span is closed under
/// products and adjoints and contains the identity.
struct StarAlgebra {
  int ambient_dim = 0;
  std::vector<Matrix> basis;
  bool contains_identity = true;
  /// Optional small *-closed generating set.  Solvers that impose one linear
  /// condition per algebra element (commutants, intertwiner spaces) only need
  /// the conditions on a generating set, which matters when dim() is large.
  std::vector<Matrix> generators;

  int dim() const { return int(basis.size()); }
  Matrix identity() const { return Matrix::Identity(ambient_dim, ambient_dim); }

  /// Coordinates of an ambient matrix with respect to the orthonormal basis
  /// (the orthogonal projection if the matrix is outside the span).
  Vector coords(const Matrix& x) const;
  Matrix from_coords(const Vector& c) const;
  Matrix project(const Matrix& x) const { return from_coords(coords(x)); }
  /// ||x - project(x)||: zero exactly for members of the span.
  double membership_defect(const Matrix& x) const;

  const std::vector<Matrix>& generating_set() const {
    return generators.empty() ? basis : generators;
  }

  /// True if every pair of basis elements commutes (within tol).
  bool is_abelian(double tol = 1e-10) const;

  /// Residuals: basis orthonormality, closure under adjoints and products,
  /// identity membership.
  CheckReport check(double tol = Tolerances{}.equality) const;
};

/// Smallest unital *-subalgebra of M_n(C) containing the generators.  With no
/// generators this is C times the identity.  Throws if ambient_dim does not
/// match the generator shapes.
StarAlgebra star_algebra_from_generators(const std::vector<Matrix>& gens, int ambient_dim);

/// M_n(C) with the matrix-unit basis.
StarAlgebra full_matrix_algebra(int n);

/// C * I_n (one-dimensional).
StarAlgebra scalar_algebra(int n = 1);

/// Diagonal matrices in M_n(C).
StarAlgebra diagonal_algebra(int n);

/// Commutant of the span of `basis_set` (a *-closed family of n x n matrices)
/// inside M_n(C), returned with a trace-orthonormal basis.  Uses a joint
/// eigenspace decomposition when the family is abelian, a stacked-nullspace
/// solve otherwise.
StarAlgebra commutant_of_family(const std::vector<Matrix>& basis_set, int ambient_dim);

/// Commutant of a StarAlgebra (uses its generating set).
StarAlgebra commutant(const StarAlgebra& a);

/// Span equality of two algebras within tol.
bool same_algebra(const StarAlgebra& a, const StarAlgebra& b, double tol = 1e-8);

}  // namespace tensoralg

#endif  // TENSORALG_STAR_ALGEBRA_HPP
