#ifndef TENSORALG_FOCK_HPP
#define TENSORALG_FOCK_HPP

#include <utility>
#include <vector>

#include "tensoralg/correspondence.hpp"
#include "tensoralg/matrix.hpp"

namespace tensoralg {

/// One tensor power E^{(x)k} inside a truncated Fock module.  `embed` and
/// `project` relate level k to the free coordinates of E (x) level_{k-1}
/// (both empty at level 0, where the module is the coefficient algebra).
struct FockLevel {
  Correspondence module;
  Matrix embed;
  Matrix project;
  std::vector<int> pivots;
};

/// The Fock module of a correspondence E over M, truncated at `level_cap`:
/// the direct sum of levels 0..level_cap with level 0 = M.  Coordinates of
/// the total space are the level coordinates laid out in order; `offsets`
/// has one entry per level plus a trailing total.
///
/// `append[k]` maps free coordinates of level_k (x) E to level k+1
/// (appending a base-module factor on the right); `prepend[m][k]` maps free
/// coordinates of level_m (x) level_k to level m+k (tensoring on the left).
/// Both exist exactly when the target level is within the cap.
struct TruncatedFock {
  Correspondence base;
  int level_cap = 0;
  std::vector<FockLevel> levels;
  std::vector<int> offsets;
  std::vector<Matrix> append;
  std::vector<std::vector<Matrix>> prepend;

  int total_dim() const { return offsets.back(); }
  int level_dim(int k) const { return levels[std::size_t(k)].module.dim; }
  int level_offset(int k) const { return offsets[std::size_t(k)]; }
  /// Level containing a total-space coordinate index.
  int level_of(int coord) const;
};

TruncatedFock build_truncated_fock(const Correspondence& e, int level_cap,
                                   double rank_tol = Tolerances{}.rank);

/// The truncated Fock module as a single correspondence over the coefficient
/// algebra: block-diagonal Gram and right action, left action by the
/// block-diagonal of the level left actions (the induced representation of M
/// on every tensor power).
Correspondence fock_correspondence(const TruncatedFock& fock);

/// Block-diagonal left action of a coefficient-algebra element on the total
/// space.
Matrix phi_infty(const TruncatedFock& fock, const Matrix& a);

/// Creation operator of a vector xi at `level` (coordinates in that level's
/// basis): maps level k to level k + `level` by tensoring xi on the left,
/// killing levels that would exceed the cap.  Level 0 recovers phi_infty.
Matrix creation_operator(const TruncatedFock& fock, int level, const Vector& xi);

/// A finite sum of tensors of homogeneous degrees: at most one coordinate
/// vector per level, kept sorted by level.
struct TensorPolynomial {
  std::vector<std::pair<int, Vector>> terms;

  void add_term(int level, const Vector& coef);
  int degree() const;
};

/// Polynomial sum_k coeffs[k] z^k over the one-dimensional scalar
/// correspondence (every tensor power has the single basis vector 1).
TensorPolynomial scalar_polynomial(const std::vector<Complex>& coeffs);

/// Sum of creation operators of the terms.
Matrix polynomial_to_operator(const TruncatedFock& fock, const TensorPolynomial& p);

/// Product in the tensor algebra via the prepend maps.  Throws if the degree
/// of the product exceeds the cap of `fock`.
TensorPolynomial polynomial_mul(const TruncatedFock& fock, const TensorPolynomial& p,
                                const TensorPolynomial& q);

/// Operator norm of the polynomial acting on the Fock module of `e`
/// truncated at `level_cap`.
double fock_norm(const Correspondence& e, const TensorPolynomial& p, int level_cap);

/// sup_{|w|=1} |sum_k coeffs[k] w^k|, by a dense grid followed by local
/// golden-section refinement.  Accurate to ~1e-12 for the low degrees used
/// here.
double circle_sup(const std::vector<Complex>& coeffs);

/// The right-shift family of a truncated Fock module: the map
/// (levels lo..hi) (x)_M E -> total space sending xi (x) f to the class of
/// xi (x) f one level up (zero from the top level).  `domain` is the
/// balanced tensor of the level window with the base module;
/// `source_levels[a]` records which window level produced domain basis
/// vector a.
struct RightShift {
  BalancedTensor domain;
  Matrix matrix;
  std::vector<int> source_levels;
  int level_lo = 0;
  int level_hi = 0;
};

RightShift right_shift(const TruncatedFock& fock, int level_lo, int level_hi,
                       double rank_tol = Tolerances{}.rank);

}  // namespace tensoralg

#endif  // TENSORALG_FOCK_HPP
