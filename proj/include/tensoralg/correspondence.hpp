#ifndef TENSORALG_CORRESPONDENCE_HPP
#define TENSORALG_CORRESPONDENCE_HPP

#include <vector>

#include "tensoralg/matrix.hpp"
#include "tensoralg/report.hpp"
#include "tensoralg/star_algebra.hpp"

namespace tensoralg {

/// A C*-correspondence in coordinates: a right Hilbert module over
/// `right_algebra` carrying a left action of `left_algebra` by adjointable
/// maps.  For a correspondence *over* M the two algebras coincide.
///
/// Module elements are coordinate vectors against a stored basis {xi_i}.
/// The basis is kept orthonormal under the scalarized inner product
/// tr <xi_i, xi_j>, so coordinate 2-norms are honest module norms and matrix
/// adjoints of module maps are their module adjoints.
struct Correspondence {
  StarAlgebra left_algebra;
  StarAlgebra right_algebra;
  int dim = 0;
  /// dim x dim array of right-algebra-valued inner products <xi_i, xi_j>
  /// (conjugate-linear in the first slot).
  std::vector<std::vector<Matrix>> gram;
  /// Per right_algebra basis element b, the matrix of xi -> xi . b.
  std::vector<Matrix> right_action;
  /// Per left_algebra basis element a, the matrix of xi -> phi(a) xi.
  std::vector<Matrix> left_action;

  /// Action matrices for arbitrary algebra elements (expanded in coordinates).
  Matrix right_action_of(const Matrix& b) const;
  Matrix left_action_of(const Matrix& a) const;

  /// Right-algebra-valued pairing of two coordinate vectors.
  Matrix pair(const Vector& u, const Vector& v) const;

  /// tr-scalarized Gram matrix; the identity for every stored module.
  Matrix scalar_gram() const;
};

/// Correspondence axiom residuals: Gram hermiticity and positivity, right
/// compatibility <xi, eta.b> = <xi, eta> b, the left *-homomorphism property
/// <phi(a) xi, eta> = <xi, phi(a*) eta>, multiplicativity and unitality of
/// both actions, and scalar orthonormality of the stored basis.
CheckReport check_correspondence_axioms(const Correspondence& e,
                                        double tol = Tolerances{}.equality);

/// The algebra as a correspondence over itself: basis the algebra basis,
/// <a, b> = a* b, both actions by multiplication.
Correspondence algebra_as_correspondence(const StarAlgebra& m);

/// Internal (balanced) tensor product E (x)_B F of an A-B correspondence with
/// a B-C correspondence.  The quotient by the null space of the balanced
/// inner product is taken via pivoted Cholesky of the scalarized Gram;
/// `embed` carries quotient coordinates to representatives in the free
/// product coordinates (dE*dF), `project` carries a free vector to the
/// coordinates of its class.
struct BalancedTensor {
  Correspondence corr;
  Matrix embed;    ///< (dE*dF) x dim, embed of the chosen orthonormal basis
  Matrix project;  ///< dim x (dE*dF), class map; project * embed = I
  int free_dim = 0;
  std::vector<int> pivots;  ///< free-coordinate pivot index backing each basis vector
};
BalancedTensor internal_tensor(const Correspondence& e, const Correspondence& f,
                               double rank_tol = Tolerances{}.rank);

/// An M-N equivalence bimodule: the underlying M-N correspondence together
/// with the M-valued left inner product (linear in the first slot).
struct EquivalenceBimodule {
  StarAlgebra left_algebra;
  StarAlgebra right_algebra;
  Correspondence module;
  std::vector<std::vector<Matrix>> left_gram;

  /// Left-algebra-valued pairing (linear in the first coordinate vector).
  Matrix left_pair(const Vector& u, const Vector& v) const;
};

/// Equivalence-bimodule residuals: module axioms, left-Gram hermiticity,
/// positivity and action compatibilities, fullness of both inner products,
/// and the associativity identity M<x,y> . z = x . <y,z>_N.
CheckReport check_equivalence_bimodule(const EquivalenceBimodule& x,
                                       double tol = Tolerances{}.equality);

/// Dual (opposite) bimodule: an N-M equivalence bimodule on the conjugate
/// space, with Grams and actions conjugate-transposed.  dual(dual(x)) is x
/// on the nose.
EquivalenceBimodule dual_bimodule(const EquivalenceBimodule& x);

/// A linear map between correspondences, stored against the bases of source
/// and target (matrix is target.dim x source.dim).
struct CorrespondenceMap {
  Correspondence source;
  Correspondence target;
  Matrix matrix;
};

/// Residuals for being an isometric surjective bimodule isomorphism:
/// preservation of the coefficient-valued inner product, rank deficit against
/// the target, and intertwining of both actions.
CheckReport check_correspondence_isomorphism(const CorrespondenceMap& w,
                                             double tol = Tolerances{}.equality);

/// Restriction of a correspondence to a subset of basis indices.  Valid only
/// when the actions preserve the selected span (e.g. level windows of a Fock
/// module); residual violations are reported in `defect` if given.
Correspondence subcorrespondence(const Correspondence& e, const std::vector<int>& keep,
                                 double* defect = nullptr);

/// (a (x) I_{d2}) x and (I_{d1} (x) b) x without materializing the Kronecker
/// factor; row blocks follow the first-factor-major flattening.
Matrix apply_left_factor(const Matrix& a, const Matrix& x, int d2);
Matrix apply_right_factor(const Matrix& b, const Matrix& x, int d1);

}  // namespace tensoralg

#endif  // TENSORALG_CORRESPONDENCE_HPP
