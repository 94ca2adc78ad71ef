#ifndef TENSORALG_REPRESENTATION_HPP
#define TENSORALG_REPRESENTATION_HPP

#include <vector>

#include "tensoralg/correspondence.hpp"
#include "tensoralg/fock.hpp"
#include "tensoralg/matrix.hpp"
#include "tensoralg/report.hpp"
#include "tensoralg/star_algebra.hpp"

namespace tensoralg {

/// A unital *-representation of a StarAlgebra on C^h, stored by the images
/// of the algebra basis.
struct Representation {
  StarAlgebra algebra;
  int space_dim = 0;
  std::vector<Matrix> images;

  Matrix apply(const Matrix& a) const;
  /// Residuals: unitality, *-preservation, multiplicativity on basis pairs.
  CheckReport check(double tol = Tolerances{}.equality) const;
};

/// The ambient (identity) representation of a matrix algebra.
Representation identity_representation(const StarAlgebra& a);

/// The induced space E (x)_sigma H: the separated completion of
/// C^dim (x) C^h under the sigma-scalarized Gram.  `factor` maps free
/// coordinates to induced coordinates with factor^* factor = Gram, so the
/// induced basis is orthonormal; `pinv` is a right inverse of `factor`.
struct InducedSpace {
  int module_dim = 0;
  int base_dim = 0;
  int dim = 0;
  Matrix factor;  ///< dim x (module_dim * base_dim)
  Matrix pinv;    ///< (module_dim * base_dim) x dim, factor * pinv = I
  std::vector<int> pivots;
};

InducedSpace induce_space(const Correspondence& e, const Representation& sigma,
                          double rank_tol = Tolerances{}.rank);

/// Compression factor * op * pinv of an operator on the free coordinates.
/// Faithful for operators that descend to the induced space (module maps
/// tensor identity, and identity tensor intertwiners).
Matrix induced_compress(const InducedSpace& s, const Matrix& op);

/// The induced representation a -> phi(a) (x) I_H of the left algebra on the
/// induced space.
Representation induce_representation(const Correspondence& e, const Representation& sigma,
                                     const InducedSpace& s);

/// A completely contractive covariant pair in coordinates: a representation
/// sigma of the coefficient algebra on C^h together with the map
/// ttilde : E (x)_sigma H -> H whose covariance property
/// ttilde (phi(a) (x) I) = sigma(a) ttilde expresses T(a xi) = sigma(a) T(xi).
struct CovariantPair {
  Correspondence e;
  Representation sigma;
  InducedSpace induced;
  Matrix ttilde;
};

CovariantPair make_covariant_pair(const Correspondence& e, const Representation& sigma,
                                  const Matrix& ttilde,
                                  double rank_tol = Tolerances{}.rank);

/// Residual of the covariance relation over the coefficient basis.
CheckReport check_covariant_pair(const CovariantPair& p, double tol = Tolerances{}.equality);

enum class BallPosition { interior, boundary, exterior };
BallPosition classify_ball(double norm, double tol = Tolerances{}.ball);

/// HS-orthonormal basis of { z : z * rights[t] = lefts[t] * z } (all t),
/// via the nullspace of the stacked Sylvester system.  `rights[t]` act on
/// the domain C^k, `lefts[t]` on the codomain C^m; solutions are m x k.
std::vector<Matrix> solve_intertwiners(const std::vector<Matrix>& rights,
                                       const std::vector<Matrix>& lefts,
                                       double rank_tol = Tolerances{}.rank);

/// The sigma-dual of a correspondence E over M: the space of intertwiners
/// eta : H -> E (x)_sigma H with eta sigma(a) = (phi(a) (x) I) eta, as a
/// correspondence over the commutant sigma(M)'.  The stored basis is
/// HS-orthonormal, which matches the trace-scalarized Gram convention.
struct SigmaDual {
  Correspondence dual;           ///< correspondence over the commutant
  StarAlgebra commutant_alg;     ///< sigma(M)' in M_h(C)
  std::vector<Matrix> basis;     ///< intertwiners, induced.dim x h
  InducedSpace induced;          ///< E (x)_sigma H
  Correspondence module;         ///< the correspondence that was dualized
  Representation sigma;
};

SigmaDual sigma_dual(const Correspondence& e, const Representation& sigma,
                     double rank_tol = Tolerances{}.rank);

/// Residuals: intertwining of each basis element, Gram values landing in the
/// commutant, closure of both actions on the stored basis, and the
/// correspondence axioms of the packaged dual.
CheckReport check_sigma_dual(const SigmaDual& d, double tol = Tolerances{}.equality);

/// Integrated forms: the maps C^{d_k} (x) H -> H induced by a covariant pair
/// on each tensor power, assembled level by level.  apply() evaluates the
/// pair on a tensor polynomial (no truncation on the H side).
class IntegratedForm {
 public:
  IntegratedForm(const CovariantPair& pair, const TruncatedFock& fock);

  const Matrix& level_map(int k) const { return maps_[std::size_t(k)]; }
  int levels() const { return int(maps_.size()); }
  Matrix apply(const TensorPolynomial& p) const;

 private:
  int space_dim_ = 0;
  std::vector<Matrix> maps_;
};

/// T(xi_i) = ttilde (xi_i (x) .) for each module basis vector: the h x h
/// sample operators determined by a covariant pair.
std::vector<Matrix> images_from_ttilde(const InducedSpace& induced, const Matrix& ttilde);

/// Inverse of images_from_ttilde: rebuild ttilde from the sample operators.
Matrix ttilde_from_images(const InducedSpace& induced, const std::vector<Matrix>& images);

}  // namespace tensoralg

#endif  // TENSORALG_REPRESENTATION_HPP
