#ifndef TENSORALG_GENERATORS_HPP
#define TENSORALG_GENERATORS_HPP

#include <vector>

#include "tensoralg/correspondence.hpp"
#include "tensoralg/random.hpp"
#include "tensoralg/representation.hpp"
#include "tensoralg/star_algebra.hpp"

namespace tensoralg {

/// A multi-matrix *-algebra (a direct sum of full matrix blocks) embedded in
/// M_n(C) by a Haar-random change of basis, with the block data retained so
/// representations with prescribed multiplicities can be constructed.
struct BlockAlgebra {
  StarAlgebra algebra;
  std::vector<int> block_sizes;
  Matrix unitary;  ///< algebra = unitary . blockdiag . unitary*

  int ambient() const { return algebra.ambient_dim; }
};

BlockAlgebra random_block_algebra(Rng& rng, const std::vector<int>& block_sizes);

/// The representation with multiplicity mults[s] on block s, conjugated by a
/// Haar-random unitary of the representation space.
Representation random_representation(const BlockAlgebra& a, Rng& rng,
                                     const std::vector<int>& mults);

/// A random correspondence from `left` to `right` with the prescribed
/// multiplicity of the irreducible (s, t) bimodule summand, a positive
/// twist of the inner product, and a generic orthonormal basis.  mult[s][t]
/// entries may be zero; the total dimension is sum mult[s][t] * p_s * q_t.
Correspondence random_correspondence(const BlockAlgebra& left, const BlockAlgebra& right,
                                     Rng& rng, const std::vector<std::vector<int>>& mult);

/// A random equivalence bimodule pairing block s of `left` with block s of
/// `right` (the block counts must agree), with random positive block weights
/// on the inner products and a generic orthonormal basis.
EquivalenceBimodule random_equivalence_bimodule(const BlockAlgebra& left,
                                                const BlockAlgebra& right, Rng& rng);

/// A random point of the closed unit ball of the span of `basis` (operator
/// norm), either strictly inside (norm <= interior_cap) or exactly on the
/// sphere.
Matrix random_ball_point(const std::vector<Matrix>& basis, Rng& rng, bool boundary,
                         double interior_cap = 0.9);

/// --- fixed small instances used as oracles ---

/// C^d over C: orthonormal basis, trivial actions.
Correspondence scalar_correspondence(int d);

/// C^n as an equivalence bimodule between M_n(C) and C, with left Gram the
/// rank-one matrix units.
EquivalenceBimodule column_bimodule(int n);

/// The algebra as an equivalence bimodule over itself: <a, b> = a* b on the
/// right, a b* on the left.
EquivalenceBimodule identity_bimodule(const StarAlgebra& a);

/// M_n(C) as a correspondence over the diagonal algebra, with matrix-unit
/// basis and multiplication actions.
Correspondence matrix_over_diagonal(int n);

}  // namespace tensoralg

#endif  // TENSORALG_GENERATORS_HPP
