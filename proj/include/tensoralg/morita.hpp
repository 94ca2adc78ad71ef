#ifndef TENSORALG_MORITA_HPP
#define TENSORALG_MORITA_HPP

#include <vector>

#include "tensoralg/correspondence.hpp"
#include "tensoralg/fock.hpp"
#include "tensoralg/random.hpp"
#include "tensoralg/representation.hpp"

namespace tensoralg {

/// A Morita context couples an M-N equivalence bimodule X with a
/// correspondence F over N.  It packages the induced correspondence
/// E = X (x)_N F (x)_N X~ over M together with the canonical unitary
///   W : E (x)_M X  ->  X (x)_N F,
/// which collapses the inner X~ (x) X pair to a coefficient in N.
struct MoritaContext {
  EquivalenceBimodule x;      // X, an M-N equivalence bimodule
  EquivalenceBimodule xdual;  // X~, the dual N-M bimodule
  Correspondence f;           // F, over N
  Correspondence e;           // E = X (x) F (x) X~, over M
  BalancedTensor xf;          // X (x)_N F
  BalancedTensor xfxt;        // (X (x) F) (x)_N X~; its corr is e
  BalancedTensor ex;          // E (x)_M X
  Matrix w;                   // xf coordinates <- ex coordinates
};

/// Builds the context from its parts.  Requires F to be a correspondence
/// over the right coefficient algebra of X.
MoritaContext context_from_parts(const EquivalenceBimodule& x, const Correspondence& f,
                                 double rank_tol = Tolerances{}.rank);

/// Residuals: W is an isometric bimodule isomorphism onto X (x) F (including
/// unitarity, so dim E (x) X = dim X (x) F), and E satisfies the
/// correspondence axioms.
CheckReport check_context(const MoritaContext& ctx, double tol = Tolerances{}.equality);

/// Everything induced from a representation sigma of N on H that the
/// transform of dual points needs: the induced space X (x) H, the
/// transformed representation sigma^X of M on it, F (x) H, and
/// E (x) (X (x) H).
struct TransformData {
  Representation sigma;    // N on H
  InducedSpace xh;         // X (x)_sigma H
  Representation sigma_x;  // sigma^X, M acting on X (x) H
  InducedSpace fh;         // F (x)_sigma H
  InducedSpace exh;        // E (x)_{sigma^X} (X (x) H)
};

TransformData transform_data(const MoritaContext& ctx, const Representation& sigma,
                             double rank_tol = Tolerances{}.rank);

/// Transform of an intertwiner ttilde : F (x) H -> H into
/// (I_X (x) ttilde)(W (x) I_H) : E (x) (X (x) H) -> X (x) H.
Matrix morita_transform_pair(const MoritaContext& ctx, const TransformData& td,
                             const Matrix& ttilde);

/// Transform of a dual point z : H -> F (x) H; the matrix adjoint of
/// morita_transform_pair applied to z*.
Matrix morita_transform_point(const MoritaContext& ctx, const TransformData& td,
                              const Matrix& z);

/// Lift of a commutant element c of sigma(N)' to I_X (x) c acting on
/// X (x) H.  This is the canonical *-isomorphism sigma(N)' -> sigma^X(M)'.
Matrix commutant_lift(const MoritaContext& ctx, const TransformData& td, const Matrix& c);

/// -------------------------------------------------------------------------
/// Canonical stabilization.  For a correspondence F over N, the truncated
/// Fock module X = F(F) is an equivalence bimodule between the algebra M of
/// right-module operators on it and N.  The right shift R : X (x) F -> X
/// identifies X (x) F with the range of the projection P0 onto levels >= 1,
/// realizing the induced correspondence E = P0 M over M with left action
/// phi_M(a) = R (a (x) I_F) R* and W(P0 a (x) xi) = R* P0 a xi.
/// -------------------------------------------------------------------------

struct StabilizationResult {
  TruncatedFock fock;        // truncated Fock module of F
  Correspondence total;      // X = F(F) as a correspondence over N
  Matrix p0;                 // projection onto levels >= 1 (total coordinates)
  RightShift shift;          // R, with domain (levels 0..cap-1) (x) F
  int truncation_level = 0;  // the level cap
};

StabilizationResult canonical_stabilization(const Correspondence& f, int level_cap,
                                            double rank_tol = Tolerances{}.rank);

/// The rank-one module operator z -> x <y, z> on a correspondence, as a
/// matrix in its coordinates.  These generate the module-operator algebra.
Matrix rank_one_module_operator(const Correspondence& c, const Vector& x, const Vector& y);

/// phi_M(a) = R (a (x) I_F) R* in total coordinates.  Exact for module
/// operators a supported on levels 0..cap-1, where truncation is invisible.
Matrix stabilization_left_action(const StabilizationResult& st, const Matrix& a);

/// Structural residuals of the stabilization: R R* = P0 and R* R = I
/// exactly; W = R* restricted to the range of P0 is isometric and
/// intertwines the right actions of N; for rank-one module operators a
/// supported below the cap, W intertwines phi_M(a) with a (x) I_F, and
/// phi_M is a *-homomorphism; rank-one operators are adjointable module
/// maps with positive diagonal.  Sampled operators use `samples` random
/// window vectors.
CheckReport verify_stabilization(const StabilizationResult& st, Rng& rng, int samples = 4,
                                 double tol = Tolerances{}.equality);

/// The stabilization as a concrete MoritaContext: M as a matrix algebra
/// (the commutant of the right N-action), X = F(F) with left Gram the
/// rank-one operators, E = P0 M with an orthonormal basis (`e_basis` holds
/// the concrete matrices), and W from its defining formula.  The xfxt field
/// is left empty, since E is not realized through X (x) F (x) X~ here.
/// Intended for small instances; the left action of operators that move
/// mass across the cap is truncated.
struct MaterializedStabilization {
  MoritaContext ctx;
  std::vector<Matrix> e_basis;
};

MaterializedStabilization stabilization_context(const StabilizationResult& st,
                                                double rank_tol = Tolerances{}.rank);

/// -------------------------------------------------------------------------
/// Reconstruction.  For a covariant pair (sigma, ttilde) of (F, N), the
/// operator (R (x) I_H)(I_F(F) (x) ttilde*) acts on F(F) (x) H.  Over
/// N = C, F = C^d it coincides with the row-isometry form
/// sum_i R_i (x) T_i*, assembled independently by popescu_form.
/// -------------------------------------------------------------------------

Matrix reconstruction_operator(const StabilizationResult& st, const CovariantPair& pair);

/// Direct assembly of sum_i R_i (x) T_i* on the truncated full Fock space
/// over C^d, d = t_list.size(), with R_i the truncated right creation
/// operators.  Requires the row contraction sum_i T_i T_i* <= I.
Matrix popescu_form(const std::vector<Matrix>& t_list, int level_cap);

/// Residuals of the truncated right creations over C^d below the cap:
/// R_i* R_j = delta_ij I on levels 0..cap-1, and R_i* R_j = 0 there for
/// i != j.
CheckReport popescu_row_isometry(int d, int level_cap);

}  // namespace tensoralg

#endif  // TENSORALG_MORITA_HPP
