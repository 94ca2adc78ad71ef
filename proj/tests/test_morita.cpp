#include "doctest.h"
#include "tensoralg/generators.hpp"
#include "tensoralg/morita.hpp"

using namespace tensoralg;

namespace {

Representation scalar_representation(int h) {
  Representation sigma;
  sigma.algebra = scalar_algebra(1);
  sigma.space_dim = h;
  sigma.images.assign(1, Matrix::Identity(h, h));
  return sigma;
}

struct RandomInstance {
  BlockAlgebra left, right;
  MoritaContext ctx;
  Representation sigma;
  TransformData td;
  SigmaDual dual;  // dual points of (F, sigma) live in its span
};

RandomInstance random_instance(std::uint64_t seed) {
  Rng rng(seed);
  RandomInstance inst;
  inst.left = random_block_algebra(rng, {2, 1});
  inst.right = random_block_algebra(rng, {1, 2});
  EquivalenceBimodule x = random_equivalence_bimodule(inst.left, inst.right, rng);
  Correspondence f = random_correspondence(inst.right, inst.right, rng, {{1, 1}, {1, 0}});
  inst.ctx = context_from_parts(x, f);
  inst.sigma = random_representation(inst.right, rng, {1, 1});
  inst.td = transform_data(inst.ctx, inst.sigma);
  inst.dual = sigma_dual(inst.ctx.f, inst.sigma);
  return inst;
}

}  // namespace

TEST_CASE("column context: transformed point norm matches the euclidean oracle") {
  // X = C^2 between M_2 and C, F = C^3 over C, sigma trivial on C^1.  A dual
  // point is a column (t_i); its transform must have norm (sum |t_i|^2)^1/2.
  const int d = 3;
  EquivalenceBimodule x = column_bimodule(2);
  Correspondence f = scalar_correspondence(d);
  MoritaContext ctx = context_from_parts(x, f);

  CHECK(ctx.e.dim == 4 * d);
  CHECK(ctx.ex.corr.dim == ctx.xf.corr.dim);
  CheckReport rep = check_context(ctx);
  CHECK(rep.max_residual() <= 1e-9);

  Representation sigma = scalar_representation(1);
  TransformData td = transform_data(ctx, sigma);
  Rng rng(7);
  Matrix z(d, 1);
  for (int i = 0; i < d; ++i) z(i, 0) = rng.complex_normal() * 0.4;
  const double expected = z.norm();

  const Matrix zx = morita_transform_point(ctx, td, z);
  CHECK(operator_norm(zx) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("random contexts: W is a unitary bimodule isomorphism") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    RandomInstance inst = random_instance(seed);
    CAPTURE(seed);
    CHECK(inst.ctx.ex.corr.dim == inst.ctx.xf.corr.dim);
    CheckReport rep = check_context(inst.ctx);
    CHECK(rep.max_residual() <= 1e-8);
  }
}

TEST_CASE("transform of a pair is covariant and adjoint to the point transform") {
  RandomInstance inst = random_instance(21);
  Rng rng(22);

  // A strictly contractive dual point z : H -> F (x) H and its intertwiner.
  const Matrix z = random_ball_point(inst.dual.basis, rng, false);
  const Matrix ttilde = z.adjoint();

  CovariantPair pair = make_covariant_pair(inst.ctx.f, inst.sigma, ttilde);
  CHECK(check_covariant_pair(pair).max_residual() <= 1e-9);

  const Matrix tx = morita_transform_pair(inst.ctx, inst.td, ttilde);
  const Matrix zx = morita_transform_point(inst.ctx, inst.td, z);
  CHECK(operator_norm(tx.adjoint() - zx) <= 1e-10);

  // The transformed pair is covariant for sigma^X.
  CovariantPair tp{inst.ctx.e, inst.td.sigma_x, inst.td.exh, tx};
  CHECK(check_covariant_pair(tp).max_residual() <= 1e-8);
}

TEST_CASE("transform preserves the unit-ball classification both ways") {
  RandomInstance inst = random_instance(31);
  Rng rng(32);

  for (bool boundary : {false, true}) {
    const Matrix z = random_ball_point(inst.dual.basis, rng, boundary);
    const Matrix zx = morita_transform_point(inst.ctx, inst.td, z);
    CAPTURE(boundary);
    CHECK(classify_ball(operator_norm(zx)) == classify_ball(operator_norm(z)));
  }
}

TEST_CASE("double transform through the dual context returns the original pair") {
  RandomInstance inst = random_instance(41);
  Rng rng(42);
  const MoritaContext& ctx = inst.ctx;
  const TransformData& td = inst.td;
  const Representation& sigma = inst.sigma;
  const int h = sigma.space_dim;
  const int dx = ctx.x.module.dim;
  const int dxt = ctx.xdual.module.dim;
  const int df = ctx.f.dim;

  const Matrix z = random_ball_point(inst.dual.basis, rng, false);
  const Matrix ttilde = z.adjoint();
  const Matrix tx = morita_transform_pair(ctx, td, ttilde);

  // Dual context: X~ paired with E over M gives E2 = X~ (x) E (x) X over N,
  // canonically isomorphic to F.
  MoritaContext ctx2 = context_from_parts(ctx.xdual, ctx.e);
  TransformData td2 = transform_data(ctx2, td.sigma_x);
  const Matrix t2 = morita_transform_pair(ctx2, td2, tx);

  // kappa : X~ (x) (X (x) H) -> H, collapsing the pair to sigma.
  Matrix c = Matrix::Zero(h, Eigen::Index(dxt) * td.xh.dim);
  for (int i = 0; i < dxt; ++i) {
    Matrix block = Matrix::Zero(h, td.xh.dim);
    for (int j = 0; j < dx; ++j)
      block += sigma.apply(ctx.x.module.gram[std::size_t(i)][std::size_t(j)]) *
               td.xh.pinv.middleRows(Eigen::Index(j) * h, h);
    c.middleCols(Eigen::Index(i) * td.xh.dim, td.xh.dim) = block;
  }
  const Matrix kappa = c * td2.xh.pinv;
  CHECK(operator_norm(kappa * kappa.adjoint() - Matrix::Identity(h, h)) <= 1e-9);
  CHECK(operator_norm(kappa.adjoint() * kappa -
                      Matrix::Identity(td2.xh.dim, td2.xh.dim)) <= 1e-9);

  // mu : E2 -> F, collapsing X~ (x) (E (x) X -> X (x) F) to a coefficient
  // acting on F.
  Matrix chain = kron(ctx2.xf.embed, Matrix::Identity(dx, dx)) * ctx2.xfxt.embed;
  chain = apply_right_factor(Matrix(ctx.w * ctx.ex.project), chain, dxt);
  chain = apply_right_factor(ctx.xf.embed, chain, dxt);
  Matrix collapse = Matrix::Zero(df, Eigen::Index(dxt) * dx * df);
  for (int i = 0; i < dxt; ++i)
    for (int k = 0; k < dx; ++k) {
      const Matrix act = ctx.f.left_action_of(ctx.x.module.gram[std::size_t(i)][std::size_t(k)]);
      collapse.middleCols((Eigen::Index(i) * dx + k) * df, df) = act;
    }
  const Matrix mu = collapse * chain;
  CHECK(operator_norm(mu.adjoint() * mu -
                      Matrix::Identity(ctx2.xfxt.corr.dim, ctx2.xfxt.corr.dim)) <= 1e-9);

  // The round trip equals ttilde after conjugating by kappa and mu (x) kappa.
  const Matrix g = td.fh.factor * kron(mu, kappa) * td2.exh.pinv;
  CHECK(operator_norm(kappa * t2 - ttilde * g) <= 1e-8);
}

TEST_CASE("sigma-dual dimensions agree across the transform") {
  RandomInstance inst = random_instance(51);
  const SigmaDual df = sigma_dual(inst.ctx.f, inst.sigma);
  const SigmaDual de = sigma_dual(inst.ctx.e, inst.td.sigma_x);
  CHECK(df.dual.dim == de.dual.dim);
  CHECK(check_sigma_dual(df).max_residual() <= 1e-8);
  CHECK(check_sigma_dual(de).max_residual() <= 1e-8);
}
