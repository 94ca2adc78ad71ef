#include "doctest.h"
#include "tensoralg/accontinuity.hpp"
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

struct Instance {
  MoritaContext ctx;
  Representation sigma;
  TransformData td;
  SigmaDual dual;          // of (F, sigma)
  StarAlgebra commutant;   // sigma(N)'
};

Instance make_instance(std::uint64_t seed, const std::vector<int>& mults) {
  Rng rng(seed);
  Instance inst;
  BlockAlgebra left = random_block_algebra(rng, {2, 1});
  BlockAlgebra right = random_block_algebra(rng, {1, 2});
  EquivalenceBimodule x = random_equivalence_bimodule(left, right, rng);
  Correspondence f = random_correspondence(right, right, rng, {{1, 1}, {1, 0}});
  inst.ctx = context_from_parts(x, f);
  inst.sigma = random_representation(right, rng, mults);
  inst.td = transform_data(inst.ctx, inst.sigma);
  inst.dual = sigma_dual(inst.ctx.f, inst.sigma);
  inst.commutant = commutant_of_family(inst.sigma.images, inst.sigma.space_dim);
  return inst;
}

}  // namespace

TEST_CASE("CP map of a dual point preserves the commutant") {
  Instance inst = make_instance(101, {2, 1});
  Rng rng(102);
  const Matrix z = random_ball_point(inst.dual.basis, rng, false);
  const CPMap phi = cp_map_of_point(inst.ctx.f, inst.td.fh, inst.commutant, z);
  CHECK(check_cp_map(phi).max_residual() <= 1e-10);
  CHECK(phi.spectral_radius() <= 1.0 + 1e-10);

  // The identity is superharmonic for any contractive point, and pure for a
  // strictly contractive one.
  const Matrix id = Matrix::Identity(inst.sigma.space_dim, inst.sigma.space_dim);
  CHECK(is_superharmonic(phi, id));
  CHECK(is_pure_superharmonic(phi, id));
}

TEST_CASE("induced CP map is the ampliation: residual on a full commutant basis") {
  for (std::uint64_t seed : {111u, 112u}) {
    CAPTURE(seed);
    Instance inst = make_instance(seed, {1, 1});
    Rng rng(seed + 1000);
    const Matrix z = random_ball_point(inst.dual.basis, rng, false);
    const Matrix zx = morita_transform_point(inst.ctx, inst.td, z);

    const StarAlgebra commutant_x =
        commutant_of_family(inst.td.sigma_x.images, inst.td.xh.dim);
    CHECK(commutant_x.dim() == inst.commutant.dim());

    const CPMap phi = cp_map_of_point(inst.ctx.f, inst.td.fh, inst.commutant, z);
    const CPMap phi_x = cp_map_of_point(inst.ctx.e, inst.td.exh, commutant_x, zx);

    double res = 0.0;
    for (int c = 0; c < inst.commutant.dim(); ++c) {
      const Matrix& cc = inst.commutant.basis[std::size_t(c)];
      const Matrix lhs = phi_x.apply(commutant_lift(inst.ctx, inst.td, cc));
      const Matrix rhs = commutant_lift(inst.ctx, inst.td, phi.apply(cc));
      res = std::max(res, operator_norm(lhs - rhs));
    }
    CHECK(res <= 1e-10);
  }
}

TEST_CASE("scalar instances: geometric series purity and the two endpoint behaviors") {
  const Correspondence f = scalar_correspondence(1);
  const Representation sigma = scalar_representation(1);
  const InducedSpace fh = induce_space(f, sigma);
  const StarAlgebra commutant = commutant_of_family(sigma.images, 1);
  EquivalenceBimodule x = column_bimodule(2);
  const MoritaContext ctx = context_from_parts(x, f);
  const TransformData td = transform_data(ctx, sigma);

  SUBCASE("t = 1: identity map, no pure superharmonic elements, zero projections") {
    Matrix z(1, 1);
    z(0, 0) = Complex(1, 0);
    const CPMap phi = cp_map_of_point(f, fh, commutant, z);
    const Matrix id = Matrix::Identity(1, 1);
    CHECK(is_superharmonic(phi, id));
    CHECK_FALSE(is_pure_superharmonic(phi, id));
    const AcSubspace ac = ac_subspace(phi);
    CHECK(ac.rank == 0);
    CHECK(operator_norm(ac.projection) <= 1e-12);

    const Matrix zx = morita_transform_point(ctx, td, z);
    const StarAlgebra commutant_x = commutant_of_family(td.sigma_x.images, td.xh.dim);
    const CPMap phi_x = cp_map_of_point(ctx.e, td.exh, commutant_x, zx);
    const AcSubspace ac_x = ac_subspace(phi_x);
    CHECK(ac_x.rank == 0);
    CHECK(operator_norm(ac_x.projection) <= 1e-12);
  }

  SUBCASE("t = 1/2: geometric series, full projections on both sides") {
    Matrix z(1, 1);
    z(0, 0) = Complex(0.5, 0);
    const CPMap phi = cp_map_of_point(f, fh, commutant, z);
    // Phi(c) = c/4, so sum_k Phi^k(1) = 4/3 exactly in the limit.
    Matrix s(1, 1);
    s(0, 0) = Complex(4.0 / 3.0, 0);
    CHECK(is_pure_superharmonic(phi, s));
    CHECK(operator_norm(s - phi.apply(s) - Matrix::Identity(1, 1)) <= 1e-12);

    const AcSubspace ac = ac_subspace(phi);
    CHECK(ac.rank == 1);
    CHECK(operator_norm(ac.projection - Matrix::Identity(1, 1)) <= 1e-12);

    const Matrix zx = morita_transform_point(ctx, td, z);
    const StarAlgebra commutant_x = commutant_of_family(td.sigma_x.images, td.xh.dim);
    const CPMap phi_x = cp_map_of_point(ctx.e, td.exh, commutant_x, zx);
    const AcSubspace ac_x = ac_subspace(phi_x);
    CHECK(ac_x.rank == td.xh.dim);
    CHECK(operator_norm(ac_x.projection - Matrix::Identity(td.xh.dim, td.xh.dim)) <= 1e-12);
  }
}

TEST_CASE("scaling covariance, monotone decay, and the zero point") {
  Instance inst = make_instance(121, {2, 1});
  Rng rng(122);
  const Matrix z = random_ball_point(inst.dual.basis, rng, false);
  const CPMap phi = cp_map_of_point(inst.ctx.f, inst.td.fh, inst.commutant, z);

  SUBCASE("scaling the point scales the map by the squared modulus") {
    const Complex lam(0.3, -0.4);
    const CPMap phi_scaled =
        cp_map_of_point(inst.ctx.f, inst.td.fh, inst.commutant, Matrix(lam * z));
    double res = 0.0;
    for (int c = 0; c < inst.commutant.dim(); ++c) {
      const Matrix& b = inst.commutant.basis[std::size_t(c)];
      res = std::max(res, operator_norm(phi_scaled.apply(b) -
                                        std::norm(lam) * phi.apply(b)));
    }
    CHECK(res <= 1e-12);
  }

  SUBCASE("iterates of a superharmonic element decay monotonically") {
    Matrix a = Matrix::Identity(inst.sigma.space_dim, inst.sigma.space_dim);
    REQUIRE(is_superharmonic(phi, a));
    double prev = operator_norm(a);
    for (int n = 0; n < 20; ++n) {
      a = phi.apply(a);
      const double cur = operator_norm(a);
      CHECK(cur <= prev + 1e-12);
      prev = cur;
    }
  }

  SUBCASE("the zero point gives the zero map and a full subspace") {
    const Matrix z0 = Matrix::Zero(z.rows(), z.cols());
    const CPMap phi0 = cp_map_of_point(inst.ctx.f, inst.td.fh, inst.commutant, z0);
    CHECK(phi0.spectral_radius() <= 1e-14);
    const AcSubspace ac = ac_subspace(phi0);
    const int h = inst.sigma.space_dim;
    CHECK(ac.rank == h);
    CHECK(operator_norm(ac.projection - Matrix::Identity(h, h)) <= 1e-12);
  }
}

TEST_CASE("transport: projections agree through the commutant lift at small radius") {
  Instance inst = make_instance(131, {1, 1});
  Rng rng(132);
  const Matrix z = random_ball_point(inst.dual.basis, rng, false);
  const CPMap phi = cp_map_of_point(inst.ctx.f, inst.td.fh, inst.commutant, z);
  CHECK(phi.spectral_radius() <= 0.95);

  const Matrix zx = morita_transform_point(inst.ctx, inst.td, z);
  const StarAlgebra commutant_x =
      commutant_of_family(inst.td.sigma_x.images, inst.td.xh.dim);
  const CPMap phi_x = cp_map_of_point(inst.ctx.e, inst.td.exh, commutant_x, zx);

  const AcSubspace ac = ac_subspace(phi);
  const AcSubspace ac_x = ac_subspace(phi_x);
  CHECK_FALSE(ac.indeterminate);
  CHECK_FALSE(ac_x.indeterminate);

  const Matrix lifted = commutant_lift(inst.ctx, inst.td, ac.projection);
  CHECK(operator_norm(ac_x.projection - lifted) <= 1e-8);
}
