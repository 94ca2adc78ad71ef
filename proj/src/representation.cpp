#include "tensoralg/representation.hpp"

#include <stdexcept>

namespace tensoralg {

Matrix Representation::apply(const Matrix& a) const {
  const Vector c = algebra.coords(a);
  Matrix out = Matrix::Zero(space_dim, space_dim);
  for (int e = 0; e < int(c.size()); ++e) out += c[e] * images[std::size_t(e)];
  return out;
}

CheckReport Representation::check(double /*tol*/) const {
  CheckReport rep;
  rep.add("unitality", (apply(algebra.identity()) -
                        Matrix::Identity(space_dim, space_dim))
                           .norm());
  double star = 0.0, mult = 0.0;
  for (int i = 0; i < algebra.dim(); ++i) {
    star = std::max(star, (apply(algebra.basis[std::size_t(i)].adjoint()) -
                           images[std::size_t(i)].adjoint())
                              .norm());
    for (int j = 0; j < algebra.dim(); ++j)
      mult = std::max(mult, (apply(algebra.basis[std::size_t(i)] *
                                   algebra.basis[std::size_t(j)]) -
                             images[std::size_t(i)] * images[std::size_t(j)])
                                .norm());
  }
  rep.add("star_preservation", star);
  rep.add("multiplicativity", mult);
  return rep;
}

Representation identity_representation(const StarAlgebra& a) {
  Representation sigma;
  sigma.algebra = a;
  sigma.space_dim = a.ambient_dim;
  sigma.images = a.basis;
  return sigma;
}

InducedSpace induce_space(const Correspondence& e, const Representation& sigma,
                          double rank_tol) {
  const int d = e.dim, h = sigma.space_dim;
  Matrix g(d * h, d * h);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      g.block(i * h, j * h, h, h) = sigma.apply(e.gram[std::size_t(i)][std::size_t(j)]);
  g = hermitize(g);

  const PivotedCholesky pc = pivoted_cholesky(g, rank_tol);
  InducedSpace s;
  s.module_dim = d;
  s.base_dim = h;
  s.dim = pc.rank;
  s.pivots.assign(pc.pivots.begin(), pc.pivots.begin() + pc.rank);
  s.factor = pc.lower.adjoint();
  if (pc.rank > 0) {
    // factor * pinv = I via a thin QR of the Cholesky factor; only triangular
    // solves touch the (possibly ill-conditioned) square of the factor.
    Eigen::HouseholderQR<Matrix> qr(pc.lower);
    const Matrix thin_q = qr.householderQ() * Matrix::Identity(d * h, pc.rank);
    const Matrix r = qr.matrixQR().topRows(pc.rank).triangularView<Eigen::Upper>();
    s.pinv = thin_q * r.adjoint().triangularView<Eigen::Lower>().solve(
                          Matrix::Identity(pc.rank, pc.rank));
  } else {
    s.pinv = Matrix::Zero(d * h, 0);
  }
  return s;
}

Matrix induced_compress(const InducedSpace& s, const Matrix& op) {
  return s.factor * op * s.pinv;
}

Representation induce_representation(const Correspondence& e, const Representation& sigma,
                                     const InducedSpace& s) {
  Representation out;
  out.algebra = e.left_algebra;
  out.space_dim = s.dim;
  out.images.reserve(std::size_t(e.left_algebra.dim()));
  for (int a = 0; a < e.left_algebra.dim(); ++a)
    out.images.push_back(
        s.factor * apply_left_factor(e.left_action[std::size_t(a)], s.pinv, sigma.space_dim));
  return out;
}

CovariantPair make_covariant_pair(const Correspondence& e, const Representation& sigma,
                                  const Matrix& ttilde, double rank_tol) {
  CovariantPair p;
  p.e = e;
  p.sigma = sigma;
  p.induced = induce_space(e, sigma, rank_tol);
  if (ttilde.rows() != sigma.space_dim || ttilde.cols() != p.induced.dim)
    throw std::invalid_argument("make_covariant_pair: ttilde has the wrong shape");
  p.ttilde = ttilde;
  return p;
}

CheckReport check_covariant_pair(const CovariantPair& p, double /*tol*/) {
  CheckReport rep;
  const Representation ind = induce_representation(p.e, p.sigma, p.induced);
  double cov = 0.0;
  for (int a = 0; a < p.e.left_algebra.dim(); ++a)
    cov = std::max(cov, (p.ttilde * ind.images[std::size_t(a)] -
                         p.sigma.images[std::size_t(a)] * p.ttilde)
                            .norm());
  rep.add("covariance", cov);
  return rep;
}

BallPosition classify_ball(double norm, double tol) {
  if (norm > 1.0 + tol) return BallPosition::exterior;
  if (norm >= 1.0 - tol) return BallPosition::boundary;
  return BallPosition::interior;
}

std::vector<Matrix> solve_intertwiners(const std::vector<Matrix>& rights,
                                       const std::vector<Matrix>& lefts,
                                       double rank_tol) {
  if (rights.size() != lefts.size() || rights.empty())
    throw std::invalid_argument("solve_intertwiners: mismatched condition lists");
  const int k = int(rights.front().rows());
  const int m = int(lefts.front().rows());

  Matrix sys(int(rights.size()) * m * k, m * k);
  for (std::size_t t = 0; t < rights.size(); ++t) {
    sys.middleRows(int(t) * m * k, m * k) =
        kron(rights[t].transpose(), Matrix::Identity(m, m)) -
        kron(Matrix::Identity(k, k), lefts[t]);
  }
  const Matrix ker = nullspace(sys, rank_tol);

  std::vector<Matrix> basis;
  basis.reserve(std::size_t(ker.cols()));
  for (int c = 0; c < ker.cols(); ++c) basis.push_back(unvec(ker.col(c), m, k));
  return basis;
}

SigmaDual sigma_dual(const Correspondence& e, const Representation& sigma,
                     double rank_tol) {
  if (!same_algebra(e.left_algebra, e.right_algebra))
    throw std::invalid_argument("sigma_dual: correspondence must be over one algebra");
  const int h = sigma.space_dim;

  SigmaDual d;
  d.module = e;
  d.sigma = sigma;
  d.induced = induce_space(e, sigma, rank_tol);

  std::vector<Matrix> rights, lefts;
  for (const Matrix& g : sigma.algebra.generating_set()) {
    rights.push_back(sigma.apply(g));
    lefts.push_back(d.induced.factor *
                    apply_left_factor(e.left_action_of(g), d.induced.pinv, h));
  }
  d.basis = solve_intertwiners(rights, lefts, rank_tol);
  d.commutant_alg = commutant_of_family(sigma.images, h);

  const int n = int(d.basis.size());
  d.dual.left_algebra = d.commutant_alg;
  d.dual.right_algebra = d.commutant_alg;
  d.dual.dim = n;
  d.dual.gram.assign(std::size_t(n), std::vector<Matrix>(std::size_t(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d.dual.gram[std::size_t(i)][std::size_t(j)] =
          d.basis[std::size_t(i)].adjoint() * d.basis[std::size_t(j)];

  const int nc = d.commutant_alg.dim();
  d.dual.right_action.assign(std::size_t(nc), Matrix(n, n));
  d.dual.left_action.assign(std::size_t(nc), Matrix(n, n));
  for (int s = 0; s < nc; ++s) {
    const Matrix& cs = d.commutant_alg.basis[std::size_t(s)];
    const Matrix lifted = d.induced.factor * apply_right_factor(cs, d.induced.pinv, e.dim);
    for (int j = 0; j < n; ++j) {
      const Matrix right_img = d.basis[std::size_t(j)] * cs;
      const Matrix left_img = lifted * d.basis[std::size_t(j)];
      for (int i = 0; i < n; ++i) {
        d.dual.right_action[std::size_t(s)](i, j) =
            (d.basis[std::size_t(i)].adjoint() * right_img).trace();
        d.dual.left_action[std::size_t(s)](i, j) =
            (d.basis[std::size_t(i)].adjoint() * left_img).trace();
      }
    }
  }
  return d;
}

CheckReport check_sigma_dual(const SigmaDual& d, double tol) {
  CheckReport rep;
  const int n = int(d.basis.size());
  const int h = d.commutant_alg.ambient_dim;

  double ortho = 0.0, gram_member = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Matrix prod = d.basis[std::size_t(i)].adjoint() * d.basis[std::size_t(j)];
      ortho = std::max(ortho, std::abs(prod.trace() - (i == j ? 1.0 : 0.0)));
      gram_member = std::max(gram_member, d.commutant_alg.membership_defect(prod));
    }
  rep.add("basis_orthonormality", ortho);
  rep.add("gram_in_commutant", gram_member);

  // Closure of both actions on the stored basis: the action matrices must
  // reproduce the actual operator images.
  double closure = 0.0;
  for (int s = 0; s < d.commutant_alg.dim(); ++s) {
    const Matrix& cs = d.commutant_alg.basis[std::size_t(s)];
    const Matrix lifted =
        d.induced.factor * apply_right_factor(cs, d.induced.pinv, d.induced.module_dim);
    for (int j = 0; j < n; ++j) {
      Matrix right_img = d.basis[std::size_t(j)] * cs;
      Matrix left_img = lifted * d.basis[std::size_t(j)];
      for (int i = 0; i < n; ++i) {
        right_img -= d.dual.right_action[std::size_t(s)](i, j) * d.basis[std::size_t(i)];
        left_img -= d.dual.left_action[std::size_t(s)](i, j) * d.basis[std::size_t(i)];
      }
      closure = std::max(closure, std::max(right_img.norm(), left_img.norm()));
    }
  }
  rep.add("action_closure", closure);

  // Intertwining of every basis element over the coefficient algebra basis.
  double inter = 0.0;
  for (int a = 0; a < d.sigma.algebra.dim(); ++a) {
    const Matrix lifted_phi =
        d.induced.factor *
        apply_left_factor(d.module.left_action[std::size_t(a)], d.induced.pinv, h);
    for (int i = 0; i < n; ++i)
      inter = std::max(inter, (d.basis[std::size_t(i)] * d.sigma.images[std::size_t(a)] -
                               lifted_phi * d.basis[std::size_t(i)])
                                  .norm());
  }
  rep.add("intertwining", inter);
  rep.absorb("axioms", check_correspondence_axioms(d.dual, tol));
  return rep;
}

IntegratedForm::IntegratedForm(const CovariantPair& pair, const TruncatedFock& fock) {
  space_dim_ = pair.sigma.space_dim;
  const int h = space_dim_;
  const int de = pair.e.dim;
  const int m = pair.sigma.algebra.dim();

  Matrix y0(h, m * h);
  for (int j = 0; j < m; ++j)
    y0.middleCols(j * h, h) = pair.sigma.images[std::size_t(j)];
  maps_.push_back(std::move(y0));

  for (int k = 1; k <= fock.level_cap; ++k) {
    const Matrix x = kron(fock.levels[std::size_t(k)].embed, Matrix::Identity(h, h));
    const Matrix g = apply_right_factor(maps_.back(), x, de);
    maps_.push_back(pair.ttilde * (pair.induced.factor * g));
  }
}

Matrix IntegratedForm::apply(const TensorPolynomial& p) const {
  Matrix out = Matrix::Zero(space_dim_, space_dim_);
  for (const auto& [level, coef] : p.terms) {
    if (level >= levels())
      throw std::out_of_range("IntegratedForm: term beyond the prepared depth");
    out += maps_[std::size_t(level)] * kron(coef, Matrix::Identity(space_dim_, space_dim_));
  }
  return out;
}

std::vector<Matrix> images_from_ttilde(const InducedSpace& induced, const Matrix& ttilde) {
  std::vector<Matrix> images;
  images.reserve(std::size_t(induced.module_dim));
  for (int i = 0; i < induced.module_dim; ++i)
    images.push_back(ttilde * induced.factor.middleCols(i * induced.base_dim, induced.base_dim));
  return images;
}

Matrix ttilde_from_images(const InducedSpace& induced, const std::vector<Matrix>& images) {
  if (int(images.size()) != induced.module_dim)
    throw std::invalid_argument("ttilde_from_images: one image per module basis vector");
  Matrix row(induced.base_dim, induced.module_dim * induced.base_dim);
  for (int i = 0; i < induced.module_dim; ++i)
    row.middleCols(i * induced.base_dim, induced.base_dim) = images[std::size_t(i)];
  return row * induced.pinv;
}

}  // namespace tensoralg
