#include "tensoralg/morita.hpp"

#include <stdexcept>
#include <utility>

namespace tensoralg {

MoritaContext context_from_parts(const EquivalenceBimodule& x, const Correspondence& f,
                                 double rank_tol) {
  if (!same_algebra(f.left_algebra, f.right_algebra) ||
      !same_algebra(x.right_algebra, f.right_algebra))
    throw std::invalid_argument(
        "context_from_parts: F must be a correspondence over the right coefficient "
        "algebra of X");

  MoritaContext ctx;
  ctx.x = x;
  ctx.xdual = dual_bimodule(x);
  ctx.f = f;
  ctx.xf = internal_tensor(x.module, f, rank_tol);
  ctx.xfxt = internal_tensor(ctx.xf.corr, ctx.xdual.module, rank_tol);
  ctx.e = ctx.xfxt.corr;
  ctx.ex = internal_tensor(ctx.e, x.module, rank_tol);

  // W on the free coordinates of ((X (x) F) (x) X~) (x) X: the inner
  // X~ (x) X pair collapses to the coefficient <x_i, x_j>_N, which then acts
  // on X (x) F from the right.
  const int dxf = ctx.xf.corr.dim;
  const int dxt = ctx.xdual.module.dim;
  const int dx = x.module.dim;
  Matrix w3 = Matrix::Zero(dxf, Eigen::Index(dxf) * dxt * dx);
  for (int i = 0; i < dxt; ++i)
    for (int j = 0; j < dx; ++j) {
      const Matrix ra = ctx.xf.corr.right_action_of(x.module.gram[std::size_t(i)][std::size_t(j)]);
      for (int u = 0; u < dxf; ++u)
        w3.col(Eigen::Index(u) * dxt * dx + Eigen::Index(i) * dx + j) = ra.col(u);
    }
  ctx.w = w3 * kron(ctx.xfxt.embed, Matrix::Identity(dx, dx)) * ctx.ex.embed;
  return ctx;
}

CheckReport check_context(const MoritaContext& ctx, double tol) {
  CheckReport r;
  CorrespondenceMap wm{ctx.ex.corr, ctx.xf.corr, ctx.w};
  r.absorb("w.", check_correspondence_isomorphism(wm, tol));
  const int de = ctx.ex.corr.dim;
  const int dt = ctx.xf.corr.dim;
  double uni = operator_norm(ctx.w.adjoint() * ctx.w - Matrix::Identity(de, de));
  uni = std::max(uni, operator_norm(ctx.w * ctx.w.adjoint() - Matrix::Identity(dt, dt)));
  r.add("w_unitarity", uni);
  r.absorb("e.", check_correspondence_axioms(ctx.e, tol));
  return r;
}

TransformData transform_data(const MoritaContext& ctx, const Representation& sigma,
                             double rank_tol) {
  TransformData td;
  td.sigma = sigma;
  td.xh = induce_space(ctx.x.module, sigma, rank_tol);
  td.sigma_x = induce_representation(ctx.x.module, sigma, td.xh);
  td.fh = induce_space(ctx.f, sigma, rank_tol);
  td.exh = induce_space(ctx.e, td.sigma_x, rank_tol);
  return td;
}

Matrix morita_transform_pair(const MoritaContext& ctx, const TransformData& td,
                             const Matrix& ttilde) {
  const int h = td.sigma.space_dim;
  const int de = ctx.e.dim;
  const int dx = ctx.x.module.dim;
  if (ttilde.rows() != h || ttilde.cols() != td.fh.dim)
    throw std::invalid_argument("morita_transform_pair: intertwiner shape mismatch");

  // E (x) X (x) H -> free E (x) (X (x) H) -> free (E (x) X) (x) H
  Matrix step = apply_right_factor(td.xh.pinv, td.exh.pinv, de);
  // Collapse through W (on free E (x) X coordinates), land in (X (x) F) (x) H.
  const Matrix w_free = ctx.w * ctx.ex.project;
  step = apply_left_factor(w_free, step, h);
  // Unfold X (x) F into free X (x) (F (x) H) and apply ttilde to the tail.
  step = apply_left_factor(ctx.xf.embed, step, h);
  const Matrix b = ttilde * td.fh.factor;
  step = apply_right_factor(b, step, dx);
  return td.xh.factor * step;
}

Matrix morita_transform_point(const MoritaContext& ctx, const TransformData& td,
                              const Matrix& z) {
  const int h = td.sigma.space_dim;
  const int de = ctx.e.dim;
  const int dx = ctx.x.module.dim;
  if (z.rows() != td.fh.dim || z.cols() != h)
    throw std::invalid_argument("morita_transform_point: point shape mismatch");

  // X (x) H -> free X (x) (F (x) H) through z on the tail.
  Matrix step = apply_right_factor(Matrix(td.fh.pinv * z), td.xh.pinv, dx);
  // Fold into (X (x) F) (x) H and pull back through W*.
  step = apply_left_factor(ctx.xf.project, step, h);
  const Matrix w_inv_free = ctx.ex.embed * ctx.w.adjoint();
  step = apply_left_factor(w_inv_free, step, h);
  // Regroup free E (x) X (x) H as E (x) (X (x) H).
  step = apply_right_factor(td.xh.factor, step, de);
  return td.exh.factor * step;
}

Matrix commutant_lift(const MoritaContext& ctx, const TransformData& td, const Matrix& c) {
  return td.xh.factor * apply_right_factor(c, td.xh.pinv, ctx.x.module.dim);
}

StabilizationResult canonical_stabilization(const Correspondence& f, int level_cap,
                                            double rank_tol) {
  if (level_cap < 2)
    throw std::invalid_argument("canonical_stabilization: level cap must be at least 2");
  StabilizationResult st;
  st.truncation_level = level_cap;
  st.fock = build_truncated_fock(f, level_cap, rank_tol);
  st.total = fock_correspondence(st.fock);
  const int total = st.fock.total_dim();
  st.p0 = Matrix::Zero(total, total);
  for (int u = st.fock.level_offset(1); u < total; ++u) st.p0(u, u) = Complex(1, 0);
  st.shift = right_shift(st.fock, 0, level_cap - 1, rank_tol);
  return st;
}

Matrix rank_one_module_operator(const Correspondence& c, const Vector& x, const Vector& y) {
  const int n = c.right_algebra.ambient_dim;
  Matrix th = Matrix::Zero(c.dim, c.dim);
  for (int l = 0; l < c.dim; ++l) {
    Matrix b = Matrix::Zero(n, n);
    for (int j = 0; j < c.dim; ++j)
      if (y(j) != Complex(0, 0)) b += std::conj(y(j)) * c.gram[std::size_t(j)][std::size_t(l)];
    th.col(l) = c.right_action_of(b) * x;
  }
  return th;
}

Matrix stabilization_left_action(const StabilizationResult& st, const Matrix& a) {
  const int wt = st.fock.level_offset(st.truncation_level);
  const int df = st.fock.base.dim;
  const Matrix awin = a.topLeftCorner(wt, wt);
  const Matrix act = st.shift.domain.project * kron(awin, Matrix::Identity(df, df)) *
                     st.shift.domain.embed;
  return st.shift.matrix * act * st.shift.matrix.adjoint();
}

namespace {

/// (a (x) I_F) on the shift-domain coordinates, for a supported on levels
/// below the cap.
Matrix domain_tensor_action(const StabilizationResult& st, const Matrix& a) {
  const int wt = st.fock.level_offset(st.truncation_level);
  const int df = st.fock.base.dim;
  return st.shift.domain.project * kron(a.topLeftCorner(wt, wt), Matrix::Identity(df, df)) *
         st.shift.domain.embed;
}

}  // namespace

CheckReport verify_stabilization(const StabilizationResult& st, Rng& rng, int samples,
                                 double tol) {
  CheckReport r;
  const Matrix& rr = st.shift.matrix;
  const int total = st.fock.total_dim();
  const int domdim = st.shift.domain.corr.dim;
  const int wt = st.fock.level_offset(st.truncation_level);

  r.add("rr_star_p0", operator_norm(rr * rr.adjoint() - st.p0));
  r.add("r_star_r_identity",
        operator_norm(rr.adjoint() * rr - Matrix::Identity(domdim, domdim)));

  const Matrix w = rr.adjoint() * st.p0;
  r.add("w_isometry", operator_norm(w.adjoint() * w - st.p0));

  double rn = 0.0;
  for (int b = 0; b < st.total.right_algebra.dim(); ++b)
    rn = std::max(rn, operator_norm(w * st.total.right_action[std::size_t(b)] -
                                    st.shift.domain.corr.right_action[std::size_t(b)] * w));
  r.add("w_right_action", rn);

  auto window_vector = [&](void) {
    Vector v = Vector::Zero(total);
    v.head(wt) = rng.gaussian_vector(wt);
    return Vector(v / v.norm());
  };

  double wl = 0.0, hom = 0.0, star = 0.0, adj = 0.0, mod = 0.0, psd = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vector x = window_vector(), y = window_vector();
    const Vector x2 = window_vector(), y2 = window_vector();
    const Matrix a = rank_one_module_operator(st.total, x, y);
    const Matrix a2 = rank_one_module_operator(st.total, x2, y2);
    const Matrix pa = stabilization_left_action(st, a);
    const Matrix pa2 = stabilization_left_action(st, a2);

    wl = std::max(wl, operator_norm(rr.adjoint() * pa - domain_tensor_action(st, a) * rr.adjoint()));
    hom = std::max(hom, operator_norm(pa * pa2 - stabilization_left_action(st, Matrix(a * a2))));
    star = std::max(star,
                    operator_norm(stabilization_left_action(st, Matrix(a.adjoint())) - pa.adjoint()));
    adj = std::max(adj, operator_norm(Matrix(a.adjoint()) -
                                      rank_one_module_operator(st.total, y, x)));
    for (int b = 0; b < st.total.right_algebra.dim(); ++b) {
      const Matrix& rb = st.total.right_action[std::size_t(b)];
      mod = std::max(mod, operator_norm(a * rb - rb * a));
    }
    psd = std::max(psd, psd_defect(rank_one_module_operator(st.total, x, x)));
  }
  r.add("w_left_action", wl);
  r.add("phi_homomorphism", hom);
  r.add("phi_star", star);
  r.add("rank_one_adjoint", adj);
  r.add("rank_one_module_map", mod);
  r.add("rank_one_positivity", psd);
  (void)tol;
  return r;
}

MaterializedStabilization stabilization_context(const StabilizationResult& st,
                                                double rank_tol) {
  const Correspondence& total = st.total;
  const int n = total.dim;
  const StarAlgebra& nalg = total.right_algebra;

  MaterializedStabilization out;
  MoritaContext& ctx = out.ctx;
  ctx.f = st.fock.base;

  StarAlgebra malg = commutant_of_family(total.right_action, n);
  const int md = malg.dim();

  EquivalenceBimodule x;
  x.left_algebra = malg;
  x.right_algebra = nalg;
  x.module = total;
  x.module.left_algebra = malg;
  x.module.left_action = malg.basis;
  x.left_gram.assign(std::size_t(n), std::vector<Matrix>(std::size_t(n)));
  for (int i = 0; i < n; ++i) {
    Vector ei = Vector::Zero(n);
    ei(i) = Complex(1, 0);
    for (int j = 0; j < n; ++j) {
      Vector ej = Vector::Zero(n);
      ej(j) = Complex(1, 0);
      x.left_gram[std::size_t(i)][std::size_t(j)] = rank_one_module_operator(total, ei, ej);
    }
  }
  ctx.x = x;
  ctx.xdual = dual_bimodule(x);

  // E = P0 M: orthonormalize {P0 m_e} under the Hilbert-Schmidt inner
  // product, which is exactly the scalarized module Gram tr((P0 a)* P0 b).
  Matrix stack(Eigen::Index(n) * n, md);
  for (int e = 0; e < md; ++e) stack.col(e) = vec(Matrix(st.p0 * malg.basis[std::size_t(e)]));
  const Matrix q = column_space(stack, rank_tol);
  const int r = int(q.cols());
  std::vector<Matrix> ebasis(static_cast<std::size_t>(r));
  for (int a = 0; a < r; ++a) ebasis[std::size_t(a)] = unvec(q.col(a), n, n);

  Correspondence e;
  e.left_algebra = malg;
  e.right_algebra = malg;
  e.dim = r;
  e.gram.assign(std::size_t(r), std::vector<Matrix>(std::size_t(r)));
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      e.gram[std::size_t(a)][std::size_t(b)] =
          ebasis[std::size_t(a)].adjoint() * ebasis[std::size_t(b)];

  // Right action: coords of x_a . m against the HS-orthonormal basis; left
  // action likewise through phi_M(m) = R (m (x) I_F) R*.
  for (int mm = 0; mm < md; ++mm) {
    const Matrix& m = malg.basis[std::size_t(mm)];
    const Matrix rmat = apply_left_factor(m.transpose(), q, n);      // vec(x_a m)
    const Matrix phi = stabilization_left_action(st, m);
    const Matrix lmat = apply_right_factor(phi, q, n);               // vec(phi x_a)
    e.right_action.push_back(q.adjoint() * rmat);
    e.left_action.push_back(q.adjoint() * lmat);
  }
  ctx.e = e;

  ctx.xf = internal_tensor(x.module, ctx.f, rank_tol);
  ctx.ex = internal_tensor(e, x.module, rank_tol);

  // W(P0 a (x) xi) = R* P0 a xi, expressed on the free E (x) X coordinates
  // and embedded into X (x) F through the window inclusion.
  const int wt = st.fock.level_offset(st.truncation_level);
  const int df = st.fock.base.dim;
  const int domdim = st.shift.domain.corr.dim;
  Matrix pad = Matrix::Zero(Eigen::Index(n) * df, domdim);
  pad.topRows(Eigen::Index(wt) * df) = st.shift.domain.embed;
  const Matrix iota_rstar = ctx.xf.project * pad * st.shift.matrix.adjoint();
  Matrix wfree(ctx.xf.corr.dim, Eigen::Index(r) * n);
  for (int a = 0; a < r; ++a)
    wfree.middleCols(Eigen::Index(a) * n, n) = iota_rstar * ebasis[std::size_t(a)];
  ctx.w = wfree * ctx.ex.embed;
  out.e_basis = std::move(ebasis);
  return out;
}

Matrix reconstruction_operator(const StabilizationResult& st, const CovariantPair& pair) {
  if (pair.e.dim != st.fock.base.dim ||
      pair.e.right_algebra.ambient_dim != st.fock.base.right_algebra.ambient_dim)
    throw std::invalid_argument("reconstruction_operator: pair built over a different base");
  const Representation& sigma = pair.sigma;
  const int h = sigma.space_dim;
  const int total = st.fock.total_dim();
  const int df = st.fock.base.dim;
  const int wt = st.fock.level_offset(st.truncation_level);

  const InducedSpace ffh = induce_space(st.total, sigma);

  // Free-level right shift on F(F) (x) F; top-level coordinates are killed
  // by the truncation.
  Matrix mr = Matrix::Zero(total, Eigen::Index(total) * df);
  mr.leftCols(Eigen::Index(wt) * df) = st.shift.matrix * st.shift.domain.project;

  const Matrix c = pair.induced.pinv * pair.ttilde.adjoint();
  Matrix step = apply_right_factor(c, ffh.pinv, total);
  step = apply_left_factor(mr, step, h);
  return ffh.factor * step;
}

namespace {

std::vector<Matrix> truncated_right_creations(int d, int level_cap) {
  std::vector<int> off(1, 0);
  int dimk = 1;
  for (int k = 0; k <= level_cap; ++k) {
    off.push_back(off.back() + dimk);
    dimk *= d;
  }
  const int total = off.back();
  std::vector<Matrix> out;
  for (int i = 0; i < d; ++i) {
    Matrix ri = Matrix::Zero(total, total);
    int dk = 1;
    for (int k = 0; k < level_cap; ++k) {
      for (int idx = 0; idx < dk; ++idx)
        ri(off[std::size_t(k) + 1] + idx * d + i, off[std::size_t(k)] + idx) = Complex(1, 0);
      dk *= d;
    }
    out.push_back(std::move(ri));
  }
  return out;
}

}  // namespace

Matrix popescu_form(const std::vector<Matrix>& t_list, int level_cap) {
  const int d = int(t_list.size());
  if (d == 0) throw std::invalid_argument("popescu_form: empty tuple");
  const int h = int(t_list[0].rows());
  Matrix rowsum = Matrix::Zero(h, h);
  for (const Matrix& t : t_list) {
    if (t.rows() != h || t.cols() != h)
      throw std::invalid_argument("popescu_form: tuple entries must be square and same size");
    rowsum += t * t.adjoint();
  }
  if (psd_defect(Matrix::Identity(h, h) - rowsum) > 1e-8)
    throw std::invalid_argument("popescu_form: tuple is not a row contraction");

  const std::vector<Matrix> creations = truncated_right_creations(d, level_cap);
  const int total = int(creations[0].rows());
  Matrix out = Matrix::Zero(Eigen::Index(total) * h, Eigen::Index(total) * h);
  for (int i = 0; i < d; ++i) out += kron(creations[i], t_list[std::size_t(i)].adjoint());
  return out;
}

CheckReport popescu_row_isometry(int d, int level_cap) {
  const std::vector<Matrix> creations = truncated_right_creations(d, level_cap);
  int window = 0, dimk = 1;
  for (int k = 0; k < level_cap; ++k) {
    window += dimk;
    dimk *= d;
  }
  double iso = 0.0, orth = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Matrix g =
          (creations[std::size_t(i)].adjoint() * creations[std::size_t(j)]).topLeftCorner(window,
                                                                                          window);
      if (i == j)
        iso = std::max(iso, operator_norm(g - Matrix::Identity(window, window)));
      else
        orth = std::max(orth, operator_norm(g));
    }
  CheckReport r;
  r.add("row_isometry", iso);
  r.add("row_orthogonality", orth);
  return r;
}

}  // namespace tensoralg
