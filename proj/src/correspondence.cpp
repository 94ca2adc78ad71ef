#include "tensoralg/correspondence.hpp"

#include <stdexcept>

namespace tensoralg {

Matrix apply_left_factor(const Matrix& a, const Matrix& x, int d2) {
  const int ac = int(a.cols());
  if (x.rows() != Eigen::Index(ac) * d2)
    throw std::invalid_argument("apply_left_factor: shape mismatch");
  Matrix out = Matrix::Zero(a.rows() * d2, x.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (int j = 0; j < ac; ++j)
      if (a(i, j) != Complex(0, 0))
        out.middleRows(i * d2, d2) += a(i, j) * x.middleRows(j * d2, d2);
  return out;
}

Matrix apply_right_factor(const Matrix& b, const Matrix& x, int d1) {
  const int bc = int(b.cols());
  if (x.rows() != Eigen::Index(d1) * bc)
    throw std::invalid_argument("apply_right_factor: shape mismatch");
  Matrix out(d1 * b.rows(), x.cols());
  for (int i = 0; i < d1; ++i)
    out.middleRows(i * b.rows(), b.rows()) = b * x.middleRows(i * bc, bc);
  return out;
}

Matrix Correspondence::right_action_of(const Matrix& b) const {
  const Vector c = right_algebra.coords(b);
  Matrix r = Matrix::Zero(dim, dim);
  for (int e = 0; e < right_algebra.dim(); ++e) r += c(e) * right_action[e];
  return r;
}

Matrix Correspondence::left_action_of(const Matrix& a) const {
  const Vector c = left_algebra.coords(a);
  Matrix l = Matrix::Zero(dim, dim);
  for (int e = 0; e < left_algebra.dim(); ++e) l += c(e) * left_action[e];
  return l;
}

Matrix Correspondence::pair(const Vector& u, const Vector& v) const {
  const int n = right_algebra.ambient_dim;
  Matrix out = Matrix::Zero(n, n);
  for (int i = 0; i < dim; ++i) {
    if (u(i) == Complex(0, 0)) continue;
    for (int j = 0; j < dim; ++j)
      out += std::conj(u(i)) * v(j) * gram[i][j];
  }
  return out;
}

Matrix Correspondence::scalar_gram() const {
  Matrix s(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) s(i, j) = gram[i][j].trace();
  return s;
}

CheckReport check_correspondence_axioms(const Correspondence& e, double tol) {
  CheckReport r;
  const int d = e.dim;
  const int n = e.right_algebra.ambient_dim;

  double herm = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      herm = std::max(herm, operator_norm(e.gram[i][j].adjoint() - e.gram[j][i]));
  r.add("gram_hermiticity", herm);

  // Positivity of the block Gram inside M_d(right ambient).
  Matrix big = Matrix::Zero(d * n, d * n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) big.block(i * n, j * n, n, n) = e.gram[i][j];
  r.add("positivity", psd_defect(big));

  // <xi_i, xi_j . b> = <xi_i, xi_j> b over the right basis.
  double rc = 0.0;
  for (int a = 0; a < e.right_algebra.dim(); ++a) {
    const Matrix& b = e.right_algebra.basis[a];
    const Matrix& ra = e.right_action[a];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Matrix lhs = Matrix::Zero(n, n);
        for (int k = 0; k < d; ++k)
          if (ra(k, j) != Complex(0, 0)) lhs += ra(k, j) * e.gram[i][k];
        rc = std::max(rc, operator_norm(lhs - e.gram[i][j] * b));
      }
  }
  r.add("right_compatibility", rc);

  // <phi(a) xi_i, xi_j> = <xi_i, phi(a*) xi_j> over the left basis.
  double sh = 0.0;
  for (int a = 0; a < e.left_algebra.dim(); ++a) {
    const Matrix la = e.left_action[a];
    const Matrix lastar = e.left_action_of(e.left_algebra.basis[a].adjoint());
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Matrix lhs = Matrix::Zero(n, n);
        Matrix rhs = Matrix::Zero(n, n);
        for (int k = 0; k < d; ++k) {
          if (la(k, i) != Complex(0, 0)) lhs += std::conj(la(k, i)) * e.gram[k][j];
          if (lastar(k, j) != Complex(0, 0)) rhs += lastar(k, j) * e.gram[i][k];
        }
        sh = std::max(sh, operator_norm(lhs - rhs));
      }
  }
  r.add("left_star_hom", sh);

  // Homomorphism and unitality of the two actions.
  double lm = 0.0, rm = 0.0;
  for (int a = 0; a < e.left_algebra.dim(); ++a)
    for (int b = 0; b < e.left_algebra.dim(); ++b)
      lm = std::max(lm, operator_norm(e.left_action[a] * e.left_action[b] -
                                      e.left_action_of(e.left_algebra.basis[a] *
                                                       e.left_algebra.basis[b])));
  for (int a = 0; a < e.right_algebra.dim(); ++a)
    for (int b = 0; b < e.right_algebra.dim(); ++b)
      rm = std::max(rm, operator_norm(e.right_action[b] * e.right_action[a] -
                                      e.right_action_of(e.right_algebra.basis[a] *
                                                        e.right_algebra.basis[b])));
  r.add("left_multiplicativity", lm);
  r.add("right_multiplicativity", rm);
  r.add("left_unitality",
        operator_norm(e.left_action_of(e.left_algebra.identity()) - Matrix::Identity(d, d)));
  r.add("right_unitality",
        operator_norm(e.right_action_of(e.right_algebra.identity()) - Matrix::Identity(d, d)));
  r.add("scalar_orthonormality", (e.scalar_gram() - Matrix::Identity(d, d)).norm());
  (void)tol;
  return r;
}

Correspondence algebra_as_correspondence(const StarAlgebra& m) {
  const int d = m.dim();
  Correspondence lev;
  lev.left_algebra = m;
  lev.right_algebra = m;
  lev.dim = d;
  lev.gram.assign(std::size_t(d), std::vector<Matrix>(std::size_t(d)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      lev.gram[std::size_t(i)][std::size_t(j)] =
          m.basis[std::size_t(i)].adjoint() * m.basis[std::size_t(j)];
  lev.right_action.assign(std::size_t(d), Matrix());
  lev.left_action.assign(std::size_t(d), Matrix());
  for (int e = 0; e < d; ++e) {
    Matrix r(d, d), l(d, d);
    for (int i = 0; i < d; ++i) {
      r.col(i) = m.coords(m.basis[std::size_t(i)] * m.basis[std::size_t(e)]);
      l.col(i) = m.coords(m.basis[std::size_t(e)] * m.basis[std::size_t(i)]);
    }
    lev.right_action[std::size_t(e)] = r;
    lev.left_action[std::size_t(e)] = l;
  }
  return lev;
}

BalancedTensor internal_tensor(const Correspondence& e, const Correspondence& f,
                               double rank_tol) {
  if (e.right_algebra.ambient_dim != f.left_algebra.ambient_dim ||
      e.right_algebra.dim() != f.left_algebra.dim())
    throw std::invalid_argument("internal_tensor: middle algebras do not match");
  const int de = e.dim, df = f.dim, big = de * df;
  const int nc = f.right_algebra.ambient_dim;

  // Scalarized Gram of the free product: block (i,k) equals
  // T_F . phi_F(<xi_i, xi_k>_E) where T_F is the scalarized Gram of F.
  Matrix tf = f.scalar_gram();
  const bool tf_trivial = (tf - Matrix::Identity(df, df)).norm() < 1e-13;
  Matrix s(big, big);
  std::vector<std::vector<Matrix>> lf(de, std::vector<Matrix>(de));
  for (int i = 0; i < de; ++i)
    for (int k = 0; k < de; ++k) {
      lf[i][k] = f.left_action_of(e.gram[i][k]);
      s.block(i * df, k * df, df, df) = tf_trivial ? lf[i][k] : Matrix(tf * lf[i][k]);
    }

  const PivotedCholesky pc = pivoted_cholesky(s, rank_tol);
  const int r = pc.rank;

  Matrix c(r, r);
  for (int a = 0; a < r; ++a) c.row(a) = pc.lower.row(pc.pivots[a]);

  BalancedTensor out;
  out.free_dim = big;
  out.pivots.assign(pc.pivots.begin(), pc.pivots.begin() + r);
  out.embed = Matrix::Zero(big, r);
  if (r > 0) {
    const Matrix cinv_adj =
        c.adjoint().triangularView<Eigen::Upper>().solve(Matrix::Identity(r, r));
    for (int a = 0; a < r; ++a) out.embed.row(pc.pivots[a]) = cinv_adj.row(a);
    Matrix s_rows(r, big);
    for (int a = 0; a < r; ++a) s_rows.row(a) = s.row(pc.pivots[a]);
    out.project = c.triangularView<Eigen::Lower>().solve(s_rows);
  } else {
    out.project = Matrix::Zero(0, big);
  }

  Correspondence& q = out.corr;
  q.left_algebra = e.left_algebra;
  q.right_algebra = f.right_algebra;
  q.dim = r;

  // Coefficient-valued Gram on the pivot set, then the triangular basis
  // change that restores scalar orthonormality.
  auto free_gram = [&](int u, int v) {
    const int iu = u / df, ju = u % df, iv = v / df, jv = v % df;
    Matrix g = Matrix::Zero(nc, nc);
    const Matrix& l = lf[iu][iv];
    for (int qq = 0; qq < df; ++qq)
      if (l(qq, jv) != Complex(0, 0)) g += l(qq, jv) * f.gram[ju][qq];
    return g;
  };
  if (r > 0) {
    const Matrix cinv = c.triangularView<Eigen::Lower>().solve(Matrix::Identity(r, r));
    std::vector<std::vector<Matrix>> gb(r, std::vector<Matrix>(r));
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) gb[a][b] = free_gram(pc.pivots[a], pc.pivots[b]);
    q.gram.assign(r, std::vector<Matrix>(r));
    std::vector<std::vector<Matrix>> tmp(r, std::vector<Matrix>(r));
    for (int a = 0; a < r; ++a)
      for (int be = 0; be < r; ++be) {
        Matrix acc = Matrix::Zero(nc, nc);
        for (int b = 0; b < r; ++b)
          if (cinv(be, b) != Complex(0, 0)) acc += std::conj(cinv(be, b)) * gb[a][b];
        tmp[a][be] = acc;
      }
    for (int al = 0; al < r; ++al)
      for (int be = 0; be < r; ++be) {
        Matrix acc = Matrix::Zero(nc, nc);
        for (int a = 0; a < r; ++a)
          if (cinv(al, a) != Complex(0, 0)) acc += cinv(al, a) * tmp[a][be];
        q.gram[al][be] = acc;
      }
  } else {
    q.gram.clear();
  }

  for (int b = 0; b < f.right_algebra.dim(); ++b)
    q.right_action.push_back(out.project *
                             apply_right_factor(f.right_action[b], out.embed, de));
  for (int a = 0; a < e.left_algebra.dim(); ++a)
    q.left_action.push_back(out.project * apply_left_factor(e.left_action[a], out.embed, df));
  return out;
}

Matrix EquivalenceBimodule::left_pair(const Vector& u, const Vector& v) const {
  const int n = left_algebra.ambient_dim;
  Matrix out = Matrix::Zero(n, n);
  for (int i = 0; i < module.dim; ++i) {
    if (u(i) == Complex(0, 0)) continue;
    for (int j = 0; j < module.dim; ++j)
      out += u(i) * std::conj(v(j)) * left_gram[i][j];
  }
  return out;
}

CheckReport check_equivalence_bimodule(const EquivalenceBimodule& x, double tol) {
  CheckReport r;
  r.absorb("module.", check_correspondence_axioms(x.module, tol));
  const int d = x.module.dim;
  const int nm = x.left_algebra.ambient_dim;

  double herm = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      herm = std::max(herm, operator_norm(x.left_gram[i][j].adjoint() - x.left_gram[j][i]));
  r.add("left_gram_hermiticity", herm);

  // Strong positivity: the block matrix [ M<x_i, x_j> ]_{ij} is PSD (for
  // vector tuples w_i, sum_{ij} w_i* M<x_i, x_j> w_j >= 0).
  Matrix big = Matrix::Zero(d * nm, d * nm);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) big.block(i * nm, j * nm, nm, nm) = x.left_gram[i][j];
  r.add("left_gram_positivity", psd_defect(big));

  // M<phi(a) x_i, x_j> = a M<x_i, x_j>.
  double lc = 0.0;
  for (int a = 0; a < x.left_algebra.dim(); ++a) {
    const Matrix& la = x.module.left_action[a];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Matrix lhs = Matrix::Zero(nm, nm);
        for (int k = 0; k < d; ++k)
          if (la(k, i) != Complex(0, 0)) lhs += la(k, i) * x.left_gram[k][j];
        lc = std::max(lc, operator_norm(lhs - x.left_algebra.basis[a] * x.left_gram[i][j]));
      }
  }
  r.add("left_gram_left_compat", lc);

  // M<x_i . b, x_j> = M<x_i, x_j . b*>.
  double rc = 0.0;
  for (int bidx = 0; bidx < x.right_algebra.dim(); ++bidx) {
    const Matrix& rb = x.module.right_action[bidx];
    const Matrix rbstar = x.module.right_action_of(x.right_algebra.basis[bidx].adjoint());
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Matrix lhs = Matrix::Zero(nm, nm);
        Matrix rhs = Matrix::Zero(nm, nm);
        for (int k = 0; k < d; ++k) {
          if (rb(k, i) != Complex(0, 0)) lhs += rb(k, i) * x.left_gram[k][j];
          if (rbstar(k, j) != Complex(0, 0)) rhs += std::conj(rbstar(k, j)) * x.left_gram[i][k];
        }
        rc = std::max(rc, operator_norm(lhs - rhs));
      }
  }
  r.add("left_gram_right_compat", rc);

  // Fullness of both inner products.
  {
    Matrix right_span(x.right_algebra.dim(), d * d);
    Matrix left_span(x.left_algebra.dim(), d * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        right_span.col(i * d + j) = x.right_algebra.coords(x.module.gram[i][j]);
        left_span.col(i * d + j) = x.left_algebra.coords(x.left_gram[i][j]);
      }
    const int rrank = int(column_space(right_span).cols());
    const int lrank = int(column_space(left_span).cols());
    r.add("right_fullness_deficit", double(x.right_algebra.dim() - rrank));
    r.add("left_fullness_deficit", double(x.left_algebra.dim() - lrank));
  }

  // M<x_i, x_j> . x_k = x_i . <x_j, x_k>_N.
  double comp = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Matrix lact = x.module.left_action_of(x.left_gram[i][j]);
      for (int k = 0; k < d; ++k) {
        const Vector lhs = lact.col(k);
        const Vector rhs = x.module.right_action_of(x.module.gram[j][k]).col(i);
        comp = std::max(comp, (lhs - rhs).norm());
      }
    }
  r.add("compatibility", comp);
  return r;
}

EquivalenceBimodule dual_bimodule(const EquivalenceBimodule& x) {
  const int d = x.module.dim;
  EquivalenceBimodule out;
  out.left_algebra = x.right_algebra;
  out.right_algebra = x.left_algebra;

  Correspondence& m = out.module;
  m.left_algebra = x.right_algebra;
  m.right_algebra = x.left_algebra;
  m.dim = d;
  m.gram.assign(d, std::vector<Matrix>(d));
  out.left_gram.assign(d, std::vector<Matrix>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      m.gram[i][j] = x.left_gram[i][j];
      out.left_gram[i][j] = x.module.gram[i][j];
    }
  for (int a = 0; a < x.left_algebra.dim(); ++a)
    m.right_action.push_back(
        x.module.left_action_of(x.left_algebra.basis[a].adjoint()).conjugate());
  for (int b = 0; b < x.right_algebra.dim(); ++b)
    m.left_action.push_back(
        x.module.right_action_of(x.right_algebra.basis[b].adjoint()).conjugate());
  return out;
}

CheckReport check_correspondence_isomorphism(const CorrespondenceMap& w, double tol) {
  CheckReport r;
  const Correspondence& s = w.source;
  const Correspondence& t = w.target;
  if (s.right_algebra.ambient_dim != t.right_algebra.ambient_dim)
    throw std::invalid_argument("check_correspondence_isomorphism: coefficient mismatch");

  double iso = 0.0;
  for (int i = 0; i < s.dim; ++i)
    for (int j = 0; j < s.dim; ++j)
      iso = std::max(iso, operator_norm(t.pair(w.matrix.col(i), w.matrix.col(j)) -
                                        s.gram[i][j]));
  r.add("isometry", iso);

  int rank = 0;
  if (w.matrix.size() > 0) {
    Eigen::ColPivHouseholderQR<Matrix> qr(w.matrix);
    qr.setThreshold(1e-10);
    rank = int(qr.rank());
  }
  r.add("surjectivity_deficit", double(t.dim - rank));

  double left = 0.0;
  for (int a = 0; a < s.left_algebra.dim(); ++a)
    left = std::max(left,
                    operator_norm(w.matrix * s.left_action[a] - t.left_action[a] * w.matrix));
  r.add("left_intertwining", left);

  double right = 0.0;
  for (int b = 0; b < s.right_algebra.dim(); ++b)
    right = std::max(right, operator_norm(w.matrix * s.right_action[b] -
                                          t.right_action[b] * w.matrix));
  r.add("right_intertwining", right);
  (void)tol;
  return r;
}

Correspondence subcorrespondence(const Correspondence& e, const std::vector<int>& keep,
                                 double* defect) {
  const int k = int(keep.size());
  Correspondence out;
  out.left_algebra = e.left_algebra;
  out.right_algebra = e.right_algebra;
  out.dim = k;
  out.gram.assign(k, std::vector<Matrix>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) out.gram[i][j] = e.gram[keep[i]][keep[j]];

  double worst = 0.0;
  auto restrict_op = [&](const Matrix& full) {
    Matrix sub(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub(i, j) = full(keep[i], keep[j]);
    // Leakage of the restricted action outside the kept span.
    std::vector<char> kept(e.dim, 0);
    for (int i : keep) kept[i] = 1;
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < e.dim; ++i)
        if (!kept[i]) worst = std::max(worst, std::abs(full(i, keep[j])));
    return sub;
  };
  for (const auto& ra : e.right_action) out.right_action.push_back(restrict_op(ra));
  for (const auto& la : e.left_action) out.left_action.push_back(restrict_op(la));
  if (defect) *defect = worst;
  return out;
}

}  // namespace tensoralg
