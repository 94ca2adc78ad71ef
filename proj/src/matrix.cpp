#include "tensoralg/matrix.hpp"

#include <stdexcept>

namespace tensoralg {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix matrix_unit(int n, int i, int j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

Vector vec(const Matrix& a) {
  return Eigen::Map<const Vector>(a.data(), a.size());
}

Matrix unvec(const Vector& v, int rows, int cols) {
  if (v.size() != Eigen::Index(rows) * cols)
    throw std::invalid_argument("unvec: size mismatch");
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  // Largest eigenvalue of a*a; relative accuracy of the top eigenvalue is at
  // machine precision, which is what norm-equality checks need.
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.adjoint() * a, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  return top > 0.0 ? std::sqrt(top) : 0.0;
}

Matrix hermitize(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

double hermiticity_defect(const Matrix& a) {
  return operator_norm(a - a.adjoint());
}

double psd_defect(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const double herm = hermiticity_defect(a);
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(a), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  return herm + (lo < 0.0 ? -lo : 0.0);
}

bool is_psd(const Matrix& a, double tol) { return psd_defect(a) <= tol; }

Matrix nullspace(const Matrix& a, double reltol) {
  if (a.size() == 0) return Matrix::Identity(a.cols(), a.cols());
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = sv.size() ? sv(0) * reltol : 0.0;
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  return svd.matrixV().rightCols(a.cols() - rank);
}

Matrix column_space(const Matrix& a, double reltol) {
  if (a.size() == 0 || a.norm() == 0.0) return Matrix(a.rows(), 0);
  Eigen::ColPivHouseholderQR<Matrix> qr(a);
  qr.setThreshold(reltol);
  const int rank = int(qr.rank());
  Matrix q = qr.householderQ() * Matrix::Identity(a.rows(), rank);
  return q;
}

PivotedCholesky pivoted_cholesky(const Matrix& g, double reltol) {
  const int n = int(g.rows());
  if (g.cols() != n) throw std::invalid_argument("pivoted_cholesky: square input required");
  PivotedCholesky out;
  if (n == 0) {
    out.lower = Matrix(0, 0);
    return out;
  }
  Eigen::VectorXd d = g.diagonal().real();
  const double d0 = d.maxCoeff();
  const double cut = d0 * reltol;
  Matrix l = Matrix::Zero(n, n);
  std::vector<char> used(n, 0);
  int k = 0;
  while (k < n) {
    int p = -1;
    double best = cut;
    for (int i = 0; i < n; ++i)
      if (!used[i] && d(i) > best) {
        best = d(i);
        p = i;
      }
    if (p < 0) break;
    used[p] = 1;
    out.pivots.push_back(p);
    const double piv = std::sqrt(d(p));
    // Column k of the factor: residual column p of g, scaled.
    Vector col = g.col(p);
    if (k > 0) col -= l.leftCols(k) * l.row(p).head(k).adjoint();
    col /= piv;
    col(p) = piv;  // kill roundoff on the pivot entry
    l.col(k) = col;
    for (int i = 0; i < n; ++i)
      if (!used[i]) d(i) = std::max(0.0, d(i) - std::norm(l(i, k)));
    ++k;
  }
  out.rank = k;
  out.lower = l.leftCols(k);
  return out;
}

Matrix inv_sqrt_psd(const Matrix& a, double reltol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(a));
  const auto& ev = es.eigenvalues();
  const double cut = ev.maxCoeff() * reltol;
  Eigen::VectorXd inv = ev;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) <= cut) throw std::runtime_error("inv_sqrt_psd: input numerically singular");
    inv(i) = 1.0 / std::sqrt(ev(i));
  }
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace tensoralg
