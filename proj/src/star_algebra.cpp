#include "tensoralg/star_algebra.hpp"

#include <stdexcept>

namespace tensoralg {

namespace {

// Incremental orthonormalizer over vec'd matrices (modified Gram-Schmidt with
// one reorthogonalization pass; deterministic).
class SpanBuilder {
 public:
  explicit SpanBuilder(int ambient) : n_(ambient) {}

  bool add(const Matrix& cand, double reltol = 1e-9) {
    Vector v = vec(cand);
    const double scale = std::max(1.0, v.norm());
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : q_) v -= (q.dot(v)) * q;
    if (v.norm() <= reltol * scale) return false;
    v.normalize();
    q_.push_back(v);
    mats_.push_back(unvec(v, n_, n_));
    return true;
  }

  const std::vector<Matrix>& matrices() const { return mats_; }
  int size() const { return int(q_.size()); }

 private:
  int n_;
  std::vector<Vector> q_;
  std::vector<Matrix> mats_;
};

void append_star_closed(std::vector<Matrix>& out, const std::vector<Matrix>& gens) {
  for (const auto& g : gens) out.push_back(g);
  for (const auto& g : gens) {
    const Matrix ga = g.adjoint();
    bool dup = false;
    for (const auto& h : out)
      if ((h - ga).norm() <= 1e-14 * std::max(1.0, ga.norm())) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(ga);
  }
}

}  // namespace

Vector StarAlgebra::coords(const Matrix& x) const {
  Vector c(dim());
  for (int e = 0; e < dim(); ++e) c(e) = (basis[e].adjoint() * x).trace();
  return c;
}

Matrix StarAlgebra::from_coords(const Vector& c) const {
  if (c.size() != dim()) throw std::invalid_argument("from_coords: coordinate size mismatch");
  Matrix x = Matrix::Zero(ambient_dim, ambient_dim);
  for (int e = 0; e < dim(); ++e) x += c(e) * basis[e];
  return x;
}

double StarAlgebra::membership_defect(const Matrix& x) const {
  return operator_norm(x - project(x));
}

bool StarAlgebra::is_abelian(double tol) const {
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j)
      if (operator_norm(basis[i] * basis[j] - basis[j] * basis[i]) > tol) return false;
  return true;
}

CheckReport StarAlgebra::check(double tol) const {
  CheckReport r;
  const int m = dim();
  Matrix g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g(i, j) = (basis[i].adjoint() * basis[j]).trace();
  r.add("basis_orthonormality", (g - Matrix::Identity(m, m)).norm());
  double star = 0.0, prod = 0.0;
  for (int i = 0; i < m; ++i) {
    star = std::max(star, membership_defect(basis[i].adjoint()));
    for (int j = 0; j < m; ++j)
      prod = std::max(prod, membership_defect(basis[i] * basis[j]));
  }
  r.add("adjoint_closure", star);
  r.add("product_closure", prod);
  r.add("identity_membership", contains_identity ? membership_defect(identity()) : 0.0);
  (void)tol;
  return r;
}

StarAlgebra star_algebra_from_generators(const std::vector<Matrix>& gens, int ambient_dim) {
  for (const auto& g : gens)
    if (g.rows() != ambient_dim || g.cols() != ambient_dim)
      throw std::invalid_argument("star_algebra_from_generators: generator shape mismatch");

  StarAlgebra a;
  a.ambient_dim = ambient_dim;
  a.contains_identity = true;
  append_star_closed(a.generators, gens);

  SpanBuilder span(ambient_dim);
  span.add(Matrix::Identity(ambient_dim, ambient_dim));
  for (const auto& g : a.generators) span.add(g);

  // Closure under products; each round multiplies all current pairs.  The
  // dimension is capped by ambient_dim^2, so this terminates.
  bool grew = true;
  while (grew && span.size() < ambient_dim * ambient_dim) {
    grew = false;
    const auto current = span.matrices();  // copy: the loop extends the span
    for (const auto& x : current) {
      for (const auto& y : current)
        if (span.add(x * y)) grew = true;
      if (span.add(x.adjoint())) grew = true;
    }
  }
  a.basis = span.matrices();
  return a;
}

StarAlgebra full_matrix_algebra(int n) {
  StarAlgebra a;
  a.ambient_dim = n;
  a.contains_identity = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a.basis.push_back(matrix_unit(n, i, j));
  if (n > 1) {
    // Cyclic shift plus a rank-one projection generate M_n.
    Matrix s = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) s((i + 1) % n, i) = 1.0;
    a.generators = {s, s.adjoint(), matrix_unit(n, 0, 0)};
  }
  return a;
}

StarAlgebra scalar_algebra(int n) {
  StarAlgebra a;
  a.ambient_dim = n;
  a.contains_identity = true;
  a.basis = {Matrix::Identity(n, n) / std::sqrt(double(n))};
  return a;
}

StarAlgebra diagonal_algebra(int n) {
  StarAlgebra a;
  a.ambient_dim = n;
  a.contains_identity = true;
  for (int i = 0; i < n; ++i) a.basis.push_back(matrix_unit(n, i, i));
  return a;
}

namespace {

// Joint eigenspace partition of a commuting family of Hermitian matrices.
// Returns isometries V_c whose columns span the joint eigenspaces.
std::vector<Matrix> joint_eigenspaces(const std::vector<Matrix>& herms, int n) {
  std::vector<Matrix> spaces = {Matrix::Identity(n, n)};
  for (const auto& h : herms) {
    const double scale = std::max(1.0, operator_norm(h));
    std::vector<Matrix> next;
    for (const auto& v : spaces) {
      if (v.cols() == 1) {
        next.push_back(v);
        continue;
      }
      Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(v.adjoint() * h * v));
      const auto& ev = es.eigenvalues();
      const Matrix w = v * es.eigenvectors();
      int lo = 0;
      for (int i = 1; i <= ev.size(); ++i) {
        if (i == ev.size() || ev(i) - ev(lo) > 1e-8 * scale) {
          next.push_back(w.middleCols(lo, i - lo));
          lo = i;
        }
      }
    }
    spaces.swap(next);
  }
  return spaces;
}

}  // namespace

StarAlgebra commutant_of_family(const std::vector<Matrix>& basis_set, int ambient_dim) {
  const int n = ambient_dim;
  StarAlgebra out;
  out.ambient_dim = n;
  out.contains_identity = true;

  if (basis_set.empty()) return full_matrix_algebra(n);

  bool abelian = true;
  for (size_t i = 0; i < basis_set.size() && abelian; ++i)
    for (size_t j = i + 1; j < basis_set.size() && abelian; ++j)
      if (operator_norm(basis_set[i] * basis_set[j] - basis_set[j] * basis_set[i]) > 1e-10)
        abelian = false;

  if (abelian) {
    // The commutant of a commuting *-closed family is the block algebra over
    // its joint eigenspaces.
    std::vector<Matrix> herms;
    for (const auto& b : basis_set) {
      herms.push_back(hermitize(b));
      const Matrix anti = Complex(0, 1) * (b.adjoint() - b) * 0.5;
      if (operator_norm(anti) > 1e-14) herms.push_back(anti);
    }
    const auto spaces = joint_eigenspaces(herms, n);
    for (const auto& v : spaces) {
      const int k = int(v.cols());
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          out.basis.push_back(v.col(i) * v.col(j).adjoint());
    }
    return out;
  }

  // General case: kernel of x -> a x - x a stacked over the family.
  std::vector<Matrix> fam;
  append_star_closed(fam, basis_set);
  Matrix sys(fam.size() * n * n, n * n);
  const Matrix id = Matrix::Identity(n, n);
  for (size_t t = 0; t < fam.size(); ++t)
    sys.middleRows(t * n * n, n * n) =
        kron(id, fam[t]) - kron(fam[t].transpose(), id);
  const Matrix null = nullspace(sys);
  for (Eigen::Index c = 0; c < null.cols(); ++c)
    out.basis.push_back(unvec(null.col(c), n, n));
  return out;
}

StarAlgebra commutant(const StarAlgebra& a) {
  return commutant_of_family(a.generating_set(), a.ambient_dim);
}

bool same_algebra(const StarAlgebra& a, const StarAlgebra& b, double tol) {
  if (a.ambient_dim != b.ambient_dim || a.dim() != b.dim()) return false;
  for (const auto& x : a.basis)
    if (b.membership_defect(x) > tol) return false;
  for (const auto& x : b.basis)
    if (a.membership_defect(x) > tol) return false;
  return true;
}

}  // namespace tensoralg
