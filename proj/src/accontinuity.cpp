#include "tensoralg/accontinuity.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace tensoralg {

Matrix CPMap::apply(const Matrix& a) const {
  const Vector c = domain.coords(a);
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  for (int e = 0; e < domain.dim(); ++e) out += c(e) * images[std::size_t(e)];
  return out;
}

Matrix CPMap::coords_matrix() const {
  const int d = domain.dim();
  Matrix m(d, d);
  for (int e = 0; e < d; ++e) m.col(e) = domain.coords(images[std::size_t(e)]);
  return m;
}

double CPMap::spectral_radius() const {
  const Matrix m = coords_matrix();
  if (m.rows() == 0) return 0.0;
  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

CPMap cp_map_of_point(const Correspondence& e, const InducedSpace& induced,
                      const StarAlgebra& commutant, const Matrix& z) {
  if (z.rows() != induced.dim || z.cols() != commutant.ambient_dim)
    throw std::invalid_argument("cp_map_of_point: point shape mismatch");
  CPMap phi;
  phi.domain = commutant;
  for (int c = 0; c < commutant.dim(); ++c) {
    const Matrix lifted =
        induced.factor * apply_right_factor(commutant.basis[std::size_t(c)], induced.pinv, e.dim);
    phi.images.push_back(z.adjoint() * lifted * z);
  }
  return phi;
}

CheckReport check_cp_map(const CPMap& phi, double tol) {
  CheckReport r;
  double closure = 0.0, star = 0.0, pos = 0.0;
  for (int c = 0; c < phi.domain.dim(); ++c) {
    closure = std::max(closure, phi.domain.membership_defect(phi.images[std::size_t(c)]));
    star = std::max(star, operator_norm(phi.apply(phi.domain.basis[std::size_t(c)].adjoint()) -
                                        phi.images[std::size_t(c)].adjoint()));
  }
  for (const Matrix& p : psd_spanning_family(phi.domain))
    pos = std::max(pos, psd_defect(phi.apply(p)));
  r.add("commutant_closure", closure);
  r.add("star_preservation", star);
  r.add("positivity", pos);
  (void)tol;
  return r;
}

bool is_superharmonic(const CPMap& phi, const Matrix& a, double tol) {
  return psd_defect(a) <= tol && psd_defect(a - phi.apply(a)) <= tol;
}

namespace {

/// Norm ratio of the coordinate iterates of a between depth/2 and depth.
double decay_ratio(const CPMap& phi, const Matrix& a, int depth) {
  const Matrix m = phi.coords_matrix();
  Vector v = phi.domain.coords(a);
  const double start = v.norm();
  if (start < 1e-14) return 0.0;
  double half = start;
  for (int k = 0; k < depth; ++k) {
    v = m * v;
    if (k + 1 == depth / 2) half = v.norm();
  }
  if (half < 1e-14 * start) return 0.0;
  return v.norm() / half;
}

}  // namespace

bool is_pure_superharmonic(const CPMap& phi, const Matrix& a, double tol, int depth) {
  if (!is_superharmonic(phi, a, tol)) return false;
  return decay_ratio(phi, a, depth) < 0.1;
}

std::vector<Matrix> psd_spanning_family(const StarAlgebra& alg, double cutoff) {
  std::vector<Matrix> out;
  const int d = alg.dim();
  for (int j = 0; j < d; ++j) {
    const Matrix& bj = alg.basis[std::size_t(j)];
    Matrix p = bj * bj.adjoint();
    if (p.norm() > cutoff) out.push_back(std::move(p));
    for (int k = j + 1; k < d; ++k) {
      const Matrix& bk = alg.basis[std::size_t(k)];
      const Matrix sum = bj + bk;
      const Matrix twist = bj + Complex(0, 1) * bk;
      Matrix q = sum * sum.adjoint();
      Matrix r = twist * twist.adjoint();
      if (q.norm() > cutoff) out.push_back(std::move(q));
      if (r.norm() > cutoff) out.push_back(std::move(r));
    }
  }
  return out;
}

AcSubspace ac_subspace(const CPMap& phi, const Tolerances& tol) {
  const int h = phi.domain.ambient_dim;
  AcSubspace out;
  out.projection = Matrix::Zero(h, h);
  const std::vector<Matrix> family = psd_spanning_family(phi.domain);
  if (family.empty()) return out;

  const int d = phi.domain.dim();
  const Matrix m = phi.coords_matrix();
  Eigen::ComplexEigenSolver<Matrix> es(m, true);
  const Vector lambda = es.eigenvalues();
  bool any_peripheral = false;
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    if (std::abs(lambda(i)) > 1.0 - tol.peripheral) any_peripheral = true;

  // Resolvent of each generator: a_c = (id - Phi)^{-1}(c), restricted to the
  // non-peripheral spectral subspace when the inverse does not exist globally.
  std::vector<Vector> solutions;
  if (!any_peripheral) {
    const Eigen::PartialPivLU<Matrix> lu(Matrix(Matrix::Identity(d, d) - m));
    for (const Matrix& c : family)
      solutions.push_back(lu.solve(phi.domain.coords(c)));
  } else {
    const Eigen::FullPivLU<Matrix> vlu(es.eigenvectors());
    if (vlu.rank() < d) {
      // Defective peripheral linearization: no certified generators.
      out.indeterminate = true;
      return out;
    }
    for (const Matrix& c : family) {
      Vector y = vlu.solve(phi.domain.coords(c));
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (std::abs(lambda(i)) > 1.0 - tol.peripheral)
          y(i) = Complex(0, 0);
        else
          y(i) /= Complex(1, 0) - lambda(i);
      }
      solutions.push_back(es.eigenvectors() * y);
    }
  }

  std::vector<Matrix> pure;
  for (const Vector& x : solutions) {
    const Matrix a = hermitize(phi.domain.from_coords(x));
    if (a.norm() <= 1e-12) continue;  // generator entirely peripheral
    if (is_pure_superharmonic(phi, a, tol.psd, tol.purity_depth))
      pure.push_back(a);
    else
      out.indeterminate = true;  // present but not certifiable at this depth
  }

  if (pure.empty()) return out;
  Matrix stack(h, Eigen::Index(h) * Eigen::Index(pure.size()));
  for (std::size_t i = 0; i < pure.size(); ++i)
    stack.middleCols(Eigen::Index(i) * h, h) = pure[i];
  const Matrix q = column_space(stack, tol.rank);
  out.projection = q * q.adjoint();
  out.rank = int(q.cols());
  return out;
}

}  // namespace tensoralg
