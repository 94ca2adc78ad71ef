#include "tensoralg/generators.hpp"

#include <numeric>
#include <stdexcept>

namespace tensoralg {

namespace {

/// Offsets of the diagonal blocks inside the block-diagonal ambient space.
std::vector<int> block_offsets(const std::vector<int>& sizes) {
  std::vector<int> off(1, 0);
  for (int s : sizes) off.push_back(off.back() + s);
  return off;
}

/// Well-conditioned random positive definite matrix (spectrum in [1, 3/2]).
Matrix random_twist(Rng& rng, int n) {
  if (n == 0) return Matrix(0, 0);
  Matrix g = rng.gaussian_matrix(n, n);
  Matrix p = g * g.adjoint();
  const double scale = p.trace().real() / n;
  return Matrix::Identity(n, n) + 0.5 / std::max(scale, 1e-30) * p;
}

}  // namespace

BlockAlgebra random_block_algebra(Rng& rng, const std::vector<int>& block_sizes) {
  if (block_sizes.empty())
    throw std::invalid_argument("random_block_algebra: need at least one block");
  const std::vector<int> off = block_offsets(block_sizes);
  const int n = off.back();

  BlockAlgebra out;
  out.block_sizes = block_sizes;
  out.unitary = rng.haar_unitary(n);

  StarAlgebra a;
  a.ambient_dim = n;
  a.contains_identity = true;
  for (std::size_t s = 0; s < block_sizes.size(); ++s)
    for (int i = 0; i < block_sizes[s]; ++i)
      for (int j = 0; j < block_sizes[s]; ++j) {
        Matrix unit = Matrix::Zero(n, n);
        unit(off[s] + i, off[s] + j) = 1.0;
        a.basis.push_back(out.unitary * unit * out.unitary.adjoint());
      }

  // Small *-closed generating set: a self-adjoint element separating the
  // blocks, the direct sum of cyclic shifts (which with a corner projection
  // generates each full block), and that corner projection.
  Matrix sep = Matrix::Zero(n, n), shift = Matrix::Zero(n, n), corner = Matrix::Zero(n, n);
  for (std::size_t s = 0; s < block_sizes.size(); ++s) {
    const int p = block_sizes[s];
    for (int i = 0; i < p; ++i) {
      sep(off[s] + i, off[s] + i) = double(s + 1);
      shift(off[s] + (i + 1) % p, off[s] + i) = 1.0;
    }
    corner(off[s], off[s]) = 1.0;
  }
  for (const Matrix& g : {sep, shift, Matrix(shift.adjoint()), corner})
    a.generators.push_back(out.unitary * g * out.unitary.adjoint());

  out.algebra = std::move(a);
  return out;
}

Representation random_representation(const BlockAlgebra& a, Rng& rng,
                                     const std::vector<int>& mults) {
  if (mults.size() != a.block_sizes.size())
    throw std::invalid_argument("random_representation: one multiplicity per block");
  const std::vector<int> off = block_offsets(a.block_sizes);
  std::vector<int> rep_off(1, 0);
  for (std::size_t s = 0; s < mults.size(); ++s) {
    if (mults[s] < 1)
      throw std::invalid_argument("random_representation: multiplicities must be >= 1");
    rep_off.push_back(rep_off.back() + mults[s] * a.block_sizes[s]);
  }
  const int h = rep_off.back();
  const Matrix v = rng.haar_unitary(h);

  Representation sigma;
  sigma.algebra = a.algebra;
  sigma.space_dim = h;
  for (const Matrix& x : a.algebra.basis) {
    const Matrix plain = a.unitary.adjoint() * x * a.unitary;
    Matrix img = Matrix::Zero(h, h);
    for (std::size_t s = 0; s < mults.size(); ++s) {
      const int p = a.block_sizes[s];
      img.block(rep_off[s], rep_off[s], p * mults[s], p * mults[s]) =
          kron(plain.block(off[s], off[s], p, p), Matrix::Identity(mults[s], mults[s]));
    }
    sigma.images.push_back(v * img * v.adjoint());
  }
  return sigma;
}

Correspondence random_correspondence(const BlockAlgebra& left, const BlockAlgebra& right,
                                     Rng& rng, const std::vector<std::vector<int>>& mult) {
  if (mult.size() != left.block_sizes.size())
    throw std::invalid_argument("random_correspondence: mult rows must match left blocks");
  int k = 1;
  for (const auto& row : mult) {
    if (row.size() != right.block_sizes.size())
      throw std::invalid_argument("random_correspondence: mult cols must match right blocks");
    for (int c : row) k = std::max(k, c);
  }

  const std::vector<int> loff = block_offsets(left.block_sizes);
  const std::vector<int> roff = block_offsets(right.block_sizes);
  const int p = loff.back(), q = roff.back();

  // Concrete elements are maps C^q -> C^p (x) C^k; the left algebra acts on
  // the C^p factor, the multiplicity factor C^k is inert.  The inner product
  // is the trace-orthogonal expectation onto the right algebra of z1* W z2
  // with W positive in the commutant of the left action.
  const Matrix lift = kron(left.unitary, Matrix::Identity(k, k));
  Matrix twist = Matrix::Zero(p * k, p * k);
  for (std::size_t s = 0; s < left.block_sizes.size(); ++s) {
    const Matrix w = random_twist(rng, k);
    for (int i = 0; i < left.block_sizes[s]; ++i)
      twist.block((loff[s] + i) * k, (loff[s] + i) * k, k, k) = w;
  }
  twist = lift * twist * lift.adjoint();

  std::vector<Matrix> raw;
  for (std::size_t s = 0; s < left.block_sizes.size(); ++s)
    for (std::size_t t = 0; t < right.block_sizes.size(); ++t) {
      const int c = mult[s][t];
      if (c == 0) continue;
      const Matrix v = rng.haar_unitary(k).leftCols(c);
      for (int mu = 0; mu < c; ++mu)
        for (int i = 0; i < left.block_sizes[s]; ++i)
          for (int j = 0; j < right.block_sizes[t]; ++j) {
            Matrix z = Matrix::Zero(p * k, q);
            z.block((loff[s] + i) * k, roff[t] + j, k, 1) = v.col(mu);
            raw.push_back(lift * z * right.unitary.adjoint());
          }
    }
  const int dim = int(raw.size());
  if (dim == 0) throw std::invalid_argument("random_correspondence: empty multiplicity");

  // Orthonormalize under the scalarized inner product tr(z1* W z2), then mix
  // with a Haar unitary so the stored basis is generic.
  Matrix s_raw(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      s_raw(i, j) = (raw[std::size_t(i)].adjoint() * twist * raw[std::size_t(j)]).trace();
  const Matrix c_mat = inv_sqrt_psd(hermitize(s_raw)) * rng.haar_unitary(dim);

  std::vector<Matrix> basis(std::size_t(dim), Matrix::Zero(p * k, q));
  for (int b = 0; b < dim; ++b)
    for (int i = 0; i < dim; ++i)
      basis[std::size_t(b)] += c_mat(i, b) * raw[std::size_t(i)];

  Correspondence e;
  e.left_algebra = left.algebra;
  e.right_algebra = right.algebra;
  e.dim = dim;
  e.gram.assign(std::size_t(dim), std::vector<Matrix>(std::size_t(dim)));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      e.gram[std::size_t(i)][std::size_t(j)] = right.algebra.project(
          basis[std::size_t(i)].adjoint() * twist * basis[std::size_t(j)]);

  for (int b = 0; b < right.algebra.dim(); ++b) {
    Matrix act(dim, dim);
    for (int j = 0; j < dim; ++j) {
      const Matrix img = basis[std::size_t(j)] * right.algebra.basis[std::size_t(b)];
      for (int i = 0; i < dim; ++i)
        act(i, j) = (basis[std::size_t(i)].adjoint() * twist * img).trace();
    }
    e.right_action.push_back(std::move(act));
  }
  for (int a = 0; a < left.algebra.dim(); ++a) {
    const Matrix op = kron(left.algebra.basis[std::size_t(a)], Matrix::Identity(k, k));
    Matrix act(dim, dim);
    for (int j = 0; j < dim; ++j) {
      const Matrix img = op * basis[std::size_t(j)];
      for (int i = 0; i < dim; ++i)
        act(i, j) = (basis[std::size_t(i)].adjoint() * twist * img).trace();
    }
    e.left_action.push_back(std::move(act));
  }
  return e;
}

EquivalenceBimodule random_equivalence_bimodule(const BlockAlgebra& left,
                                                const BlockAlgebra& right, Rng& rng) {
  if (left.block_sizes.size() != right.block_sizes.size())
    throw std::invalid_argument("random_equivalence_bimodule: block counts must agree");
  const std::vector<int> loff = block_offsets(left.block_sizes);
  const std::vector<int> roff = block_offsets(right.block_sizes);
  const int p = loff.back(), q = roff.back();
  const std::size_t blocks = left.block_sizes.size();

  // Concrete elements: block-diagonal rectangular matrices pairing block s
  // with block s.  Both inner products carry the same positive block weight,
  // which keeps the associativity identity exact.
  std::vector<double> weight(blocks);
  for (auto& w : weight) w = rng.uniform(0.5, 2.0);

  std::vector<Matrix> raw;
  for (std::size_t s = 0; s < blocks; ++s)
    for (int i = 0; i < left.block_sizes[s]; ++i)
      for (int j = 0; j < right.block_sizes[s]; ++j) {
        Matrix z = Matrix::Zero(p, q);
        z(loff[s] + i, roff[s] + j) = 1.0 / std::sqrt(weight[s]);
        raw.push_back(left.unitary * z * right.unitary.adjoint());
      }
  const int dim = int(raw.size());

  // The raw basis is already orthonormal under tr of the weighted right
  // inner product; mix it with a Haar unitary.
  const Matrix mix = rng.haar_unitary(dim);
  std::vector<Matrix> basis(std::size_t(dim), Matrix::Zero(p, q));
  for (int b = 0; b < dim; ++b)
    for (int i = 0; i < dim; ++i)
      basis[std::size_t(b)] += mix(i, b) * raw[std::size_t(i)];

  // The weight enters the inner products through the left-block weights:
  // <z1, z2>_N = sum_s weight_s z1_s* z2_s, expressed via the weight as a
  // central positive element of the left algebra.
  Matrix wleft = Matrix::Zero(p, p);
  for (std::size_t s = 0; s < blocks; ++s)
    for (int i = 0; i < left.block_sizes[s]; ++i) wleft(loff[s] + i, loff[s] + i) = weight[s];
  wleft = left.unitary * wleft * left.unitary.adjoint();

  EquivalenceBimodule x;
  x.left_algebra = left.algebra;
  x.right_algebra = right.algebra;
  x.module.left_algebra = left.algebra;
  x.module.right_algebra = right.algebra;
  x.module.dim = dim;
  x.module.gram.assign(std::size_t(dim), std::vector<Matrix>(std::size_t(dim)));
  x.left_gram.assign(std::size_t(dim), std::vector<Matrix>(std::size_t(dim)));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      x.module.gram[std::size_t(i)][std::size_t(j)] = right.algebra.project(
          basis[std::size_t(i)].adjoint() * wleft * basis[std::size_t(j)]);
      x.left_gram[std::size_t(i)][std::size_t(j)] = left.algebra.project(
          wleft * basis[std::size_t(i)] * basis[std::size_t(j)].adjoint());
    }

  for (int b = 0; b < right.algebra.dim(); ++b) {
    Matrix act(dim, dim);
    for (int j = 0; j < dim; ++j) {
      const Matrix img = basis[std::size_t(j)] * right.algebra.basis[std::size_t(b)];
      for (int i = 0; i < dim; ++i)
        act(i, j) = (basis[std::size_t(i)].adjoint() * wleft * img).trace();
    }
    x.module.right_action.push_back(std::move(act));
  }
  for (int a = 0; a < left.algebra.dim(); ++a) {
    Matrix act(dim, dim);
    for (int j = 0; j < dim; ++j) {
      const Matrix img = left.algebra.basis[std::size_t(a)] * basis[std::size_t(j)];
      for (int i = 0; i < dim; ++i)
        act(i, j) = (basis[std::size_t(i)].adjoint() * wleft * img).trace();
    }
    x.module.left_action.push_back(std::move(act));
  }
  return x;
}

Matrix random_ball_point(const std::vector<Matrix>& basis, Rng& rng, bool boundary,
                         double interior_cap) {
  if (basis.empty()) throw std::invalid_argument("random_ball_point: empty basis");
  Matrix z = Matrix::Zero(basis.front().rows(), basis.front().cols());
  for (const Matrix& b : basis) z += rng.complex_normal() * b;
  const double norm = operator_norm(z);
  if (norm < 1e-14) return z;
  if (boundary) return z / norm;
  return z * (rng.uniform(0.1, interior_cap) / norm);
}

Correspondence scalar_correspondence(int d) {
  Correspondence e;
  e.left_algebra = scalar_algebra(1);
  e.right_algebra = e.left_algebra;
  e.dim = d;
  e.gram.assign(std::size_t(d), std::vector<Matrix>(std::size_t(d)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      e.gram[std::size_t(i)][std::size_t(j)] =
          (i == j) ? Matrix(Matrix::Identity(1, 1)) : Matrix(Matrix::Zero(1, 1));
  e.right_action.assign(1, Matrix::Identity(d, d));
  e.left_action.assign(1, Matrix::Identity(d, d));
  return e;
}

EquivalenceBimodule column_bimodule(int n) {
  EquivalenceBimodule x;
  x.left_algebra = full_matrix_algebra(n);
  x.right_algebra = scalar_algebra(1);
  Correspondence& m = x.module;
  m.left_algebra = x.left_algebra;
  m.right_algebra = x.right_algebra;
  m.dim = n;
  m.gram.assign(std::size_t(n), std::vector<Matrix>(std::size_t(n)));
  x.left_gram.assign(std::size_t(n), std::vector<Matrix>(std::size_t(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m.gram[std::size_t(i)][std::size_t(j)] =
          (i == j) ? Matrix(Matrix::Identity(1, 1)) : Matrix(Matrix::Zero(1, 1));
      x.left_gram[std::size_t(i)][std::size_t(j)] = matrix_unit(n, i, j);
    }
  m.right_action.assign(1, Matrix::Identity(n, n));
  for (int a = 0; a < x.left_algebra.dim(); ++a)
    m.left_action.push_back(x.left_algebra.basis[std::size_t(a)]);
  return x;
}

EquivalenceBimodule identity_bimodule(const StarAlgebra& a) {
  EquivalenceBimodule x;
  x.left_algebra = a;
  x.right_algebra = a;
  x.module = algebra_as_correspondence(a);
  const int d = a.dim();
  x.left_gram.assign(std::size_t(d), std::vector<Matrix>(std::size_t(d)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      x.left_gram[std::size_t(i)][std::size_t(j)] =
          a.basis[std::size_t(i)] * a.basis[std::size_t(j)].adjoint();
  return x;
}

Correspondence matrix_over_diagonal(int n) {
  const StarAlgebra diag = diagonal_algebra(n);
  Correspondence e;
  e.left_algebra = diag;
  e.right_algebra = diag;
  e.dim = n * n;
  // Basis e_{ij} at index i*n + j; <e_ij, e_kl> = E_diag(e_ji e_kl) =
  // delta_ik delta_jl e_jj.
  e.gram.assign(std::size_t(n) * std::size_t(n),
                std::vector<Matrix>(std::size_t(n) * std::size_t(n)));
  for (int u = 0; u < n * n; ++u)
    for (int v = 0; v < n * n; ++v)
      e.gram[std::size_t(u)][std::size_t(v)] =
          (u == v) ? Matrix(matrix_unit(n, u % n, u % n)) : Matrix(Matrix::Zero(n, n));
  for (int b = 0; b < diag.dim(); ++b) {
    Matrix r = Matrix::Zero(n * n, n * n), l = Matrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const int u = i * n + j;
        // e_ij . e_bb = delta_jb e_ij ; e_bb . e_ij = delta_ib e_ij, where
        // the diagonal basis element b is e_bb.
        const Matrix& db = diag.basis[std::size_t(b)];
        r(u, u) = db(j, j);
        l(u, u) = db(i, i);
      }
    e.right_action.push_back(std::move(r));
    e.left_action.push_back(std::move(l));
  }
  return e;
}

}  // namespace tensoralg
