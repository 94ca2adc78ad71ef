#include "tensoralg/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tensoralg {

int TruncatedFock::level_of(int coord) const {
  for (int k = 0; k < level_cap + 1; ++k)
    if (coord < offsets[std::size_t(k) + 1]) return k;
  throw std::out_of_range("level_of: coordinate beyond the truncated Fock module");
}

TruncatedFock build_truncated_fock(const Correspondence& e, int level_cap,
                                   double rank_tol) {
  if (level_cap < 0) throw std::invalid_argument("build_truncated_fock: negative cap");
  if (!same_algebra(e.left_algebra, e.right_algebra))
    throw std::invalid_argument("build_truncated_fock: base must be a correspondence over one algebra");

  const StarAlgebra& m = e.right_algebra;
  TruncatedFock fock;
  fock.base = e;
  fock.level_cap = level_cap;

  fock.levels.push_back({algebra_as_correspondence(m), Matrix(), Matrix(), {}});
  for (int k = 1; k <= level_cap; ++k) {
    BalancedTensor bt = internal_tensor(e, fock.levels.back().module, rank_tol);
    fock.levels.push_back({std::move(bt.corr), std::move(bt.embed),
                           std::move(bt.project), std::move(bt.pivots)});
  }

  fock.offsets.assign(1, 0);
  for (int k = 0; k <= level_cap; ++k)
    fock.offsets.push_back(fock.offsets.back() + fock.level_dim(k));

  // Multiplication maps, by recursion on the left factor's degree.  The base
  // case tensors an algebra element on the left, i.e. applies the level's
  // left action.
  fock.prepend.assign(std::size_t(level_cap) + 1, {});
  for (int k = 0; k <= level_cap; ++k) {
    const Correspondence& lev = fock.levels[std::size_t(k)].module;
    Matrix p0(lev.dim, m.dim() * lev.dim);
    for (int i = 0; i < m.dim(); ++i)
      p0.middleCols(i * lev.dim, lev.dim) = lev.left_action[std::size_t(i)];
    fock.prepend[0].push_back(std::move(p0));
  }
  const int de = e.dim;
  for (int mm = 1; mm <= level_cap; ++mm) {
    const Matrix& bm = fock.levels[std::size_t(mm)].embed;
    for (int k = 0; k + mm <= level_cap; ++k) {
      const int dk = fock.level_dim(k);
      Matrix x = kron(bm, Matrix::Identity(dk, dk));
      Matrix y = apply_right_factor(fock.prepend[std::size_t(mm) - 1][std::size_t(k)], x, de);
      fock.prepend[std::size_t(mm)].push_back(
          fock.levels[std::size_t(mm + k)].project * y);
    }
  }

  // Appending one base-module factor on the right is multiplication against
  // the image of E in level 1 (xi |-> class of xi (x) 1).
  if (level_cap >= 1) {
    const Vector c1 = m.coords(m.identity());
    Matrix je(fock.level_dim(1), de);
    for (int j = 0; j < de; ++j) {
      Vector free = Vector::Zero(de * m.dim());
      free.segment(j * m.dim(), m.dim()) = c1;
      je.col(j) = fock.levels[1].project * free;
    }
    for (int k = 0; k + 1 <= level_cap; ++k) {
      const int dk = fock.level_dim(k);
      fock.append.push_back(fock.prepend[std::size_t(k)][1] *
                            kron(Matrix::Identity(dk, dk), je));
    }
  }
  return fock;
}

Correspondence fock_correspondence(const TruncatedFock& fock) {
  const StarAlgebra& m = fock.base.right_algebra;
  const int n = m.ambient_dim;
  const int total = fock.total_dim();

  Correspondence c;
  c.left_algebra = m;
  c.right_algebra = m;
  c.dim = total;
  c.gram.assign(std::size_t(total), std::vector<Matrix>(std::size_t(total),
                                                        Matrix::Zero(n, n)));
  for (int k = 0; k <= fock.level_cap; ++k) {
    const Correspondence& lev = fock.levels[std::size_t(k)].module;
    const int off = fock.level_offset(k);
    for (int i = 0; i < lev.dim; ++i)
      for (int j = 0; j < lev.dim; ++j)
        c.gram[std::size_t(off + i)][std::size_t(off + j)] =
            lev.gram[std::size_t(i)][std::size_t(j)];
  }
  c.right_action.assign(std::size_t(m.dim()), Matrix::Zero(total, total));
  c.left_action.assign(std::size_t(m.dim()), Matrix::Zero(total, total));
  for (int a = 0; a < m.dim(); ++a) {
    for (int k = 0; k <= fock.level_cap; ++k) {
      const Correspondence& lev = fock.levels[std::size_t(k)].module;
      const int off = fock.level_offset(k);
      c.right_action[std::size_t(a)].block(off, off, lev.dim, lev.dim) =
          lev.right_action[std::size_t(a)];
      c.left_action[std::size_t(a)].block(off, off, lev.dim, lev.dim) =
          lev.left_action[std::size_t(a)];
    }
  }
  return c;
}

Matrix phi_infty(const TruncatedFock& fock, const Matrix& a) {
  const Vector coeff = fock.base.right_algebra.coords(a);
  Matrix op = Matrix::Zero(fock.total_dim(), fock.total_dim());
  for (int k = 0; k <= fock.level_cap; ++k) {
    const Correspondence& lev = fock.levels[std::size_t(k)].module;
    const int off = fock.level_offset(k);
    Matrix block = Matrix::Zero(lev.dim, lev.dim);
    for (int e = 0; e < int(coeff.size()); ++e)
      block += coeff[e] * lev.left_action[std::size_t(e)];
    op.block(off, off, lev.dim, lev.dim) = block;
  }
  return op;
}

Matrix creation_operator(const TruncatedFock& fock, int level, const Vector& xi) {
  if (level < 0 || level > fock.level_cap)
    throw std::out_of_range("creation_operator: level outside the cap");
  if (int(xi.size()) != fock.level_dim(level))
    throw std::invalid_argument("creation_operator: coordinate size mismatch");

  const int total = fock.total_dim();
  Matrix op = Matrix::Zero(total, total);
  for (int k = 0; k + level <= fock.level_cap; ++k) {
    const int dk = fock.level_dim(k);
    Matrix block = fock.prepend[std::size_t(level)][std::size_t(k)] *
                   apply_left_factor(xi, Matrix::Identity(dk, dk), dk);
    op.block(fock.level_offset(k + level), fock.level_offset(k),
             fock.level_dim(k + level), dk) = block;
  }
  return op;
}

void TensorPolynomial::add_term(int level, const Vector& coef) {
  for (auto& t : terms) {
    if (t.first == level) {
      if (t.second.size() != coef.size())
        throw std::invalid_argument("TensorPolynomial: coordinate size mismatch");
      t.second += coef;
      return;
    }
  }
  terms.emplace_back(level, coef);
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

int TensorPolynomial::degree() const {
  return terms.empty() ? -1 : terms.back().first;
}

TensorPolynomial scalar_polynomial(const std::vector<Complex>& coeffs) {
  TensorPolynomial p;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    Vector c(1);
    c[0] = coeffs[k];
    p.add_term(int(k), c);
  }
  return p;
}

Matrix polynomial_to_operator(const TruncatedFock& fock, const TensorPolynomial& p) {
  Matrix op = Matrix::Zero(fock.total_dim(), fock.total_dim());
  for (const auto& t : p.terms) op += creation_operator(fock, t.first, t.second);
  return op;
}

TensorPolynomial polynomial_mul(const TruncatedFock& fock, const TensorPolynomial& p,
                                const TensorPolynomial& q) {
  TensorPolynomial out;
  for (const auto& [kp, u] : p.terms) {
    for (const auto& [kq, v] : q.terms) {
      if (kp + kq > fock.level_cap)
        throw std::invalid_argument("polynomial_mul: product degree exceeds the Fock cap");
      out.add_term(kp + kq, fock.prepend[std::size_t(kp)][std::size_t(kq)] * kron(u, v));
    }
  }
  return out;
}

double fock_norm(const Correspondence& e, const TensorPolynomial& p, int level_cap) {
  TruncatedFock fock = build_truncated_fock(e, level_cap);
  return operator_norm(polynomial_to_operator(fock, p));
}

double circle_sup(const std::vector<Complex>& coeffs) {
  const auto value = [&coeffs](double theta) {
    const Complex w(std::cos(theta), std::sin(theta));
    Complex acc(0.0, 0.0);
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * w + coeffs[k];
    return std::abs(acc);
  };

  const double two_pi = 2.0 * M_PI;
  const int grid = 8192;
  double best = 0.0, best_theta = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double theta = two_pi * i / grid;
    const double v = value(theta);
    if (v > best) {
      best = v;
      best_theta = theta;
    }
  }

  // Golden-section refinement around the grid winner.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_theta - two_pi / grid, hi = best_theta + two_pi / grid;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = value(x1), f2 = value(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = value(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = value(x1);
    }
  }
  return std::max(best, std::max(f1, f2));
}

RightShift right_shift(const TruncatedFock& fock, int level_lo, int level_hi,
                       double rank_tol) {
  if (level_lo < 0 || level_hi > fock.level_cap || level_lo > level_hi)
    throw std::out_of_range("right_shift: bad level window");

  const Correspondence total = fock_correspondence(fock);
  std::vector<int> keep;
  for (int c = fock.level_offset(level_lo); c < fock.level_offset(level_hi + 1); ++c)
    keep.push_back(c);
  const Correspondence window = subcorrespondence(total, keep);

  RightShift rs;
  rs.level_lo = level_lo;
  rs.level_hi = level_hi;
  rs.domain = internal_tensor(window, fock.base, rank_tol);

  const int de = fock.base.dim;
  Matrix big = Matrix::Zero(fock.total_dim(), int(keep.size()) * de);
  for (std::size_t u = 0; u < keep.size(); ++u) {
    const int k = fock.level_of(keep[u]);
    if (k == fock.level_cap) continue;
    const int i = keep[u] - fock.level_offset(k);
    big.block(fock.level_offset(k + 1), int(u) * de, fock.level_dim(k + 1), de) =
        fock.append[std::size_t(k)].middleCols(i * de, de);
  }
  rs.matrix = big * rs.domain.embed;

  rs.source_levels.reserve(std::size_t(rs.domain.corr.dim));
  for (int a = 0; a < rs.domain.corr.dim; ++a)
    rs.source_levels.push_back(fock.level_of(keep[std::size_t(rs.domain.pivots[std::size_t(a)] / de)]));
  return rs;
}

}  // namespace tensoralg
