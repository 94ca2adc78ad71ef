#include "doctest.h"
#include "tensoralg/fock.hpp"
#include "tensoralg/generators.hpp"
#include "tensoralg/random.hpp"

using namespace tensoralg;

TEST_CASE("truncated Fock modules have the expected level layout") {
  const TruncatedFock f1 = build_truncated_fock(scalar_correspondence(2), 2);
  CHECK(f1.level_dim(0) == 1);
  CHECK(f1.level_dim(1) == 2);
  CHECK(f1.level_dim(2) == 4);
  CHECK(f1.total_dim() == 7);
  CHECK(f1.offsets == std::vector<int>({0, 1, 3, 7}));
  CHECK(f1.level_of(0) == 0);
  CHECK(f1.level_of(2) == 1);
  CHECK(f1.level_of(6) == 2);

  // Over the diagonal algebra the powers collapse: level dims 2, 4, 8.
  const TruncatedFock f2 = build_truncated_fock(matrix_over_diagonal(2), 2);
  CHECK(f2.level_dim(0) == 2);
  CHECK(f2.level_dim(1) == 4);
  CHECK(f2.level_dim(2) == 8);
  CHECK(check_correspondence_axioms(fock_correspondence(f2)).max_residual() <= 1e-9);
}

TEST_CASE("creation operators satisfy the adjoint pairing below the cap") {
  const Correspondence e = matrix_over_diagonal(2);
  const TruncatedFock fock = build_truncated_fock(e, 3);
  Rng rng(31);
  const Vector xi = rng.gaussian_vector(e.dim);
  const Vector eta = rng.gaussian_vector(e.dim);
  const Matrix txi = creation_operator(fock, 1, xi);
  const Matrix teta = creation_operator(fock, 1, eta);

  // T_xi* T_eta = phi(<xi, eta>) on every level whose image stays below the
  // cap; above it the creations truncate to zero.
  const Matrix lhs = txi.adjoint() * teta;
  const Matrix rhs = phi_infty(fock, e.pair(xi, eta));
  const int window = fock.level_offset(fock.level_cap);
  CHECK(operator_norm(Matrix(lhs.topLeftCorner(window, window) -
                             rhs.topLeftCorner(window, window))) <= 1e-12);

  // Level-0 creation of a coefficient vector is its block-diagonal action.
  const Matrix a = rng.gaussian_matrix(2, 2).diagonal().asDiagonal();
  const Vector a_coords = fock.base.right_algebra.coords(a);
  CHECK(operator_norm(creation_operator(fock, 0, a_coords) - phi_infty(fock, a)) <=
        1e-12);
}

TEST_CASE("polynomial products match operator products where nothing overflows") {
  const Correspondence e = scalar_correspondence(2);
  const TruncatedFock fock = build_truncated_fock(e, 3);
  Rng rng(32);

  TensorPolynomial p;
  p.add_term(0, rng.gaussian_vector(1));
  p.add_term(1, rng.gaussian_vector(2));
  TensorPolynomial q;
  q.add_term(1, rng.gaussian_vector(2));

  const TensorPolynomial pq = polynomial_mul(fock, p, q);
  CHECK(pq.degree() == 2);
  const Matrix op_pq = polynomial_to_operator(fock, pq);
  const Matrix prod = polynomial_to_operator(fock, p) * polynomial_to_operator(fock, q);
  // Columns from levels 0..cap-2 never overflow through either factor.
  const int window = fock.level_offset(fock.level_cap - 1);
  CHECK(operator_norm(Matrix(op_pq.leftCols(window) - prod.leftCols(window))) <= 1e-12);

  TensorPolynomial too_big;
  too_big.add_term(3, rng.gaussian_vector(8));
  CHECK_THROWS_AS((void)polynomial_mul(fock, too_big, q), std::invalid_argument);
}

TEST_CASE("circle suprema of low-degree polynomials") {
  CHECK(circle_sup({Complex(1, 0), Complex(1, 0)}) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(circle_sup({Complex(0, 0), Complex(0, 0), Complex(1, 0)}) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(circle_sup({Complex(1, 0), Complex(0, 0), Complex(1, 0)}) ==
        doctest::Approx(2.0).epsilon(1e-10));
  CHECK(circle_sup({Complex(0, 0), Complex(3, -4)}) ==
        doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("truncated norms are contractive, monotone, and converge for 1 + z") {
  const Correspondence e1 = scalar_correspondence(1);
  const TensorPolynomial z = scalar_polynomial({Complex(0, 0), Complex(1, 0)});
  CHECK(fock_norm(e1, z, 5) == doctest::Approx(1.0).epsilon(1e-12));

  const TensorPolynomial one_plus_z = scalar_polynomial({Complex(1, 0), Complex(1, 0)});
  const double n1 = fock_norm(e1, one_plus_z, 1);
  const double n3 = fock_norm(e1, one_plus_z, 3);
  const double n10 = fock_norm(e1, one_plus_z, 10);
  const double n200 = fock_norm(e1, one_plus_z, 200);
  CHECK(n1 < n3);
  CHECK(n3 < n10);
  CHECK(n10 < n200);
  CHECK(n200 >= 1.99);
  CHECK(n200 <= 2.0 + 1e-12);

  // von Neumann bound for a random degree-3 polynomial.
  Rng rng(33);
  std::vector<Complex> coeffs;
  for (int k = 0; k <= 3; ++k) coeffs.push_back(rng.complex_normal());
  CHECK(fock_norm(e1, scalar_polynomial(coeffs), 120) <= circle_sup(coeffs) + 1e-9);
}

TEST_CASE("the right-shift family is an isometry moving levels up by one") {
  const TruncatedFock fock = build_truncated_fock(scalar_correspondence(2), 3);
  const RightShift r = right_shift(fock, 0, 2);
  const int dd = r.domain.corr.dim;
  CHECK(operator_norm(Matrix(r.matrix.adjoint() * r.matrix -
                             Matrix::Identity(dd, dd))) <= 1e-12);
  for (int a = 0; a < dd; ++a) {
    const int target = r.source_levels[std::size_t(a)] + 1;
    Vector image = r.matrix.col(a);
    // All mass lands in the target level's coordinate block.
    double outside = 0.0;
    for (int c = 0; c < fock.total_dim(); ++c)
      if (fock.level_of(c) != target) outside += std::norm(image(c));
    CHECK(std::sqrt(outside) <= 1e-12);
  }
}
