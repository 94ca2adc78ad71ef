#ifndef TENSORALG_MATRIX_HPP
#define TENSORALG_MATRIX_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace tensoralg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Default numerical tolerances.  All equality-style checks are absolute on
/// residual norms of operators that are themselves O(1) in norm, so absolute
/// and relative tolerances coincide in practice.
struct Tolerances {
  double equality = 1e-9;    ///< operator equality / residual checks
  double psd = 1e-10;        ///< eigenvalue slack when testing positivity
  double rank = 1e-10;       ///< rank cut, relative to the leading pivot
  double ball = 1e-9;        ///< closed-ball membership slack for intertwiners
  double purity = 1e-10;     ///< norm threshold for pure superharmonicity
  double peripheral = 1e-8;  ///< distance from the unit circle treated as peripheral
  int purity_depth = 200;    ///< iteration depth for purity tests
};

/// Kronecker product with the first factor major: (A (x) B)((ia,ib),(ja,jb)) =
/// A(ia,ja) B(ib,jb) with flat row index ia*rows(B)+ib.  All multi-factor
/// coordinates in this library flatten with the same convention, which makes
/// kron associative at the index level.
Matrix kron(const Matrix& a, const Matrix& b);

/// n x n matrix unit e_{ij}.
Matrix matrix_unit(int n, int i, int j);

/// Column-major vectorization and its inverse.
Vector vec(const Matrix& a);
Matrix unvec(const Vector& v, int rows, int cols);

/// Largest singular value.  Because every stored basis in this library is
/// orthonormal under its space's inner product, this is the honest operator
/// norm of the map the matrix represents.
double operator_norm(const Matrix& a);

/// (a + a*)/2.
Matrix hermitize(const Matrix& a);

/// ||a - a*||.
double hermiticity_defect(const Matrix& a);

/// max(0, -lambda_min) of the Hermitian part, plus the Hermiticity defect:
/// zero exactly when the matrix is PSD.
double psd_defect(const Matrix& a);

/// True iff `a` is Hermitian within tol and its eigenvalues are >= -tol.
bool is_psd(const Matrix& a, double tol = Tolerances{}.psd);

/// Orthonormal basis of the kernel of `a` (columns), determined by an SVD with
/// singular values below reltol * s_max treated as zero.  Deterministic for a
/// fixed input.
Matrix nullspace(const Matrix& a, double reltol = Tolerances{}.rank);

/// Orthonormal basis of the column span of `a` (rank-revealing, deterministic
/// column-pivoted QR).
Matrix column_space(const Matrix& a, double reltol = Tolerances{}.rank);

/// Rank-revealing pivoted Cholesky factorization of a PSD matrix:
/// g ~= L L* with L supported on `pivots` rows in pivot order, stopping when
/// the largest remaining diagonal falls below reltol * (largest initial
/// diagonal).  Pivot ties break toward the lowest index, so the factorization
/// is deterministic.
struct PivotedCholesky {
  std::vector<int> pivots;  ///< chosen pivot indices, in order
  Matrix lower;             ///< n x rank factor, g ~= lower * lower^*
  int rank = 0;
};
PivotedCholesky pivoted_cholesky(const Matrix& g, double reltol = Tolerances{}.rank);

/// Inverse square root of a Hermitian positive definite matrix.
Matrix inv_sqrt_psd(const Matrix& a, double reltol = Tolerances{}.rank);

}  // namespace tensoralg

#endif  // TENSORALG_MATRIX_HPP
