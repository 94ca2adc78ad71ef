#ifndef TENSORALG_ACCONTINUITY_HPP
#define TENSORALG_ACCONTINUITY_HPP

#include <vector>

#include "tensoralg/correspondence.hpp"
#include "tensoralg/report.hpp"
#include "tensoralg/representation.hpp"
#include "tensoralg/star_algebra.hpp"

namespace tensoralg {

/// A completely positive map on a concrete *-algebra (the commutant of a
/// representation), stored by the images of the algebra basis.
struct CPMap {
  StarAlgebra domain;
  std::vector<Matrix> images;

  Matrix apply(const Matrix& a) const;
  /// The map in algebra coordinates (dim x dim); its spectrum governs the
  /// asymptotics of iteration.
  Matrix coords_matrix() const;
  double spectral_radius() const;
};

/// Phi_z(a) = z* (I_E (x) a) z for a dual point z : H -> E (x) H of
/// (e, sigma), acting on the commutant sigma-of-coefficients'.  `induced`
/// must be the induced space E (x)_sigma H that z is expressed in.
CPMap cp_map_of_point(const Correspondence& e, const InducedSpace& induced,
                      const StarAlgebra& commutant, const Matrix& z);

/// Residuals: Phi is *-preserving, maps the domain into itself, and is
/// positive on the PSD generators of the domain.
CheckReport check_cp_map(const CPMap& phi, double tol = Tolerances{}.equality);

/// a is PSD and Phi(a) <= a.
bool is_superharmonic(const CPMap& phi, const Matrix& a, double tol = Tolerances{}.psd);

/// a is superharmonic and Phi^n(a) -> 0, decided by the decay of iterates
/// between depth/2 and depth.
bool is_pure_superharmonic(const CPMap& phi, const Matrix& a,
                           double tol = Tolerances{}.psd,
                           int depth = Tolerances{}.purity_depth);

/// The span of the ranges of pure superharmonic elements, as an orthogonal
/// projection.  Candidate elements are the resolvents a_c = (id - Phi)^{-1}(c)
/// for c in a PSD spanning family of the domain; when Phi has peripheral
/// spectrum (eigenvalues within `tol.peripheral` of the unit circle) the
/// solve is restricted to the complementary spectral subspace.  Candidates
/// that pass `is_pure_superharmonic` contribute their ranges; candidates the
/// finite-depth test cannot certify set `indeterminate` instead.
struct AcSubspace {
  Matrix projection;
  int rank = 0;
  bool indeterminate = false;
};

AcSubspace ac_subspace(const CPMap& phi, const Tolerances& tol = Tolerances{});

/// PSD elements spanning the algebra linearly: b b*, (b + c)(b + c)* and
/// (b + ic)(b + ic)* over basis pairs.  Polarization recovers every product
/// b c*, and those span a unital *-algebra.
std::vector<Matrix> psd_spanning_family(const StarAlgebra& alg,
                                        double cutoff = 1e-12);

}  // namespace tensoralg

#endif  // TENSORALG_ACCONTINUITY_HPP
