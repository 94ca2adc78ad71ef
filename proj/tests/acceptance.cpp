// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Each criterion pins tolerances and, where stated, a runtime
// budget; the numbers printed are the measured maxima.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>

#include "tensoralg/accontinuity.hpp"
#include "tensoralg/generators.hpp"
#include "tensoralg/morita.hpp"
#include "tensoralg/scenario.hpp"

using namespace tensoralg;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double x) {
  std::ostringstream out;
  out.precision(3);
  out << x;
  return out.str();
}

struct Gate {
  int failures = 0;

  void line(int index, const std::string& name, bool pass, const std::string& detail) {
    std::cout << "criterion " << index << " (" << name << "): "
              << (pass ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << " [" << detail << "]";
    std::cout << '\n';
    if (!pass) ++failures;
  }
};

Scenario campaign(ScenarioKind kind, int trials) {
  Scenario s;
  s.kind = kind;
  s.seed = 0xC0FFEE;
  s.trials = trials;
  return s;
}

Representation scalar_representation(int h) {
  Representation sigma;
  sigma.algebra = scalar_algebra(1);
  sigma.space_dim = h;
  sigma.images.assign(1, Matrix::Identity(h, h));
  return sigma;
}

void criterion_functor(Gate& gate) {
  const auto t0 = Clock::now();
  const ScenarioReport r = run_scenario(campaign(ScenarioKind::functor, 200));
  const auto m = r.max_residuals();
  const double iso = m.at("isometry_gap");
  const double cov = m.at("intertwining");
  const double dims = m.at("dual_dimension_gap");
  const double secs = seconds_since(t0);
  const bool pass = iso <= 1e-8 && cov <= 1e-9 && dims == 0.0 && secs <= 60.0;
  gate.line(1, "transform of dual points: isometry, covariance, dual dimensions", pass,
            "200 instances, max norm gap " + num(iso) + ", max covariance residual " +
                num(cov) + ", dimension gap " + num(dims) + ", " + num(secs) + " s");
}

void criterion_cp_induction(Gate& gate) {
  const auto t0 = Clock::now();
  const ScenarioReport r = run_scenario(campaign(ScenarioKind::cp_lemma, 100));
  const auto m = r.max_residuals();
  const double res = m.at("induction_residual");
  const double span = std::max(m.at("lift_membership"), m.at("commutant_dim_gap"));
  const double secs = seconds_since(t0);
  const bool pass = res <= 1e-10 && span <= 1e-9 && secs <= 60.0;
  gate.line(2, "induced completely positive map equals the ampliation", pass,
            "100 instances, max residual on full commutant bases " + num(res) + ", " +
                num(secs) + " s");
}

void criterion_ac_transport(Gate& gate) {
  const ScenarioReport r = run_scenario(campaign(ScenarioKind::ac_transform, 100));
  const auto m = r.max_residuals();
  const double diff = m.at("projection_difference");
  const double flags =
      std::max(m.at("full_equivalence_gap"), m.at("indeterminate_flags"));
  bool pass = diff <= 1e-8 && flags == 0.0;
  std::string detail = "100 capped-radius instances, max projection difference " + num(diff);

  // Endpoint instances over the one-dimensional module with the column-space
  // equivalence: the unit point has no absolutely continuous part on either
  // side, the half point is fully absolutely continuous on both.
  const Correspondence f = scalar_correspondence(1);
  const Representation sigma = scalar_representation(1);
  const InducedSpace fh = induce_space(f, sigma);
  const StarAlgebra comm = commutant_of_family(sigma.images, 1);
  const MoritaContext ctx = context_from_parts(column_bimodule(2), f);
  const TransformData td = transform_data(ctx, sigma);
  for (double t : {1.0, 0.5}) {
    Matrix z(1, 1);
    z(0, 0) = Complex(t, 0);
    const AcSubspace ac = ac_subspace(cp_map_of_point(f, fh, comm, z));
    const Matrix zx = morita_transform_point(ctx, td, z);
    const StarAlgebra comm_x = commutant_of_family(td.sigma_x.images, td.xh.dim);
    const AcSubspace ac_x = ac_subspace(cp_map_of_point(ctx.e, td.exh, comm_x, zx));
    if (t == 1.0) {
      pass = pass && ac.rank == 0 && ac_x.rank == 0;
      detail += ", unit point ranks " + std::to_string(ac.rank) + "/" +
                std::to_string(ac_x.rank);
    } else {
      pass = pass && ac.rank == 1 && ac_x.rank == td.xh.dim;
      detail += ", half point full ranks " + std::to_string(ac.rank) + "/" +
                std::to_string(ac_x.rank);
    }
  }
  gate.line(3, "absolute continuity transports through the equivalence", pass, detail);
}

void criterion_stabilization(Gate& gate) {
  // Nine combinations: three base correspondences x truncation levels 2..4.
  const ScenarioReport r = run_scenario(campaign(ScenarioKind::stabilize, 9));
  const auto m = r.max_residuals();
  const double proj = std::max(m.at("rr_star_p0"), m.at("r_star_r_identity"));
  double bimod = 0.0;
  for (const char* name : {"w_isometry", "w_right_action", "w_left_action",
                           "phi_homomorphism", "phi_star", "rank_one_adjoint",
                           "rank_one_module_map", "rank_one_positivity"})
    bimod = std::max(bimod, m.at(name));
  const bool pass = proj <= 1e-12 && bimod <= 1e-10;
  gate.line(4, "canonical stabilization: shift projection and bimodule identities", pass,
            "9 instances, max shift-projection residual " + num(proj) +
                ", max window residual " + num(bimod));
}

void criterion_reconstruction(Gate& gate) {
  const auto t0 = Clock::now();
  // 27 combinations: d, dim H in {1,2,3}, truncation in {2,3,4}.
  const ScenarioReport r = run_scenario(campaign(ScenarioKind::reconstruct, 27));
  const auto m = r.max_residuals();
  const double eq = m.at("popescu_equality");
  const double secs = seconds_since(t0);
  const bool pass = eq <= 1e-12 && secs <= 30.0;
  gate.line(5, "reconstruction operator equals its row-shift form", pass,
            "27 instances, max equality residual " + num(eq) + ", " + num(secs) + " s");
}

void criterion_representation(Gate& gate) {
  Rng rng(0xC0FFEE);
  bool pass = true;
  // Sample operators and the intertwiner determine each other.
  double round_trip = 0.0;
  {
    const InducedSpace free_space =
        induce_space(scalar_correspondence(3), scalar_representation(2));
    const InducedSpace quotient = induce_space(
        matrix_over_diagonal(2), identity_representation(diagonal_algebra(2)));
    for (const InducedSpace* s : {&free_space, &quotient}) {
      const Matrix ttilde = rng.gaussian_matrix(s->base_dim, s->dim);
      round_trip = std::max(
          round_trip,
          operator_norm(ttilde_from_images(*s, images_from_ttilde(*s, ttilde)) - ttilde));
    }
    pass = pass && round_trip <= 1e-10;
  }

  // Integrated forms are multiplicative on representable products.
  double homomorphism = 0.0;
  {
    const Correspondence f2 = scalar_correspondence(2);
    const Representation sigma = scalar_representation(2);
    const InducedSpace fh = induce_space(f2, sigma);
    std::vector<Matrix> t;
    Matrix sum = Matrix::Zero(2, 2);
    for (int i = 0; i < 2; ++i) {
      t.push_back(rng.gaussian_matrix(2, 2));
      sum += t.back() * t.back().adjoint();
    }
    for (Matrix& mt : t) mt *= std::sqrt(0.8 / operator_norm(sum));
    const CovariantPair pair = make_covariant_pair(f2, sigma, ttilde_from_images(fh, t));
    const TruncatedFock fock = build_truncated_fock(f2, 4);
    const IntegratedForm form(pair, fock);
    for (int rep = 0; rep < 4; ++rep) {
      TensorPolynomial p, q;
      p.add_term(0, rng.gaussian_vector(1));
      p.add_term(1, rng.gaussian_vector(2));
      p.add_term(2, rng.gaussian_vector(4));
      q.add_term(0, rng.gaussian_vector(1));
      q.add_term(1, rng.gaussian_vector(2));
      homomorphism = std::max(
          homomorphism, operator_norm(form.apply(polynomial_mul(fock, p, q)) -
                                      form.apply(p) * form.apply(q)));
    }
    pass = pass && homomorphism <= 1e-9;
  }

  // Truncated norm of the fixed degree-one polynomial at depth 200.
  const double n200 = fock_norm(scalar_correspondence(1),
                                scalar_polynomial({Complex(1, 0), Complex(1, 0)}), 200);
  pass = pass && n200 >= 1.99 && n200 <= 2.0;

  // Degree <= 5 von Neumann bound for scalar evaluations.
  double excess = 0.0;
  {
    const Correspondence e1 = scalar_correspondence(1);
    const Representation s1 = scalar_representation(1);
    const TruncatedFock fock = build_truncated_fock(e1, 6);
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<Complex> coeffs;
      const int degree = 1 + rng.uniform_int(0, 4);
      for (int k = 0; k <= degree; ++k) coeffs.push_back(rng.complex_normal());
      const double sup = circle_sup(coeffs);
      const TensorPolynomial p = scalar_polynomial(coeffs);
      for (int pt = 0; pt < 4; ++pt) {
        const double radius = pt == 0 ? 1.0 : rng.uniform();
        const double angle = rng.uniform(0.0, 6.283185307179586);
        Matrix zt(1, 1);
        zt(0, 0) = radius * Complex(std::cos(angle), std::sin(angle));
        const IntegratedForm form(make_covariant_pair(e1, s1, zt), fock);
        excess = std::max(excess, std::abs(form.apply(p)(0, 0)) - sup);
      }
    }
    pass = pass && excess <= 1e-6;
  }

  gate.line(6, "representation identities: samples, products, norms, and bounds", pass,
            "round trip " + num(round_trip) + ", product residual " + num(homomorphism) +
                ", depth-200 norm " + num(n200) + ", evaluation excess " + num(excess));
}

void criterion_determinism(Gate& gate) {
  bool pass = true;
  std::string mismatch;
  for (ScenarioKind kind : all_scenario_kinds()) {
    Json a = run_scenario(campaign(kind, 200)).to_json();
    Json b = run_scenario(campaign(kind, 200)).to_json();
    a.erase("wall_time_ms");
    b.erase("wall_time_ms");
    if (a.dump() != b.dump()) {
      pass = false;
      if (!mismatch.empty()) mismatch += ", ";
      mismatch += scenario_kind_name(kind);
    }
  }
  gate.line(7, "default campaigns emit identical machine reports", pass,
            pass ? "all 6 kinds, 200 trials each, byte-identical"
                 : "mismatch in: " + mismatch);
}

}  // namespace

int main() {
  Gate gate;
  criterion_functor(gate);
  criterion_cp_induction(gate);
  criterion_ac_transport(gate);
  criterion_stabilization(gate);
  criterion_reconstruction(gate);
  criterion_representation(gate);
  criterion_determinism(gate);
  if (gate.failures == 0) {
    std::cout << "acceptance: all criteria passed\n";
    return 0;
  }
  std::cout << "acceptance: " << gate.failures << " criteria failed\n";
  return 1;
}
