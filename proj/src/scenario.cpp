#include "tensoralg/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "tensoralg/accontinuity.hpp"
#include "tensoralg/fock.hpp"
#include "tensoralg/generators.hpp"
#include "tensoralg/morita.hpp"

namespace tensoralg {

namespace {

constexpr double kFallbackTolerance = 1e-9;

/// Shortest round-trip decimal form, shared by machine and human output.
std::string number(double x) { return Json(x).dump(); }

// ---------------------------------------------------------------------------
// Random Morita instances and their serialized generating data.

struct MoritaParts {
  BlockAlgebra left;
  BlockAlgebra right;
  EquivalenceBimodule x;
  Correspondence f;
};

MoritaParts random_parts(Rng& rng) {
  MoritaParts p;
  p.left = random_block_algebra(rng, {2, 1});
  p.right = random_block_algebra(rng, {1, 2});
  p.x = random_equivalence_bimodule(p.left, p.right, rng);
  p.f = random_correspondence(p.right, p.right, rng, {{1, 1}, {1, 0}});
  return p;
}

Json block_algebra_to_json(const BlockAlgebra& a) {
  Json j;
  j["block_sizes"] = a.block_sizes;
  j["unitary"] = matrix_to_json(a.unitary);
  j["algebra"] = algebra_to_json(a.algebra);
  return j;
}

BlockAlgebra block_algebra_from_json(const Json& j) {
  BlockAlgebra a;
  a.block_sizes = j.at("block_sizes").get<std::vector<int>>();
  a.unitary = matrix_from_json(j.at("unitary"));
  a.algebra = algebra_from_json(j.at("algebra"));
  return a;
}

Json parts_to_json(const MoritaParts& p, const char* kind) {
  Json j;
  j["kind"] = kind;
  j["left"] = block_algebra_to_json(p.left);
  j["right"] = block_algebra_to_json(p.right);
  j["bimodule"] = bimodule_to_json(p.x);
  j["correspondence"] = correspondence_to_json(p.f);
  return j;
}

MoritaParts parts_from_json(const Json& j) {
  MoritaParts p;
  p.left = block_algebra_from_json(j.at("left"));
  p.right = block_algebra_from_json(j.at("right"));
  p.x = bimodule_from_json(j.at("bimodule"));
  p.f = correspondence_from_json(j.at("correspondence"));
  return p;
}

/// Everything a transform-side trial needs, derived from the generating data.
struct MoritaTrial {
  MoritaContext ctx;
  Representation sigma;
  TransformData td;
  SigmaDual dual;
};

MoritaTrial derive_trial(const MoritaParts& parts, Rng& rng) {
  MoritaTrial t;
  t.ctx = context_from_parts(parts.x, parts.f);
  t.sigma = random_representation(parts.right, rng, {1, 1});
  t.td = transform_data(t.ctx, t.sigma);
  t.dual = sigma_dual(t.ctx.f, t.sigma);
  return t;
}

// ---------------------------------------------------------------------------
// Per-kind trial runners.  Each returns the residuals of one trial.

CheckReport run_functor_trial(const MoritaParts& parts, int trial, Rng& rng) {
  MoritaTrial t = derive_trial(parts, rng);
  const bool boundary = (trial % 4 == 3);
  const Matrix z = random_ball_point(t.dual.basis, rng, boundary);
  const Matrix zx = morita_transform_point(t.ctx, t.td, z);

  CheckReport rec;
  rec.add("isometry_gap", std::abs(operator_norm(zx) - operator_norm(z)));
  const CovariantPair image{t.ctx.e, t.td.sigma_x, t.td.exh, Matrix(zx.adjoint())};
  rec.add("intertwining", check_covariant_pair(image).max_residual());
  const SigmaDual dual_x = sigma_dual(t.ctx.e, t.td.sigma_x);
  rec.add("dual_dimension_gap", std::abs(double(dual_x.dual.dim - t.dual.dual.dim)));
  return rec;
}

CheckReport run_cp_lemma_trial(const MoritaParts& parts, Rng& rng) {
  MoritaTrial t = derive_trial(parts, rng);
  const Matrix z = random_ball_point(t.dual.basis, rng, false);
  const Matrix zx = morita_transform_point(t.ctx, t.td, z);
  const StarAlgebra comm = commutant_of_family(t.sigma.images, t.sigma.space_dim);
  const StarAlgebra comm_x = commutant_of_family(t.td.sigma_x.images, t.td.xh.dim);
  const CPMap phi = cp_map_of_point(t.ctx.f, t.td.fh, comm, z);
  const CPMap phi_x = cp_map_of_point(t.ctx.e, t.td.exh, comm_x, zx);

  double induction = 0.0, membership = 0.0;
  for (const Matrix& c : comm.basis) {
    const Matrix lift = commutant_lift(t.ctx, t.td, c);
    membership = std::max(membership, comm_x.membership_defect(lift));
    induction = std::max(
        induction, operator_norm(phi_x.apply(lift) -
                                 commutant_lift(t.ctx, t.td, phi.apply(c))));
  }
  CheckReport rec;
  rec.add("induction_residual", induction);
  rec.add("lift_membership", membership);
  rec.add("commutant_dim_gap", std::abs(double(comm_x.dim() - comm.dim())));
  return rec;
}

CheckReport run_ac_transform_trial(const MoritaParts& parts, Rng& rng) {
  MoritaTrial t = derive_trial(parts, rng);
  const StarAlgebra comm = commutant_of_family(t.sigma.images, t.sigma.space_dim);
  Matrix z = random_ball_point(t.dual.basis, rng, false);
  CPMap phi = cp_map_of_point(t.ctx.f, t.td.fh, comm, z);
  const double radius = phi.spectral_radius();
  if (radius > 0.95) {
    // Phi scales with |lambda|^2, so this pins the spectral radius at 0.95.
    z *= std::sqrt(0.95 / radius);
    phi = cp_map_of_point(t.ctx.f, t.td.fh, comm, z);
  }
  const Matrix zx = morita_transform_point(t.ctx, t.td, z);
  const StarAlgebra comm_x = commutant_of_family(t.td.sigma_x.images, t.td.xh.dim);
  const CPMap phi_x = cp_map_of_point(t.ctx.e, t.td.exh, comm_x, zx);

  const AcSubspace ac = ac_subspace(phi);
  const AcSubspace ac_x = ac_subspace(phi_x);
  CheckReport rec;
  rec.add("projection_difference",
          operator_norm(ac_x.projection - commutant_lift(t.ctx, t.td, ac.projection)));
  const bool full_f = ac.rank == t.sigma.space_dim;
  const bool full_x = ac_x.rank == t.td.xh.dim;
  rec.add("full_equivalence_gap", full_f == full_x ? 0.0 : 1.0);
  rec.add("indeterminate_flags", double(ac.indeterminate) + double(ac_x.indeterminate));
  return rec;
}

Correspondence stabilize_base(int variant) {
  switch (variant % 3) {
    case 0: return scalar_correspondence(1);
    case 1: return scalar_correspondence(2);
    default: return matrix_over_diagonal(2);
  }
}

CheckReport run_stabilize_trial(const Scenario& s, const Json* inst, int trial, Rng& rng) {
  Correspondence f;
  int cap;
  if (inst != nullptr) {
    f = correspondence_from_json(inst->at("correspondence"));
    cap = s.nmax > 0 ? s.nmax : inst->value("nmax", 3);
  } else {
    f = stabilize_base(trial);
    cap = s.nmax > 0 ? s.nmax : 2 + (trial / 3) % 3;
  }
  const StabilizationResult st = canonical_stabilization(f, cap);
  return verify_stabilization(st, rng);
}

std::vector<Matrix> random_row_contraction(Rng& rng, int d, int h) {
  std::vector<Matrix> t;
  Matrix sum = Matrix::Zero(h, h);
  for (int i = 0; i < d; ++i) {
    t.push_back(rng.gaussian_matrix(h, h));
    sum += t.back() * t.back().adjoint();
  }
  const double scale = std::sqrt(0.9 / std::max(1e-12, operator_norm(sum)));
  for (Matrix& m : t) m *= scale;
  return t;
}

CheckReport run_reconstruct_trial(const Scenario& s, const Json* inst, int trial, Rng& rng) {
  int d, h, cap;
  std::vector<Matrix> t;
  if (inst != nullptr) {
    d = inst->at("d").get<int>();
    h = inst->at("h").get<int>();
    cap = s.nmax > 0 ? s.nmax : inst->value("nmax", 3);
    for (const Json& m : inst->at("images")) t.push_back(matrix_from_json(m));
  } else {
    d = 1 + trial % 3;
    h = 1 + (trial / 3) % 3;
    cap = s.nmax > 0 ? s.nmax : 2 + (trial / 9) % 3;
    t = random_row_contraction(rng, d, h);
  }

  const Correspondence f = scalar_correspondence(d);
  Representation sigma;
  sigma.algebra = scalar_algebra(1);
  sigma.space_dim = h;
  sigma.images.assign(1, Matrix::Identity(h, h));
  const InducedSpace fh = induce_space(f, sigma);
  const CovariantPair pair =
      make_covariant_pair(f, sigma, ttilde_from_images(fh, t));

  const StabilizationResult st = canonical_stabilization(f, cap);
  const Matrix recon = reconstruction_operator(st, pair);
  const Matrix oracle = popescu_form(t, cap);

  CheckReport rec;
  rec.add("popescu_equality", operator_norm(recon - oracle));
  rec.absorb("", popescu_row_isometry(d, cap));
  Matrix defect = Matrix::Identity(h, h);
  for (const Matrix& m : t) defect -= m * m.adjoint();
  rec.add("row_contraction_defect", psd_defect(defect));
  return rec;
}

std::vector<Complex> random_poly_coeffs(Rng& rng) {
  const int degree = rng.uniform_int(1, 5);
  std::vector<Complex> coeffs;
  for (int k = 0; k <= degree; ++k) coeffs.push_back(0.5 * rng.complex_normal());
  return coeffs;
}

CheckReport run_disc_trial(const Scenario& s, const Json* inst, int trial, Rng& rng) {
  std::vector<Complex> coeffs;
  if (inst != nullptr) {
    for (const Json& c : inst->at("coeffs"))
      coeffs.push_back(Complex(c.at(0).get<double>(), c.at(1).get<double>()));
  } else if (trial == 0) {
    coeffs = {Complex(1, 0), Complex(1, 0)};
  } else {
    coeffs = random_poly_coeffs(rng);
  }

  const int cap_hi = s.nmax > 0 ? s.nmax : 200;
  const int degree = int(coeffs.size()) - 1;
  const int cap_lo = std::max(degree, cap_hi / 8);
  const int cap_mid = std::max(degree, cap_hi / 2);

  const Correspondence e1 = scalar_correspondence(1);
  const TensorPolynomial p = scalar_polynomial(coeffs);
  const double n_lo = fock_norm(e1, p, cap_lo);
  const double n_mid = fock_norm(e1, p, cap_mid);
  const double n_hi = fock_norm(e1, p, cap_hi);
  const double sup = circle_sup(coeffs);

  CheckReport rec;
  rec.add("von_neumann_excess", std::max(0.0, n_hi - sup));
  rec.add("monotonicity_defect",
          std::max(0.0, std::max(n_lo - n_mid, n_mid - n_hi)));
  if (inst == nullptr && trial == 0) rec.add("sup_gap", std::abs(n_hi - sup));
  return rec;
}

}  // namespace

// ---------------------------------------------------------------------------

const char* scenario_kind_name(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::functor: return "functor";
    case ScenarioKind::cp_lemma: return "cp_lemma";
    case ScenarioKind::ac_transform: return "ac_transform";
    case ScenarioKind::stabilize: return "stabilize";
    case ScenarioKind::reconstruct: return "reconstruct";
    case ScenarioKind::disc_convergence: return "disc_convergence";
  }
  return "unknown";
}

bool scenario_kind_from_name(const std::string& name, ScenarioKind* out) {
  for (ScenarioKind k : all_scenario_kinds())
    if (name == scenario_kind_name(k)) {
      *out = k;
      return true;
    }
  return false;
}

std::vector<ScenarioKind> all_scenario_kinds() {
  return {ScenarioKind::functor,     ScenarioKind::cp_lemma,
          ScenarioKind::ac_transform, ScenarioKind::stabilize,
          ScenarioKind::reconstruct, ScenarioKind::disc_convergence};
}

Json Scenario::to_json() const {
  Json j;
  j["kind"] = scenario_kind_name(kind);
  j["seed"] = seed;
  j["trials"] = trials;
  j["nmax"] = nmax;
  Json overrides;
  for (const auto& [name, value] : tolerance_overrides) overrides[name] = value;
  j["tolerance_overrides"] = std::move(overrides);
  j["instance"] = instance;
  return j;
}

Scenario Scenario::from_json(const Json& j) {
  Scenario s;
  const std::string name = j.at("kind").get<std::string>();
  if (!scenario_kind_from_name(name, &s.kind))
    throw std::runtime_error("unknown scenario kind: " + name);
  s.seed = j.value("seed", std::uint64_t(0xC0FFEE));
  s.trials = j.value("trials", 200);
  s.nmax = j.value("nmax", 0);
  if (j.contains("tolerance_overrides"))
    for (const auto& [name2, value] : j.at("tolerance_overrides").items())
      s.tolerance_overrides[name2] = value.get<double>();
  if (j.contains("instance")) s.instance = j.at("instance");
  return s;
}

std::map<std::string, double> default_tolerances(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::functor:
      return {{"isometry_gap", 1e-8},
              {"intertwining", 1e-9},
              {"dual_dimension_gap", 1e-9}};
    case ScenarioKind::cp_lemma:
      return {{"induction_residual", 1e-10},
              {"lift_membership", 1e-9},
              {"commutant_dim_gap", 1e-9}};
    case ScenarioKind::ac_transform:
      return {{"projection_difference", 1e-8},
              {"full_equivalence_gap", 1e-9},
              {"indeterminate_flags", 1e-9}};
    case ScenarioKind::stabilize:
      return {{"rr_star_p0", 1e-12},
              {"r_star_r_identity", 1e-12},
              {"w_isometry", 1e-10},
              {"w_right_action", 1e-10},
              {"w_left_action", 1e-10},
              {"phi_homomorphism", 1e-10},
              {"phi_star", 1e-10},
              {"rank_one_adjoint", 1e-10},
              {"rank_one_module_map", 1e-10},
              {"rank_one_positivity", 1e-10}};
    case ScenarioKind::reconstruct:
      return {{"popescu_equality", 1e-12},
              {"row_isometry", 1e-12},
              {"row_orthogonality", 1e-12},
              {"row_contraction_defect", 1e-9}};
    case ScenarioKind::disc_convergence:
      return {{"von_neumann_excess", 1e-9},
              {"monotonicity_defect", 1e-12},
              {"sup_gap", 1e-2}};
  }
  return {};
}

ScenarioReport run_scenario(const Scenario& s) {
  const auto t0 = std::chrono::steady_clock::now();
  ScenarioReport out;
  out.scenario = s;
  out.tolerances = default_tolerances(s.kind);
  for (const auto& [name, value] : s.tolerance_overrides) out.tolerances[name] = value;

  const Json* inst = s.instance.is_null() ? nullptr : &s.instance;
  std::unique_ptr<MoritaParts> fixed_parts;
  const bool transform_kind = s.kind == ScenarioKind::functor ||
                              s.kind == ScenarioKind::cp_lemma ||
                              s.kind == ScenarioKind::ac_transform;
  if (inst != nullptr && transform_kind)
    fixed_parts = std::make_unique<MoritaParts>(parts_from_json(*inst));

  for (int trial = 0; trial < s.trials; ++trial) {
    Rng rng(Rng::subseed(s.seed, std::uint64_t(trial)));
    TrialRecord rec;
    rec.trial = trial;
    switch (s.kind) {
      case ScenarioKind::functor:
      case ScenarioKind::cp_lemma:
      case ScenarioKind::ac_transform: {
        const MoritaParts parts = fixed_parts ? *fixed_parts : random_parts(rng);
        if (s.kind == ScenarioKind::functor)
          rec.report = run_functor_trial(parts, trial, rng);
        else if (s.kind == ScenarioKind::cp_lemma)
          rec.report = run_cp_lemma_trial(parts, rng);
        else
          rec.report = run_ac_transform_trial(parts, rng);
        break;
      }
      case ScenarioKind::stabilize:
        rec.report = run_stabilize_trial(s, inst, trial, rng);
        break;
      case ScenarioKind::reconstruct:
        rec.report = run_reconstruct_trial(s, inst, trial, rng);
        break;
      case ScenarioKind::disc_convergence:
        rec.report = run_disc_trial(s, inst, trial, rng);
        break;
    }
    out.records.push_back(std::move(rec));
  }

  std::sort(out.records.begin(), out.records.end(),
            [](const TrialRecord& a, const TrialRecord& b) { return a.trial < b.trial; });
  out.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return out;
}

std::map<std::string, double> ScenarioReport::max_residuals() const {
  std::map<std::string, double> out;
  for (const TrialRecord& rec : records)
    for (const auto& [name, value] : rec.report.residuals) {
      auto it = out.find(name);
      if (it == out.end())
        out[name] = value;
      else
        it->second = std::max(it->second, value);
    }
  return out;
}

bool ScenarioReport::passed() const {
  for (const auto& [name, value] : max_residuals()) {
    auto it = tolerances.find(name);
    const double tol = it == tolerances.end() ? kFallbackTolerance : it->second;
    if (!(value <= tol)) return false;
  }
  return true;
}

Json ScenarioReport::to_json() const {
  Json j;
  j["scenario"] = scenario.to_json();
  Json tols;
  for (const auto& [name, value] : tolerances) tols[name] = value;
  j["tolerances"] = std::move(tols);
  Json recs = Json::array();
  for (const TrialRecord& rec : records) {
    Json r;
    r["trial"] = rec.trial;
    Json res;
    for (const auto& [name, value] : rec.report.residuals) res[name] = value;
    r["residuals"] = std::move(res);
    if (!rec.report.notes.empty()) r["notes"] = rec.report.notes;
    recs.push_back(std::move(r));
  }
  j["records"] = std::move(recs);
  Json summary;
  Json maxes;
  for (const auto& [name, value] : max_residuals()) maxes[name] = value;
  summary["max_residuals"] = std::move(maxes);
  summary["pass"] = passed();
  j["summary"] = std::move(summary);
  j["wall_time_ms"] = wall_ms;
  return j;
}

std::string ScenarioReport::human(bool verbose) const {
  std::ostringstream out;
  out << "scenario " << scenario_kind_name(scenario.kind)
      << ": seed " << scenario.seed << ", trials " << scenario.trials
      << ", nmax " << scenario.nmax << '\n';
  if (verbose) {
    for (const TrialRecord& rec : records) {
      out << "  trial " << rec.trial << ':';
      for (const auto& [name, value] : rec.report.residuals)
        out << ' ' << name << '=' << number(value);
      out << '\n';
    }
  }
  out << "summary:\n";
  const auto maxes = max_residuals();
  for (const auto& [name, value] : maxes) {
    auto it = tolerances.find(name);
    const double tol = it == tolerances.end() ? kFallbackTolerance : it->second;
    out << "  " << name << ": max " << number(value) << ", tolerance "
        << number(tol) << (value <= tol ? ", ok" : ", FAIL") << '\n';
  }
  out << "result: " << (passed() ? "PASS" : "FAIL") << " (wall "
      << number(wall_ms) << " ms)\n";
  return out.str();
}

ScenarioReport report_from_json(const Json& j) {
  ScenarioReport out;
  out.scenario = Scenario::from_json(j.at("scenario"));
  for (const auto& [name, value] : j.at("tolerances").items())
    out.tolerances[name] = value.get<double>();
  for (const Json& r : j.at("records")) {
    TrialRecord rec;
    rec.trial = r.at("trial").get<int>();
    for (const auto& [name, value] : r.at("residuals").items())
      rec.report.add(name, value.get<double>());
    if (r.contains("notes"))
      rec.report.notes = r.at("notes").get<std::vector<std::string>>();
    out.records.push_back(std::move(rec));
  }
  out.wall_ms = j.value("wall_time_ms", 0.0);
  return out;
}

Json generate_instance(ScenarioKind kind, std::uint64_t seed) {
  Rng rng(seed);
  switch (kind) {
    case ScenarioKind::functor:
    case ScenarioKind::cp_lemma:
    case ScenarioKind::ac_transform:
      return parts_to_json(random_parts(rng), scenario_kind_name(kind));
    case ScenarioKind::stabilize: {
      Json j;
      j["kind"] = "stabilize";
      j["correspondence"] = correspondence_to_json(stabilize_base(int(seed % 3)));
      j["nmax"] = 3;
      return j;
    }
    case ScenarioKind::reconstruct: {
      const int d = rng.uniform_int(1, 3);
      const int h = rng.uniform_int(1, 3);
      Json j;
      j["kind"] = "reconstruct";
      j["d"] = d;
      j["h"] = h;
      j["nmax"] = 3;
      Json images = Json::array();
      for (const Matrix& m : random_row_contraction(rng, d, h))
        images.push_back(matrix_to_json(m));
      j["images"] = std::move(images);
      return j;
    }
    case ScenarioKind::disc_convergence: {
      Json j;
      j["kind"] = "disc_convergence";
      Json coeffs = Json::array();
      for (const Complex& c : random_poly_coeffs(rng))
        coeffs.push_back(Json::array({c.real(), c.imag()}));
      j["coeffs"] = std::move(coeffs);
      j["nmax"] = 200;
      return j;
    }
  }
  throw std::runtime_error("unknown scenario kind");
}

}  // namespace tensoralg
