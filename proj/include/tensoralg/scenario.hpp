#ifndef TENSORALG_SCENARIO_HPP
#define TENSORALG_SCENARIO_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tensoralg/report.hpp"
#include "tensoralg/serialization.hpp"

namespace tensoralg {

/// A verification campaign kind; each one exercises one headline identity.
///   functor          norm preservation, covariance and dual-dimension
///                    equality of the transform of dual points
///   cp_lemma         the induced CP map is the ampliation of the original
///   ac_transform     the absolute-continuity projection transports through
///                    the commutant lift
///   stabilize        shift/projection identities of the canonical
///                    stabilization of a correspondence
///   reconstruct      the reconstruction operator against its row-shift form
///   disc_convergence truncated tensor-algebra norms against circle suprema
enum class ScenarioKind {
  functor,
  cp_lemma,
  ac_transform,
  stabilize,
  reconstruct,
  disc_convergence,
};

const char* scenario_kind_name(ScenarioKind k);
/// Returns false if the name is not a kind.
bool scenario_kind_from_name(const std::string& name, ScenarioKind* out);
std::vector<ScenarioKind> all_scenario_kinds();

/// A fully seeded campaign description.  `nmax` = 0 means the kind's default
/// truncation (cycled caps for stabilize/reconstruct, 200 for
/// disc_convergence); it is ignored by the kinds that never truncate.
/// `instance` may carry a serialized instance (see generate_instance); when
/// null every trial generates its own.
struct Scenario {
  ScenarioKind kind = ScenarioKind::functor;
  std::uint64_t seed = 0xC0FFEE;
  int trials = 200;
  int nmax = 0;
  std::map<std::string, double> tolerance_overrides;
  Json instance;

  Json to_json() const;
  static Scenario from_json(const Json& j);
};

struct TrialRecord {
  int trial = 0;
  CheckReport report;
};

struct ScenarioReport {
  Scenario scenario;
  std::map<std::string, double> tolerances;  ///< resolved per-residual bounds
  std::vector<TrialRecord> records;          ///< sorted by trial index
  double wall_ms = 0.0;

  std::map<std::string, double> max_residuals() const;
  bool passed() const;
  /// Machine format; identical bytes for identical scenarios except for the
  /// wall_time_ms field.
  Json to_json() const;
  /// Human format carrying the same numbers (shortest round-trip digits).
  std::string human(bool verbose) const;
};

/// Pinned per-residual bounds of a kind.
std::map<std::string, double> default_tolerances(ScenarioKind kind);

ScenarioReport run_scenario(const Scenario& s);

/// Rebuild a report from its machine form (for rendering stored reports).
ScenarioReport report_from_json(const Json& j);

/// Reproducible serialized instance for a kind: the generating data only
/// (block structures, modules, points); derived structure is rebuilt on load.
Json generate_instance(ScenarioKind kind, std::uint64_t seed);

}  // namespace tensoralg

#endif  // TENSORALG_SCENARIO_HPP
