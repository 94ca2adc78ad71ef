// Command-line harness: verification campaigns, instance generation, and
// report rendering for the tensor-algebra engine.
//
//   tensoralg verify <kind|all> [--instance file] [--seed N] [--trials N]
//                    [--nmax N] [--tol name=value ...] [--out path]
//                    [--format human|machine] [--verbose]
//   tensoralg generate <kind> [--seed N] [--out path]
//   tensoralg report <file> [--format human|machine] [--verbose]
//
// Exit status: 0 all campaigns passed, 1 a campaign failed, 2 usage or
// input errors.  TENSORALG_OUT_DIR sets the default output directory for
// written files when --out is not given.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tensoralg/scenario.hpp"

namespace {

using tensoralg::Json;
using tensoralg::Scenario;
using tensoralg::ScenarioKind;
using tensoralg::ScenarioReport;

struct Options {
  std::string kind;
  std::string file;
  std::uint64_t seed = 0xC0FFEE;
  int trials = 200;
  int nmax = 0;
  std::vector<std::string> tol;
  std::string instance_file;
  std::string out;
  std::string format = "human";
  bool verbose = false;
};

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& flags) {
  std::map<std::string, double> out;
  for (const std::string& flag : flags) {
    const auto eq = flag.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("--tol expects name=value, got: " + flag);
    out[flag.substr(0, eq)] = std::stod(flag.substr(eq + 1));
  }
  return out;
}

std::filesystem::path default_out_dir() {
  if (const char* dir = std::getenv("TENSORALG_OUT_DIR")) return dir;
  return {};
}

void emit(const ScenarioReport& report, const Options& opt) {
  if (opt.format == "machine")
    std::cout << report.to_json().dump(2) << '\n';
  else
    std::cout << report.human(opt.verbose);
}

/// Where to write the machine report of one campaign, or empty for nowhere.
std::filesystem::path report_path(const Options& opt, ScenarioKind kind, bool campaign_all) {
  const std::string name = std::string(tensoralg::scenario_kind_name(kind)) + "-report.json";
  if (!opt.out.empty()) {
    if (!campaign_all) return opt.out;
    std::filesystem::create_directories(opt.out);
    return std::filesystem::path(opt.out) / name;
  }
  const std::filesystem::path dir = default_out_dir();
  if (dir.empty()) return {};
  std::filesystem::create_directories(dir);
  return dir / name;
}

int run_verify(const Options& opt) {
  std::vector<ScenarioKind> kinds;
  const bool campaign_all = opt.kind == "all";
  if (campaign_all) {
    kinds = tensoralg::all_scenario_kinds();
  } else {
    ScenarioKind k;
    if (!tensoralg::scenario_kind_from_name(opt.kind, &k)) {
      std::cerr << "unknown kind: " << opt.kind << '\n';
      return 2;
    }
    kinds.push_back(k);
  }

  Json instance;
  if (!opt.instance_file.empty()) instance = tensoralg::read_json_file(opt.instance_file);

  bool all_passed = true;
  for (ScenarioKind k : kinds) {
    Scenario s;
    s.kind = k;
    s.seed = opt.seed;
    s.trials = opt.trials;
    s.nmax = opt.nmax;
    s.tolerance_overrides = parse_tolerances(opt.tol);
    s.instance = instance;
    const ScenarioReport report = tensoralg::run_scenario(s);
    emit(report, opt);
    const std::filesystem::path path = report_path(opt, k, campaign_all);
    if (!path.empty()) {
      tensoralg::write_json_file(path.string(), report.to_json());
      std::cerr << "wrote " << path.string() << '\n';
    }
    all_passed = all_passed && report.passed();
  }
  return all_passed ? 0 : 1;
}

int run_generate(const Options& opt) {
  ScenarioKind k;
  if (!tensoralg::scenario_kind_from_name(opt.kind, &k)) {
    std::cerr << "unknown kind: " << opt.kind << '\n';
    return 2;
  }
  const Json instance = tensoralg::generate_instance(k, opt.seed);
  std::filesystem::path path = opt.out;
  if (path.empty()) {
    const std::filesystem::path dir = default_out_dir();
    const std::string name =
        std::string(tensoralg::scenario_kind_name(k)) + "-instance.json";
    if (dir.empty()) {
      path = name;
    } else {
      std::filesystem::create_directories(dir);
      path = dir / name;
    }
  }
  tensoralg::write_json_file(path.string(), instance);
  std::cout << path.string() << '\n';
  return 0;
}

int run_report(const Options& opt) {
  const Json j = tensoralg::read_json_file(opt.file);
  const ScenarioReport report = tensoralg::report_from_json(j);
  emit(report, opt);
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-dimensional tensor-algebra verification harness"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* verify = app.add_subcommand("verify", "Run a verification campaign");
  verify->add_option("kind", opt.kind, "Campaign kind or 'all'")->required();
  verify->add_option("--seed", opt.seed, "Master seed");
  verify->add_option("--trials", opt.trials, "Trials per campaign");
  verify->add_option("--nmax", opt.nmax, "Truncation level (0 = kind default)");
  verify->add_option("--tol", opt.tol, "Tolerance override name=value");
  verify->add_option("--instance", opt.instance_file, "Serialized instance file");
  verify->add_option("--out", opt.out, "Report file (directory for 'all')");
  verify->add_option("--format", opt.format, "human|machine")
      ->check(CLI::IsMember({"human", "machine"}));
  verify->add_flag("--verbose", opt.verbose, "Per-trial residual tables");

  CLI::App* generate = app.add_subcommand("generate", "Emit a reproducible instance");
  generate->add_option("kind", opt.kind, "Instance kind")->required();
  generate->add_option("--seed", opt.seed, "Generator seed");
  generate->add_option("--out", opt.out, "Output file");

  CLI::App* report = app.add_subcommand("report", "Render a stored machine report");
  report->add_option("file", opt.file, "Machine report JSON")->required();
  report->add_option("--format", opt.format, "human|machine")
      ->check(CLI::IsMember({"human", "machine"}));
  report->add_flag("--verbose", opt.verbose, "Per-trial residual tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return run_verify(opt);
    if (generate->parsed()) return run_generate(opt);
    if (report->parsed()) return run_report(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
