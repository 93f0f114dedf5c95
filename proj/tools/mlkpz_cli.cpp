// mlkpz: renormalization constants, oracle checks, tree dumps and simulations
// for the mollified multi-layer KPZ system.
//
// Exit codes: 0 success, 1 verification failure or blow-up, 2 usage or
// configuration error.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mlkpz/checks.hpp"
#include "mlkpz/renorm_constants.hpp"
#include "mlkpz/sim_config.hpp"
#include "mlkpz/spde_sim.hpp"
#include "mlkpz/trees.hpp"

namespace {

using namespace mlkpz;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string approx(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return "~" + os.str();
}

std::string approx(const Rational& r) { return approx(r.to_double()); }

std::pair<int, int> parse_layer_range(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw UsageError("--layers: expected A..B or N, got '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  const int first = to_int(dots == std::string::npos ? text : text.substr(0, dots));
  const int last = dots == std::string::npos ? first : to_int(text.substr(dots + 2));
  if (first < 1) throw UsageError("--layers: layers start at 1");
  if (last < first) throw UsageError("--layers: empty range '" + text + "'");
  return {first, last};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

int run_constants(const std::string& layers, const std::string& out_path, int budget) {
  const auto [first, last] = parse_layer_range(layers);
  if (last > budget) {
    throw UsageError("layer " + std::to_string(last) + " exceeds the compute budget of " + std::to_string(budget) +
                     "; raise it with --budget");
  }
  std::cout << "layer  c2_log  c3_log  c2+c3   (unit " << kLogUnit << "; decimals approximate)\n";
  for (int n = first; n <= last; ++n) {
    const LayerConstants lc = layer_constants(n);
    const Rational sum = lc.c2.value + lc.c3.value;
    std::cout << n << "  " << lc.c2.value << " (" << approx(lc.c2.value) << ")  " << lc.c3.value << " ("
              << approx(lc.c3.value) << ")  " << sum << " (" << approx(sum) << ")\n";
  }
  if (!out_path.empty()) {
    write_file(out_path, constants_json(first, last, utc_timestamp()));
    std::cout << "wrote " << out_path << "\n";
  }
  return kExitOk;
}

int run_trees(int layer, int order) {
  if (layer < 1) throw UsageError("--layer must be >= 1");
  const auto trees = expand_layer(layer, order);
  std::cout << "layer " << layer << ", order " << order << ": " << trees.size() << " kernel trees\n";
  for (const KernelTree& t : trees) std::cout << "  " << to_string(t) << "\n";
  return kExitOk;
}

int run_check(const std::string& suite) {
  bool ok = true;
  for (const CheckResult& r : run_suite(suite)) {
    std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.name << ": " << r.detail << "\n";
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitFailure;
}

int run_simulate(const std::string& config_path, const std::string& out_dir) {
  SimConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  write_file(dir / "config.resolved", format_config(cfg));

  std::cout << "layers " << cfg.layers << ", grid " << cfg.grid << ", steps " << cfg.steps() << ", epsilon "
            << cfg.epsilon << " grid units, mode " << to_string(cfg.mode) << "\n";
  try {
    const Trajectory traj = simulate(cfg);
    write_trajectory_csv((dir / "trajectory.csv").string(), traj);
    std::cout << "constants subtracted:";
    for (double c : traj.constants) std::cout << " " << approx(c);
    std::cout << "\nwrote " << (dir / "trajectory.csv").string() << "\n";

    if (cfg.hopf_cole) {
      const HopfColeReport hc = compare_with_hopf_cole(cfg);
      std::ostringstream summary;
      summary << "sup_distance," << std::setprecision(17) << hc.sup_distance << "\nfinal_distance,"
              << hc.final_distance << "\n";
      write_file(dir / "hopf_cole.csv", summary.str());
      std::cout << "Hopf-Cole comparison (layer 1): sup distance " << approx(hc.sup_distance)
                << ", distance at horizon " << approx(hc.final_distance) << "\n";
    }

    if (!cfg.study_ladder.empty()) {
      const StudyReport report = eps_stability_study(cfg);
      write_file(dir / "study.json", study_json(report));
      for (const StudyModeResult& m : report.modes) {
        for (std::size_t i = 0; i < m.growth.size(); ++i) {
          std::cout << "study mode " << to_string(m.mode) << ", layer " << i + 1 << ": growth "
                    << approx(m.growth[i].mean) << " +- " << approx(m.growth[i].half_width) << " -> "
                    << (report.grows(m.mode, static_cast<int>(i) + 1) ? "grows" : "does not grow") << "\n";
        }
      }
      std::cout << "wrote " << (dir / "study.json").string() << "\n";
    }
  } catch (const BlowUp& e) {
    std::cerr << "blow-up: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Renormalization constants and simulations for multi-layer KPZ"};
  app.require_subcommand(1);

  std::string layers;
  std::string constants_out;
  int budget = 10;
  auto* constants = app.add_subcommand("constants", "Exact log constants for a layer range");
  constants->add_option("--layers", layers, "Layer range A..B (or a single layer)")->required();
  constants->add_option("--out", constants_out, "Write the JSON document here");
  constants->add_option("--budget", budget, "Largest layer to attempt")->capture_default_str();

  int tree_layer = 1;
  int tree_order = 0;
  auto* trees = app.add_subcommand("trees", "Kernel-tree expansion of one layer");
  trees->add_option("--layer", tree_layer, "Layer n")->required();
  trees->add_option("--order", tree_order, "Expansion order")->required()->check(CLI::Range(0, 2));

  std::string suite = "all";
  auto* check = app.add_subcommand("check", "Run an oracle suite");
  check->add_option("--suite", suite, "kernels, hermite, trees, constants or all")
      ->check(CLI::IsMember({"kernels", "hermite", "trees", "constants", "all"}))
      ->capture_default_str();

  std::string config_path;
  std::string out_dir;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run a simulation from a config file");
  simulate_cmd->add_option("--config", config_path, "Config file")->required();
  simulate_cmd->add_option("--out", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*constants) return run_constants(layers, constants_out, budget);
    if (*trees) return run_trees(tree_layer, tree_order);
    if (*check) return run_check(suite);
    if (*simulate_cmd) return run_simulate(config_path, out_dir);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
