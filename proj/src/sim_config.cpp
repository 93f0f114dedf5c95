#include "mlkpz/sim_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace mlkpz {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size() || !std::isfinite(out)) throw ConfigError(key + ": not a number: '" + v + "'");
  return out;
}

long to_long(const std::string& key, const std::string& v) {
  long out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError(key + ": not an integer: '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": not a boolean: '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string to_string(RenormMode mode) {
  switch (mode) {
    case RenormMode::None: return "none";
    case RenormMode::WickOnly: return "wick_only";
    case RenormMode::Full: return "full";
  }
  return "none";
}

RenormMode parse_mode(const std::string& text) {
  if (text == "none") return RenormMode::None;
  if (text == "wick_only") return RenormMode::WickOnly;
  if (text == "full") return RenormMode::Full;
  throw ConfigError("unknown renormalization mode '" + text + "'");
}

int SimConfig::steps() const { return static_cast<int>(std::llround(horizon / dt())); }

void SimConfig::validate() const {
  if (layers < 1) throw ConfigError("layers must be >= 1");
  if (grid < 8) throw ConfigError("grid must be >= 8");
  if (!(dt_factor > 0.0) || dt_factor > kMaxDtFactor) {
    throw ConfigError("dt_factor must lie in (0, " + format_double(kMaxDtFactor) + "]");
  }
  if (!(horizon > 0.0)) throw ConfigError("horizon must be positive");
  if (epsilon < kMinEpsilonGrid) throw ConfigError("epsilon must be at least 2 grid spacings");
  if (epsilon > grid / 4.0) throw ConfigError("epsilon must be at most grid/4");
  if (mollifier != "separable_polynomial") throw ConfigError("unsupported mollifier '" + mollifier + "'");
  if (!(blowup > 0.0)) throw ConfigError("blowup must be positive");
  if (output_every < 0) throw ConfigError("output_every must be >= 0");
  for (std::size_t r = 0; r < study_ladder.size(); ++r) {
    if (study_ladder[r] < kMinEpsilonGrid || study_ladder[r] > grid / 4.0) {
      throw ConfigError("study_ladder entries must lie in [2, grid/4]");
    }
    if (r > 0 && !(study_ladder[r] < study_ladder[r - 1])) throw ConfigError("study_ladder must be decreasing");
  }
  if (!study_ladder.empty() && study_ladder.size() < 3) throw ConfigError("study_ladder needs at least 3 rungs");
  if (study_samples < 2) throw ConfigError("study_samples must be >= 2");
}

SimConfig parse_config(const std::string& text) {
  SimConfig cfg;
  const std::map<std::string, std::function<void(const std::string&, const std::string&)>> setters{
      {"layers", [&](auto& k, auto& v) { cfg.layers = static_cast<int>(to_long(k, v)); }},
      {"grid", [&](auto& k, auto& v) { cfg.grid = static_cast<int>(to_long(k, v)); }},
      {"dt_factor", [&](auto& k, auto& v) { cfg.dt_factor = to_double(k, v); }},
      {"horizon", [&](auto& k, auto& v) { cfg.horizon = to_double(k, v); }},
      {"epsilon", [&](auto& k, auto& v) { cfg.epsilon = to_double(k, v); }},
      {"seed", [&](auto& k, auto& v) { cfg.seed = static_cast<std::uint64_t>(to_long(k, v)); }},
      {"mode", [&](auto&, auto& v) { cfg.mode = parse_mode(v); }},
      {"mollifier", [&](auto&, auto& v) { cfg.mollifier = v; }},
      {"noise_strength", [&](auto& k, auto& v) { cfg.noise_strength = to_double(k, v); }},
      {"initial",
       [&](auto& k, auto& v) {
         if (v == "zero") cfg.initial = InitialProfile::Zero;
         else if (v == "constant") cfg.initial = InitialProfile::Constant;
         else if (v == "sine") cfg.initial = InitialProfile::Sine;
         else throw ConfigError(k + ": expected zero, constant or sine");
       }},
      {"initial_value", [&](auto& k, auto& v) { cfg.initial_value = to_double(k, v); }},
      {"blowup", [&](auto& k, auto& v) { cfg.blowup = to_double(k, v); }},
      {"output_every", [&](auto& k, auto& v) { cfg.output_every = static_cast<int>(to_long(k, v)); }},
      {"hopf_cole", [&](auto& k, auto& v) { cfg.hopf_cole = to_bool(k, v); }},
      {"study_ladder",
       [&](auto& k, auto& v) {
         cfg.study_ladder.clear();
         for (const auto& item : split_list(v)) cfg.study_ladder.push_back(to_double(k, item));
       }},
      {"study_samples", [&](auto& k, auto& v) { cfg.study_samples = static_cast<int>(to_long(k, v)); }},
      {"study_modes",
       [&](auto&, auto& v) {
         cfg.study_modes.clear();
         for (const auto& item : split_list(v)) cfg.study_modes.push_back(parse_mode(item));
       }},
  };

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    it->second(key, value);
  }
  cfg.validate();
  return cfg;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string format_config(const SimConfig& cfg) {
  std::ostringstream os;
  os << "layers = " << cfg.layers << "\n"
     << "grid = " << cfg.grid << "\n"
     << "dt_factor = " << format_double(cfg.dt_factor) << "\n"
     << "horizon = " << format_double(cfg.horizon) << "\n"
     << "epsilon = " << format_double(cfg.epsilon) << "\n"
     << "seed = " << cfg.seed << "\n"
     << "mode = " << to_string(cfg.mode) << "\n"
     << "mollifier = " << cfg.mollifier << "\n"
     << "noise_strength = " << format_double(cfg.noise_strength) << "\n"
     << "initial = "
     << (cfg.initial == InitialProfile::Zero ? "zero" : cfg.initial == InitialProfile::Constant ? "constant" : "sine")
     << "\n"
     << "initial_value = " << format_double(cfg.initial_value) << "\n"
     << "blowup = " << format_double(cfg.blowup) << "\n"
     << "output_every = " << cfg.output_every << "\n"
     << "hopf_cole = " << (cfg.hopf_cole ? "true" : "false") << "\n"
     << "study_ladder = ";
  for (std::size_t r = 0; r < cfg.study_ladder.size(); ++r) os << (r ? "," : "") << format_double(cfg.study_ladder[r]);
  os << "\nstudy_samples = " << cfg.study_samples << "\nstudy_modes = ";
  for (std::size_t r = 0; r < cfg.study_modes.size(); ++r) os << (r ? "," : "") << to_string(cfg.study_modes[r]);
  os << "\n";
  return os.str();
}

}  // namespace mlkpz
