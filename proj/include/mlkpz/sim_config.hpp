#pragma once

// Simulator configuration and its flat "key = value" file format.
//
//   # comment
//   layers = 2
//   grid = 128            spatial points on [0,1)
//   dt_factor = 2         dt = dt_factor / grid^2 (must not exceed kMaxDtFactor)
//   horizon = 0.1
//   epsilon = 4           mollification scale in grid spacings (>= 2)
//   seed = 12345
//   mode = full           none | wick_only | full
//   mollifier = separable_polynomial
//   noise_strength = 1
//   initial = zero        zero | constant | sine
//   initial_value = 0     constant value, or sine amplitude
//   blowup = 1e6
//   output_every = 0      snapshot stride in steps; 0 keeps only the endpoints
//   hopf_cole = false     also run the layer-1 Hopf-Cole reference
//   study_ladder =        comma separated epsilons (grid units), decreasing
//   study_samples = 50
//   study_modes = none,full

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlkpz {

enum class RenormMode { None, WickOnly, Full };
enum class InitialProfile { Zero, Constant, Sine };

std::string to_string(RenormMode mode);
RenormMode parse_mode(const std::string& text);

/// dt = dt_factor * dx^2; the implicit linear part is unconditionally stable,
/// the bound only limits the explicit gradient-squared term.
inline constexpr double kMaxDtFactor = 2.0;
inline constexpr double kMinEpsilonGrid = 2.0;

struct SimConfig {
  int layers = 1;
  int grid = 128;
  double dt_factor = 2.0;
  double horizon = 0.1;
  double epsilon = 4.0;
  std::uint64_t seed = 1;
  RenormMode mode = RenormMode::Full;
  std::string mollifier = "separable_polynomial";
  double noise_strength = 1.0;
  InitialProfile initial = InitialProfile::Zero;
  double initial_value = 0.0;
  double blowup = 1e6;
  int output_every = 0;
  bool hopf_cole = false;
  std::vector<double> study_ladder;
  int study_samples = 50;
  std::vector<RenormMode> study_modes{RenormMode::None, RenormMode::Full};

  double dx() const { return 1.0 / grid; }
  double dt() const { return dt_factor * dx() * dx(); }
  int steps() const;
  /// epsilon in physical units
  double epsilon_physical() const { return epsilon * dx(); }

  /// Throws ConfigError describing the first violated constraint.
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SimConfig parse_config(const std::string& text);
SimConfig load_config(const std::string& path);
std::string format_config(const SimConfig& cfg);

}  // namespace mlkpz
