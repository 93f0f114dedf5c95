#pragma once

// Finite-difference simulation of the mollified multi-layer KPZ system on the
// periodic grid x_j = j/M:
//
//   (I - dt L) h_i^{n+1} = h_i^n + dt ( sum_{j<i} L h_j^{n+1} + N(h_i^n) + xi^n - C_i )
//
// with L the three-point Laplacian and N(h) = ((D+ h)^2 + (D- h)^2) / 2. The
// noise xi^n is white noise of variance 1/(dt dx) per cell filtered by the
// sampled separable mollifier at scale epsilon.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlkpz/sim_config.hpp"

namespace mlkpz {

class BlowUp : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SimState {
  std::vector<std::vector<double>> fields;  // fields[i][j]: layer i+1 at x_j
  double time = 0.0;
  long step = 0;
};

struct Snapshot {
  double time = 0.0;
  std::vector<std::vector<double>> fields;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;  // always includes t = 0 and the final time
  std::vector<double> constants;    // C_i actually subtracted
};

/// Mollified noise rows xi^0, xi^1, ... for one configuration. The underlying
/// white noise row n depends only on (seed, n, grid), so configurations that
/// differ only in epsilon, mode or layer count see the same realization.
class NoiseSource {
 public:
  explicit NoiseSource(const SimConfig& cfg);

  /// The next mollified row; the first call returns xi^0.
  const std::vector<double>& next();

  /// Normalized time and space filter taps, centred (size 2S+1 and 2Y+1).
  const std::vector<double>& time_taps() const { return time_taps_; }
  const std::vector<double>& space_taps() const { return space_taps_; }

 private:
  std::vector<double> white_row(long n) const;
  std::vector<double> space_filtered_row(long n) const;

  int grid_;
  std::uint64_t seed_;
  double sigma_;
  std::vector<double> time_taps_;
  std::vector<double> space_taps_;
  std::vector<std::vector<double>> ring_;  // space-filtered rows n-S .. n+S
  long next_row_ = 0;
  std::vector<double> current_;
};

/// Separable mollifier taps: psi(k h / s) h / s, normalized to unit sum.
std::vector<double> mollifier_taps(double scale_in_steps);

/// Exact stationary E[(D+ X_i)^2] of the linearized scheme for each layer,
/// X_i the Gaussian part of h_i. Evaluated mode by mode in Fourier space.
std::vector<double> lattice_wick_constants(const SimConfig& cfg);
/// E[(D+ Y_a)(D+ Y_b)] for the cascade Y_0 = S xi, Y_m = S L Y_{m-1}, with
/// X_i = sum_m binom(i-1, m) Y_m; a, b < layers.
std::vector<std::vector<double>> lattice_wick_matrix(const SimConfig& cfg);

/// Constants C_i subtracted under cfg.mode: 0, the lattice Wick constant, or
/// the Wick constant plus (c2 + c3)/(4 sqrt(3) pi) log(eps_physical).
std::vector<double> applied_constants(const SimConfig& cfg);

SimState initial_state(const SimConfig& cfg);

/// One time step. Throws BlowUp when a value is non-finite or exceeds
/// cfg.blowup in magnitude.
SimState step(const SimState& state, const SimConfig& cfg, const std::vector<double>& noise,
              const std::vector<double>& constants);

Trajectory simulate(const SimConfig& cfg);
/// As simulate, starting from the given state and subtracting the given constants.
Trajectory simulate_from(const SimConfig& cfg, SimState state, const std::vector<double>& constants);

/// log Z for dZ = L Z dt + Z (xi - c) dt with c the layer-1 lattice Wick
/// constant: Z^{n+1} = (I - dt L)^{-1} [Z^n exp(dt (xi^n - c))], Z^0 = exp(h_1^0).
/// Throws BlowUp if Z loses positivity. Snapshot fields hold one layer.
Trajectory hopf_cole_reference(const SimConfig& cfg);

double sup_distance(const std::vector<double>& a, const std::vector<double>& b);

struct HopfColeReport {
  double sup_distance = 0.0;  // max over snapshots and grid points
  double final_distance = 0.0;
};
HopfColeReport compare_with_hopf_cole(const SimConfig& cfg);

struct MeanInterval {
  double mean = 0.0;
  double half_width = 0.0;  // 95% normal interval
  double lower() const { return mean - half_width; }
  double upper() const { return mean + half_width; }
};

struct StudyModeResult {
  RenormMode mode = RenormMode::None;
  // pair_differences[p][i]: E sup |h_i(eps_p) - h_i(eps_{p+1})| at the horizon
  std::vector<std::vector<MeanInterval>> pair_differences;
  // growth[i]: per-sample paired difference, last pair minus first pair
  std::vector<MeanInterval> growth;
};

struct StudyReport {
  SimConfig config;
  std::vector<double> ladder;
  int samples = 0;
  std::vector<StudyModeResult> modes;

  /// true when the 95% interval of growth[layer-1] lies above 0; throws if
  /// the mode was not part of the study
  bool grows(RenormMode mode, int layer) const;
  /// true when that interval does not lie above 0
  bool does_not_grow(RenormMode mode, int layer) const { return !grows(mode, layer); }
};

/// Coupled epsilon-ladder study: every sample uses one white-noise realization
/// for all rungs and modes.
StudyReport eps_stability_study(const SimConfig& cfg);

std::string study_json(const StudyReport& report);
void write_trajectory_csv(const std::string& path, const Trajectory& trajectory);

}  // namespace mlkpz
