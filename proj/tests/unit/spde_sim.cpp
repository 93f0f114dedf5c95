#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mlkpz/renorm_constants.hpp"
#include "mlkpz/spde_sim.hpp"

using namespace mlkpz;

namespace {

SimConfig small(int layers) {
  SimConfig cfg;
  cfg.layers = layers;
  cfg.grid = 32;
  cfg.epsilon = 2;
  cfg.horizon = 0.02;
  cfg.seed = 3;
  return cfg;
}

double max_abs(const std::vector<std::vector<double>>& f) {
  double m = 0.0;
  for (const auto& row : f) {
    for (double v : row) m = std::max(m, std::abs(v));
  }
  return m;
}

}  // namespace

TEST_SUITE("spde_sim") {
  TEST_CASE("filter taps are normalized and even") {
    for (double s : {2.0, 3.5, 8.0}) {
      const auto taps = mollifier_taps(s);
      CHECK(std::accumulate(taps.begin(), taps.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
      for (std::size_t k = 0; k < taps.size(); ++k) CHECK(taps[k] == taps[taps.size() - 1 - k]);
    }
    NoiseSource noise(small(1));
    CHECK(noise.space_taps().size() % 2 == 1);
  }

  TEST_CASE("noise depends only on seed, row and grid") {
    SimConfig a = small(1);
    SimConfig b = small(3);
    b.mode = RenormMode::None;
    NoiseSource na(a), nb(b);
    for (int n = 0; n < 5; ++n) CHECK(na.next() == nb.next());
    SimConfig c = small(1);
    c.seed = 4;
    NoiseSource nc(c), nd(a);
    CHECK(nc.next() != nd.next());
  }

  TEST_CASE("deterministic under a fixed seed") {
    const SimConfig cfg = small(2);
    const Trajectory a = simulate(cfg);
    const Trajectory b = simulate(cfg);
    REQUIRE(a.snapshots.size() == b.snapshots.size());
    CHECK(a.snapshots.back().fields == b.snapshots.back().fields);
    CHECK(a.snapshots.front().time == 0.0);
    // the horizon is rounded to a whole number of steps
    CHECK(a.snapshots.back().time == doctest::Approx(cfg.steps() * cfg.dt()));
    CHECK(std::abs(a.snapshots.back().time - cfg.horizon) <= 0.5 * cfg.dt());
  }

  TEST_CASE("full and wick_only differ by the deterministic shift") {
    SimConfig wick = small(3);
    wick.mode = RenormMode::WickOnly;
    SimConfig full = wick;
    full.mode = RenormMode::Full;
    const auto cw = applied_constants(wick);
    const auto cf = applied_constants(full);
    // layer 1 logs cancel
    CHECK(cf[0] == doctest::Approx(cw[0]).epsilon(1e-15));
    CHECK(std::abs(cf[1] - cw[1]) > 1e-6);
    const Trajectory tw = simulate(wick);
    const Trajectory tf = simulate(full);
    REQUIRE(tw.snapshots.size() == tf.snapshots.size());
    for (std::size_t s = 0; s < tw.snapshots.size(); ++s) {
      const double t = tw.snapshots[s].time;
      for (int i = 0; i < 3; ++i) {
        const double shift = t * (cf[i] - cw[i]);
        for (std::size_t j = 0; j < tw.snapshots[s].fields[i].size(); ++j) {
          CHECK(std::abs(tw.snapshots[s].fields[i][j] - shift - tf.snapshots[s].fields[i][j]) <= 1e-9);
        }
      }
    }
  }

  TEST_CASE("log term of full mode") {
    SimConfig cfg = small(2);
    SimConfig wick = cfg;
    wick.mode = RenormMode::WickOnly;
    const double expected = (c2_log(2).value + c3_log(2).value).to_double() / (4.0 * std::sqrt(3.0) * M_PI) *
                            std::log(cfg.epsilon_physical());
    CHECK(applied_constants(cfg)[1] - applied_constants(wick)[1] == doctest::Approx(expected));
    SimConfig none = cfg;
    none.mode = RenormMode::None;
    CHECK(applied_constants(none) == std::vector<double>{0.0, 0.0});
  }

  TEST_CASE("lower layers ignore the upper ones") {
    SimConfig two = small(2);
    SimConfig three = small(3);
    const Trajectory a = simulate(two);
    const Trajectory b = simulate(three);
    for (std::size_t s = 0; s < a.snapshots.size(); ++s) {
      for (int i = 0; i < 2; ++i) CHECK(a.snapshots[s].fields[i] == b.snapshots[s].fields[i]);
    }
    // perturbing the top layer's initial data leaves layers 1..2 untouched
    SimState init = initial_state(three);
    for (double& v : init.fields[2]) v += 0.7;
    const Trajectory c = simulate_from(three, init, applied_constants(three));
    for (int i = 0; i < 2; ++i) CHECK(c.snapshots.back().fields[i] == b.snapshots.back().fields[i]);
    CHECK(c.snapshots.back().fields[2] != b.snapshots.back().fields[2]);
  }

  TEST_CASE("zero noise, zero data stays zero") {
    SimConfig cfg = small(3);
    cfg.noise_strength = 0.0;
    cfg.mode = RenormMode::None;
    CHECK(max_abs(simulate(cfg).snapshots.back().fields) == 0.0);
  }

  TEST_CASE("zero noise, constant data stays constant") {
    SimConfig cfg = small(3);
    cfg.noise_strength = 0.0;
    cfg.mode = RenormMode::None;
    cfg.initial = InitialProfile::Constant;
    cfg.initial_value = 1.25;
    const Trajectory traj = simulate(cfg);
    for (const auto& row : traj.snapshots.back().fields) {
      for (double v : row) CHECK(v == doctest::Approx(1.25).epsilon(1e-14));
    }
  }

  TEST_CASE("without noise the mean of layer 1 never decreases") {
    SimConfig cfg = small(1);
    cfg.noise_strength = 0.0;
    cfg.mode = RenormMode::None;
    cfg.initial = InitialProfile::Sine;
    cfg.initial_value = 0.3;
    cfg.output_every = 1;
    const Trajectory traj = simulate(cfg);
    double previous = -1.0;
    for (const Snapshot& s : traj.snapshots) {
      const auto& h = s.fields[0];
      const double mean = std::accumulate(h.begin(), h.end(), 0.0) / h.size();
      CHECK(mean >= previous - 1e-15);
      previous = mean;
    }
    CHECK(previous > 0.0);
  }

  TEST_CASE("blow-up is reported") {
    SimConfig cfg = small(1);
    cfg.initial = InitialProfile::Constant;
    cfg.initial_value = 10.0;
    cfg.blowup = 5.0;
    CHECK_THROWS_AS(simulate(cfg), BlowUp);
  }

  TEST_CASE("lattice Wick constant matches the linearized Monte Carlo average") {
    // At tiny noise amplitude the scheme is linear; average (D+ h_i)^2 over a
    // long stationary run.
    SimConfig cfg;
    cfg.layers = 3;
    cfg.grid = 64;
    cfg.epsilon = 4;
    cfg.noise_strength = 1e-4;
    cfg.horizon = 4.0;
    cfg.mode = RenormMode::None;
    const auto exact = lattice_wick_constants(cfg);
    NoiseSource noise(cfg);
    SimState state = initial_state(cfg);
    const std::vector<double> zero(3, 0.0);
    std::vector<double> acc(3, 0.0);
    long count = 0;
    const int steps = cfg.steps();
    const double dx = cfg.dx();
    for (int n = 0; n < steps; ++n) {
      state = step(state, cfg, noise.next(), zero);
      if (n < steps / 8) continue;
      for (int i = 0; i < 3; ++i) {
        const auto& h = state.fields[i];
        for (int j = 0; j < cfg.grid; ++j) {
          const double d = (h[(j + 1) % cfg.grid] - h[j]) / dx;
          acc[i] += d * d;
        }
      }
      count += cfg.grid;
    }
    for (int i = 0; i < 3; ++i) CHECK(acc[i] / count == doctest::Approx(exact[i]).epsilon(0.05));
    // the matrix is symmetric positive semi-definite on its diagonal
    const auto cov = lattice_wick_matrix(cfg);
    for (std::size_t a = 0; a < cov.size(); ++a) {
      CHECK(cov[a][a] > 0.0);
      for (std::size_t b = 0; b < cov.size(); ++b) CHECK(cov[a][b] == doctest::Approx(cov[b][a]));
    }
  }

  TEST_CASE("Hopf-Cole reference") {
    SimConfig cfg = small(1);
    cfg.noise_strength = 0.0;
    cfg.mode = RenormMode::None;
    const Trajectory ref = hopf_cole_reference(cfg);
    CHECK(max_abs(ref.snapshots.back().fields) <= 1e-12);  // roundoff of the cyclic solve
    CHECK(compare_with_hopf_cole(cfg).sup_distance <= 1e-12);

    SimConfig noisy = small(1);
    noisy.grid = 64;
    noisy.epsilon = 4;
    const HopfColeReport r = compare_with_hopf_cole(noisy);
    CHECK(r.sup_distance >= r.final_distance);
    CHECK(std::isfinite(r.sup_distance));
  }

  TEST_CASE("epsilon-ladder study bookkeeping") {
    SimConfig cfg;
    cfg.layers = 2;
    cfg.grid = 32;
    cfg.horizon = 0.02;
    cfg.study_ladder = {8, 4, 2};
    cfg.study_samples = 4;
    cfg.study_modes = {RenormMode::None, RenormMode::Full};
    const StudyReport r = eps_stability_study(cfg);
    REQUIRE(r.modes.size() == 2);
    CHECK(r.modes[0].pair_differences.size() == 2);
    CHECK(r.modes[0].growth.size() == 2);
    CHECK_THROWS(r.grows(RenormMode::WickOnly, 1));
    CHECK(study_json(r) == study_json(eps_stability_study(cfg)));
  }
}
