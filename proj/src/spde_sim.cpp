#include "mlkpz/spde_sim.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"
#include "mlkpz/mollifier.hpp"
#include "mlkpz/parallel.hpp"
#include "mlkpz/rational.hpp"
#include "mlkpz/renorm_constants.hpp"

namespace mlkpz {
namespace {

// Solves (I - dt L) x = d on the periodic grid, L the three-point Laplacian,
// by Thomas elimination plus a Sherman-Morrison correction for the corners.
class CyclicSolver {
 public:
  CyclicSolver(int m, double r) : m_(static_cast<std::size_t>(m)), r_(r), diag_(1.0 + 2.0 * r) {
    gamma_ = -diag_;
    cprime_.resize(m_);
    denom_.resize(m_);
    for (std::size_t j = 0; j < m_; ++j) {
      double b = diag_;
      if (j == 0) b -= gamma_;
      if (j == m_ - 1) b -= r_ * r_ / gamma_;
      const double prev = j == 0 ? 0.0 : cprime_[j - 1];
      denom_[j] = b - (j == 0 ? 0.0 : -r_ * prev);
      cprime_[j] = -r_ / denom_[j];
    }
    std::vector<double> u(m_, 0.0);
    u[0] = gamma_;
    u[m_ - 1] = -r_;
    z_ = thomas(u);
    vz_ = z_[0] + (-r_ / gamma_) * z_[m_ - 1];
  }

  void solve(std::vector<double>& d) const {
    std::vector<double> y = thomas(d);
    const double vy = y[0] + (-r_ / gamma_) * y[m_ - 1];
    const double f = vy / (1.0 + vz_);
    for (std::size_t j = 0; j < m_; ++j) d[j] = y[j] - f * z_[j];
  }

 private:
  std::vector<double> thomas(const std::vector<double>& d) const {
    std::vector<double> x(m_);
    x[0] = d[0] / denom_[0];
    for (std::size_t j = 1; j < m_; ++j) x[j] = (d[j] + r_ * x[j - 1]) / denom_[j];
    for (std::size_t j = m_ - 1; j-- > 0;) x[j] -= cprime_[j] * x[j + 1];
    return x;
  }

  std::size_t m_;
  double r_;
  double diag_;
  double gamma_;
  std::vector<double> cprime_;
  std::vector<double> denom_;
  std::vector<double> z_;
  double vz_ = 0.0;
};

std::size_t wrap(long j, std::size_t m) {
  const long mm = static_cast<long>(m);
  return static_cast<std::size_t>(((j % mm) + mm) % mm);
}

void laplacian_add(const std::vector<double>& h, double scale, std::vector<double>& out) {
  const std::size_t m = h.size();
  for (std::size_t j = 0; j < m; ++j) {
    out[j] += scale * (h[(j + 1) % m] - 2.0 * h[j] + h[(j + m - 1) % m]);
  }
}

void check_finite(const std::vector<double>& v, double threshold, int layer, long step_index) {
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!std::isfinite(v[j]) || std::abs(v[j]) > threshold) {
      std::ostringstream os;
      os << "blow-up in layer " << layer << " at step " << step_index << ", grid index " << j << " (value " << v[j]
         << ", threshold " << threshold << ")";
      throw BlowUp(os.str());
    }
  }
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double time_scale_steps(const SimConfig& cfg) { return cfg.epsilon * cfg.epsilon / cfg.dt_factor; }

bool wants_snapshot(const SimConfig& cfg, long n, long total) {
  if (n == 0 || n == total) return true;
  return cfg.output_every > 0 && n % cfg.output_every == 0;
}

MeanInterval interval(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= (n - 1.0);
  return {mean, 1.96 * std::sqrt(var / n)};
}

}  // namespace

std::vector<double> mollifier_taps(double scale_in_steps) {
  const double half = MollifierSpec::kSeparableHalfWidth * scale_in_steps;
  const long reach = static_cast<long>(std::floor(half));
  std::vector<double> taps;
  double sum = 0.0;
  for (long k = -reach; k <= reach; ++k) {
    const double v = MollifierSpec::separable_factor(static_cast<double>(k) / scale_in_steps);
    taps.push_back(v);
    sum += v;
  }
  if (!(sum > 0.0)) return {1.0};
  for (double& v : taps) v /= sum;
  return taps;
}

NoiseSource::NoiseSource(const SimConfig& cfg)
    : grid_(cfg.grid),
      seed_(cfg.seed),
      sigma_(cfg.noise_strength / std::sqrt(cfg.dt() * cfg.dx())),
      time_taps_(mollifier_taps(time_scale_steps(cfg))),
      space_taps_(mollifier_taps(cfg.epsilon)) {
  const long reach = static_cast<long>(time_taps_.size() / 2);
  for (long n = -reach; n <= reach; ++n) ring_.push_back(space_filtered_row(n));
  current_.assign(static_cast<std::size_t>(grid_), 0.0);
}

std::vector<double> NoiseSource::white_row(long n) const {
  const auto row = static_cast<std::uint64_t>(n);
  std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                    static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(row >> 32),
                    static_cast<std::uint32_t>(grid_)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> w(static_cast<std::size_t>(grid_));
  for (double& v : w) v = sigma_ * normal(rng);
  return w;
}

std::vector<double> NoiseSource::space_filtered_row(long n) const {
  const std::vector<double> w = white_row(n);
  const auto m = static_cast<std::size_t>(grid_);
  const long reach = static_cast<long>(space_taps_.size() / 2);
  std::vector<double> out(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double acc = 0.0;
    for (long y = -reach; y <= reach; ++y) {
      acc += space_taps_[static_cast<std::size_t>(y + reach)] * w[wrap(static_cast<long>(j) - y, m)];
    }
    out[j] = acc;
  }
  return out;
}

const std::vector<double>& NoiseSource::next() {
  // ring_ holds rows next_row_ - S .. next_row_ + S in order
  const std::size_t width = time_taps_.size();
  std::fill(current_.begin(), current_.end(), 0.0);
  for (std::size_t k = 0; k < width; ++k) {
    // row next_row_ - s with s = S - k pairs with tap a_s = a_{S-k}; taps are even
    const double a = time_taps_[k];
    const std::vector<double>& row = ring_[k];
    for (std::size_t j = 0; j < current_.size(); ++j) current_[j] += a * row[j];
  }
  ring_.erase(ring_.begin());
  const long reach = static_cast<long>(width / 2);
  ring_.push_back(space_filtered_row(next_row_ + reach + 1));
  ++next_row_;
  return current_;
}

std::vector<std::vector<double>> lattice_wick_matrix(const SimConfig& cfg) {
  cfg.validate();
  const int n = cfg.layers;
  const int m = cfg.grid;
  const double dt = cfg.dt();
  const double dx = cfg.dx();
  const double sigma2 = cfg.noise_strength * cfg.noise_strength / (dt * dx);
  const std::vector<double> a = mollifier_taps(time_scale_steps(cfg));
  const std::vector<double> b = mollifier_taps(cfg.epsilon);
  const long sa = static_cast<long>(a.size() / 2);
  const long sb = static_cast<long>(b.size() / 2);
  // autocorrelation of the time taps, lags 0 .. 2S
  std::vector<double> a2(static_cast<std::size_t>(2 * sa + 1), 0.0);
  for (long tau = 0; tau <= 2 * sa; ++tau) {
    for (long s = -sa; s + tau <= sa; ++s) {
      a2[static_cast<std::size_t>(tau)] += a[static_cast<std::size_t>(s + sa)] * a[static_cast<std::size_t>(s + tau + sa)];
    }
  }

  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(n, n);
  for (int q = 1; q < m; ++q) {
    const double theta = 2.0 * std::numbers::pi * q / m;
    const double mu = 4.0 * std::sin(0.5 * theta) * std::sin(0.5 * theta) / (dx * dx);
    const double lambda = 1.0 / (1.0 + dt * mu);
    double bhat = 0.0;
    for (long y = -sb; y <= sb; ++y) bhat += b[static_cast<std::size_t>(y + sb)] * std::cos(theta * static_cast<double>(y));

    // Y(n+1) = F Y(n) + h xi(n) for the cascade of one Fourier mode
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd h = Eigen::VectorXd::Zero(n);
    f(0, 0) = lambda;
    h(0) = lambda * dt;
    for (int k = 1; k < n; ++k) {
      f.row(k) = -lambda * dt * mu * f.row(k - 1);
      f(k, k) += lambda;
      h(k) = -lambda * dt * mu * h(k - 1);
    }
    // stationary covariance: P = F P F^T + h h^T
    const int nn = n * n;
    Eigen::MatrixXd kron(nn, nn);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) kron(i * n + k, j * n + l) = f(i, j) * f(k, l);
    const Eigen::MatrixXd hh = h * h.transpose();
    Eigen::VectorXd rhs(nn);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) rhs(i * n + k) = hh(i, k);
    const Eigen::VectorXd vecp = (Eigen::MatrixXd::Identity(nn, nn) - kron).partialPivLu().solve(rhs);
    Eigen::MatrixXd gamma(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) gamma(i, k) = vecp(i * n + k);

    // colored input: sum over lags of A2(tau) Gamma(tau), Gamma(-tau) = Gamma(tau)^T
    Eigen::MatrixXd cov = a2[0] * gamma;
    Eigen::MatrixXd lagged = gamma;
    for (long tau = 1; tau <= 2 * sa; ++tau) {
      lagged = f * lagged;
      cov += a2[static_cast<std::size_t>(tau)] * (lagged + lagged.transpose());
    }
    total += (bhat * bhat * mu) * cov;
  }
  total *= sigma2 / m;

  std::vector<std::vector<double>> out(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = 0.5 * (total(i, k) + total(k, i));
  return out;
}

std::vector<double> lattice_wick_constants(const SimConfig& cfg) {
  const auto cov = lattice_wick_matrix(cfg);
  std::vector<double> out(static_cast<std::size_t>(cfg.layers), 0.0);
  for (int layer = 1; layer <= cfg.layers; ++layer) {
    double c = 0.0;
    for (int p = 0; p < layer; ++p) {
      for (int q = 0; q < layer; ++q) {
        c += binom(layer - 1, p).to_double() * binom(layer - 1, q).to_double() *
             cov[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
      }
    }
    out[static_cast<std::size_t>(layer - 1)] = c;
  }
  return out;
}

std::vector<double> applied_constants(const SimConfig& cfg) {
  if (cfg.mode == RenormMode::None) return std::vector<double>(static_cast<std::size_t>(cfg.layers), 0.0);
  std::vector<double> c = lattice_wick_constants(cfg);
  if (cfg.mode == RenormMode::Full) {
    const double log_eps = std::log(cfg.epsilon_physical());
    for (int layer = 1; layer <= cfg.layers; ++layer) {
      const Rational q = c2_log(layer).value + c3_log(layer).value;
      c[static_cast<std::size_t>(layer - 1)] += LogConstant{q}.log_coefficient() * log_eps;
    }
  }
  return c;
}

SimState initial_state(const SimConfig& cfg) {
  SimState s;
  const auto m = static_cast<std::size_t>(cfg.grid);
  for (int i = 0; i < cfg.layers; ++i) {
    std::vector<double> f(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      switch (cfg.initial) {
        case InitialProfile::Zero: break;
        case InitialProfile::Constant: f[j] = cfg.initial_value; break;
        case InitialProfile::Sine:
          f[j] = cfg.initial_value * std::sin(2.0 * std::numbers::pi * static_cast<double>(j) / cfg.grid);
          break;
      }
    }
    s.fields.push_back(std::move(f));
  }
  return s;
}

SimState step(const SimState& state, const SimConfig& cfg, const std::vector<double>& noise,
              const std::vector<double>& constants) {
  const std::size_t m = static_cast<std::size_t>(cfg.grid);
  const double dt = cfg.dt();
  const double dx = cfg.dx();
  const double inv_dx = 1.0 / dx;
  const CyclicSolver solver(cfg.grid, dt / (dx * dx));
  if (noise.size() != m || constants.size() != state.fields.size()) throw std::invalid_argument("step: size mismatch");

  SimState next;
  next.time = state.time + dt;
  next.step = state.step + 1;
  next.fields.resize(state.fields.size());
  for (std::size_t i = 0; i < state.fields.size(); ++i) {
    const std::vector<double>& h = state.fields[i];
    std::vector<double> rhs(m);
    for (std::size_t j = 0; j < m; ++j) {
      const double dp = (h[(j + 1) % m] - h[j]) * inv_dx;
      const double dm = (h[j] - h[(j + m - 1) % m]) * inv_dx;
      rhs[j] = h[j] + dt * (0.5 * (dp * dp + dm * dm) + noise[j] - constants[i]);
    }
    for (std::size_t k = 0; k < i; ++k) laplacian_add(next.fields[k], dt / (dx * dx), rhs);
    solver.solve(rhs);
    check_finite(rhs, cfg.blowup, static_cast<int>(i + 1), next.step);
    next.fields[i] = std::move(rhs);
  }
  return next;
}

Trajectory simulate_from(const SimConfig& cfg, SimState state, const std::vector<double>& constants) {
  cfg.validate();
  NoiseSource noise(cfg);
  const long total = cfg.steps();
  Trajectory traj;
  traj.constants = constants;
  traj.snapshots.push_back({state.time, state.fields});
  for (long n = 0; n < total; ++n) {
    state = step(state, cfg, noise.next(), constants);
    if (wants_snapshot(cfg, n + 1, total)) traj.snapshots.push_back({state.time, state.fields});
  }
  return traj;
}

Trajectory simulate(const SimConfig& cfg) { return simulate_from(cfg, initial_state(cfg), applied_constants(cfg)); }

Trajectory hopf_cole_reference(const SimConfig& cfg) {
  cfg.validate();
  const double c = applied_constants(cfg)[0];
  const std::size_t m = static_cast<std::size_t>(cfg.grid);
  const double dt = cfg.dt();
  const CyclicSolver solver(cfg.grid, dt / (cfg.dx() * cfg.dx()));
  NoiseSource noise(cfg);
  std::vector<double> z(m);
  const std::vector<double> h0 = initial_state(cfg).fields[0];
  for (std::size_t j = 0; j < m; ++j) z[j] = std::exp(h0[j]);

  Trajectory traj;
  traj.constants = {c};
  const auto record = [&](double t) {
    std::vector<double> logz(m);
    for (std::size_t j = 0; j < m; ++j) logz[j] = std::log(z[j]);
    traj.snapshots.push_back({t, {std::move(logz)}});
  };
  record(0.0);
  const long total = cfg.steps();
  for (long n = 0; n < total; ++n) {
    const std::vector<double>& xi = noise.next();
    for (std::size_t j = 0; j < m; ++j) z[j] *= std::exp(dt * (xi[j] - c));
    solver.solve(z);
    for (std::size_t j = 0; j < m; ++j) {
      if (!(z[j] > 0.0) || !std::isfinite(z[j])) {
        std::ostringstream os;
        os << "Hopf-Cole reference lost positivity at step " << n + 1 << ", grid index " << j << " (Z = " << z[j] << ")";
        throw BlowUp(os.str());
      }
    }
    if (wants_snapshot(cfg, n + 1, total)) record(static_cast<double>(n + 1) * dt);
  }
  return traj;
}

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sup_distance: size mismatch");
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[j] - b[j]));
  return d;
}

HopfColeReport compare_with_hopf_cole(const SimConfig& cfg) {
  SimConfig one = cfg;
  one.layers = 1;
  const Trajectory kpz = simulate(one);
  const Trajectory ref = hopf_cole_reference(one);
  HopfColeReport report;
  for (std::size_t s = 0; s < kpz.snapshots.size(); ++s) {
    report.sup_distance = std::max(report.sup_distance, sup_distance(kpz.snapshots[s].fields[0], ref.snapshots[s].fields[0]));
  }
  report.final_distance = sup_distance(kpz.snapshots.back().fields[0], ref.snapshots.back().fields[0]);
  return report;
}

bool StudyReport::grows(RenormMode mode, int layer) const {
  for (const auto& r : modes) {
    if (r.mode == mode) return r.growth.at(static_cast<std::size_t>(layer - 1)).lower() > 0.0;
  }
  throw std::invalid_argument("study has no results for mode " + to_string(mode));
}

StudyReport eps_stability_study(const SimConfig& cfg) {
  cfg.validate();
  if (cfg.study_ladder.size() < 3) throw std::invalid_argument("eps_stability_study: need a ladder of >= 3 rungs");
  const std::size_t rungs = cfg.study_ladder.size();
  const std::size_t pairs = rungs - 1;
  const auto layers = static_cast<std::size_t>(cfg.layers);
  const auto samples = static_cast<std::size_t>(cfg.study_samples);

  // per (mode, rung) configuration and constants, shared by all samples
  std::vector<std::vector<SimConfig>> rung_cfg(cfg.study_modes.size());
  std::vector<std::vector<std::vector<double>>> rung_constants(cfg.study_modes.size());
  for (std::size_t md = 0; md < cfg.study_modes.size(); ++md) {
    for (double eps : cfg.study_ladder) {
      SimConfig c = cfg;
      c.epsilon = eps;
      c.mode = cfg.study_modes[md];
      c.output_every = 0;
      c.hopf_cole = false;
      rung_constants[md].push_back(applied_constants(c));
      rung_cfg[md].push_back(c);
    }
  }

  // diffs[md][p][i][sample]
  std::vector<std::vector<std::vector<std::vector<double>>>> diffs(
      cfg.study_modes.size(),
      std::vector<std::vector<std::vector<double>>>(pairs, std::vector<std::vector<double>>(layers, std::vector<double>(samples))));
  parallel_for(samples, worker_count(), [&](std::size_t s, std::size_t) {
    const std::uint64_t seed = mix_seed(cfg.seed, s);
    for (std::size_t md = 0; md < cfg.study_modes.size(); ++md) {
      std::vector<std::vector<std::vector<double>>> finals;
      for (std::size_t r = 0; r < rungs; ++r) {
        SimConfig c = rung_cfg[md][r];
        c.seed = seed;
        finals.push_back(simulate_from(c, initial_state(c), rung_constants[md][r]).snapshots.back().fields);
      }
      for (std::size_t p = 0; p < pairs; ++p) {
        for (std::size_t i = 0; i < layers; ++i) diffs[md][p][i][s] = sup_distance(finals[p][i], finals[p + 1][i]);
      }
    }
  });

  StudyReport report;
  report.config = cfg;
  report.ladder = cfg.study_ladder;
  report.samples = cfg.study_samples;
  for (std::size_t md = 0; md < cfg.study_modes.size(); ++md) {
    StudyModeResult res;
    res.mode = cfg.study_modes[md];
    for (std::size_t p = 0; p < pairs; ++p) {
      std::vector<MeanInterval> row;
      for (std::size_t i = 0; i < layers; ++i) row.push_back(interval(diffs[md][p][i]));
      res.pair_differences.push_back(row);
    }
    for (std::size_t i = 0; i < layers; ++i) {
      std::vector<double> g(samples);
      for (std::size_t s = 0; s < samples; ++s) g[s] = diffs[md][pairs - 1][i][s] - diffs[md][0][i][s];
      res.growth.push_back(interval(g));
    }
    report.modes.push_back(std::move(res));
  }
  return report;
}

std::string study_json(const StudyReport& report) {
  using nlohmann::ordered_json;
  const auto mi = [](const MeanInterval& m) {
    return ordered_json{{"mean", m.mean}, {"ci95_half_width", m.half_width}, {"lower", m.lower()}, {"upper", m.upper()}};
  };
  ordered_json doc;
  doc["version"] = 1;
  doc["grid"] = report.config.grid;
  doc["layers"] = report.config.layers;
  doc["horizon"] = report.config.horizon;
  doc["dt_factor"] = report.config.dt_factor;
  doc["seed"] = report.config.seed;
  doc["ladder_grid_units"] = report.ladder;
  doc["samples"] = report.samples;
  ordered_json modes = ordered_json::array();
  for (const auto& r : report.modes) {
    ordered_json entry;
    entry["mode"] = to_string(r.mode);
    ordered_json pairs = ordered_json::array();
    for (std::size_t p = 0; p < r.pair_differences.size(); ++p) {
      ordered_json layers = ordered_json::array();
      for (std::size_t i = 0; i < r.pair_differences[p].size(); ++i) {
        ordered_json l = mi(r.pair_differences[p][i]);
        l["layer"] = i + 1;
        layers.push_back(l);
      }
      pairs.push_back({{"eps_coarse", report.ladder[p]}, {"eps_fine", report.ladder[p + 1]}, {"sup_difference", layers}});
    }
    entry["pairs"] = pairs;
    ordered_json growth = ordered_json::array();
    for (std::size_t i = 0; i < r.growth.size(); ++i) {
      ordered_json g = mi(r.growth[i]);
      g["layer"] = i + 1;
      g["grows"] = r.growth[i].lower() > 0.0;
      growth.push_back(g);
    }
    entry["growth_last_minus_first"] = growth;
    modes.push_back(entry);
  }
  doc["modes"] = modes;
  return doc.dump(2) + "\n";
}

void write_trajectory_csv(const std::string& path, const Trajectory& trajectory) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out.precision(12);
  out << "time,layer,index,value\n";
  for (const auto& snap : trajectory.snapshots) {
    for (std::size_t i = 0; i < snap.fields.size(); ++i) {
      for (std::size_t j = 0; j < snap.fields[i].size(); ++j) {
        out << snap.time << ',' << i + 1 << ',' << j << ',' << snap.fields[i][j] << '\n';
      }
    }
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace mlkpz
