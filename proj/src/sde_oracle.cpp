#include "triopo/sde_oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "triopo/errors.hpp"

namespace triopo {

namespace {

constexpr int kMinSegmentLength = 16;

// One trajectory of the linear Langevin model, trapezoidal rule.
class Stepper {
public:
  Stepper(const DriftModel& model, double dt, std::uint64_t seed, std::uint64_t chain)
      : dt_(dt), c_out_(model.c_out), lossy_(!model.b_v.isZero(0.0)) {
    const Mat6 half = 0.5 * dt * model.a;
    const Eigen::PartialPivLU<Mat6> lhs(Mat6::Identity() - half);
    propagator_ = lhs.solve(Mat6::Identity() + half);
    kick_c_ = lhs.solve(model.b_c);
    kick_v_ = lhs.solve(model.b_v);
    x_.setZero();

    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chain), static_cast<std::uint32_t>(chain >> 32)};
    rng_.seed(seq);
    noise_ = std::normal_distribution<double>(0.0, std::sqrt(dt));
  }

  // Advances one step and returns the output sample in the physical basis.
  Vec6 step() {
    Vec6 dw_c, dw_v;
    for (int i = 0; i < 6; ++i) dw_c(i) = noise_(rng_);
    Vec6 next = propagator_ * x_ + kick_c_ * dw_c;
    if (lossy_) {
      for (int i = 0; i < 6; ++i) dw_v(i) = noise_(rng_);
      next.noalias() += kick_v_ * dw_v;
    }
    const Vec6 out = 0.5 * (c_out_ * (x_ + next)) - dw_c / dt_;
    x_ = next;
    return sum_difference_basis() * out;
  }

private:
  double dt_;
  Mat6 propagator_;
  Mat6 kick_c_;
  Mat6 kick_v_;
  Mat6 c_out_;
  bool lossy_;
  Vec6 x_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> noise_;
};

DriftModel simulation_model(const OpoParams& params, const SimConfig& cfg) {
  DriftModel m = drift_model(params);
  if (cfg.coupling_scale != 1.0) m = scale_coupling(std::move(m), cfg.coupling_scale);
  return m;
}

// Hann-windowed Fourier sums at fixed frequencies for segments of fixed length.
class PeriodogramBank {
public:
  PeriodogramBank(std::int64_t length, double dt, std::span<const double> omegas)
      : length_(length), dt_(dt) {
    if (length < kMinSegmentLength)
      throw InsufficientDataError("segment length " + std::to_string(length) + " < " +
                                  std::to_string(kMinSegmentLength));
    const double span_t = static_cast<double>(length) * dt;
    const double resolution = 4.0 * std::numbers::pi / span_t;
    const double nyquist = std::numbers::pi / dt;

    Eigen::VectorXd window(length);
    for (std::int64_t n = 0; n < length; ++n)
      window(n) = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * (n + 0.5) / length));
    scale_ = dt / window.squaredNorm();

    for (double w : omegas) {
      if (!(w >= resolution))
        throw InsufficientDataError("omega = " + std::to_string(w) +
                                    " is below the segment resolution " + std::to_string(resolution));
      if (!(w < nyquist))
        throw InsufficientDataError("omega = " + std::to_string(w) + " is above Nyquist");
      Eigen::VectorXcd table(length);
      for (std::int64_t n = 0; n < length; ++n)
        table(n) = window(n) * std::polar(1.0, -w * dt * static_cast<double>(n));
      window_sums_.push_back(table.sum());
      tables_.push_back(std::move(table));
    }
  }

  std::size_t size() const { return tables_.size(); }

  // Periodogram of y (mean removed) at frequency k.
  double power(const Eigen::Ref<const Eigen::VectorXd>& y, std::size_t k) const {
    const double mean = y.mean();
    const std::complex<double> sum = tables_[k].transpose() * y.cast<std::complex<double>>();
    return scale_ * std::norm(sum - mean * window_sums_[k]);
  }

private:
  std::int64_t length_;
  double dt_;
  double scale_ = 0;
  std::vector<Eigen::VectorXcd> tables_;
  std::vector<std::complex<double>> window_sums_;
};

// Mean and standard error over segments; values laid out [segment][column].
std::vector<SpectrumEstimate> reduce_segments(const std::vector<double>& values, int n_segments,
                                              std::size_t columns) {
  std::vector<SpectrumEstimate> out(columns);
  for (std::size_t k = 0; k < columns; ++k) {
    double sum = 0;
    for (int s = 0; s < n_segments; ++s) sum += values[s * columns + k];
    const double mean = sum / n_segments;
    double ss = 0;
    for (int s = 0; s < n_segments; ++s) {
      const double dv = values[s * columns + k] - mean;
      ss += dv * dv;
    }
    out[k].estimate = mean;
    out[k].std_error = std::sqrt(ss / (n_segments - 1) / n_segments);
  }
  return out;
}

}  // namespace

void validate(const SimConfig& cfg, const OpoParams& params) {
  validate(params);
  const double limit =
      0.1 * std::min(1.0 / params.gamma0(), 1.0 / (2.0 * std::max(params.gamma(), params.gamma_idler())));
  if (!(cfg.dt > 0.0) || cfg.dt > limit)
    throw ConfigError("dt = " + std::to_string(cfg.dt) + " must lie in (0, " + std::to_string(limit) +
                      "] to resolve the cavity decay rates");
  if (cfg.n_segments < 2) throw ConfigError("n_segments must be >= 2");
  if (cfg.n_chains < 1) throw ConfigError("n_chains must be >= 1");
  if (cfg.n_segments % cfg.n_chains != 0)
    throw ConfigError("n_segments must be a multiple of n_chains");
  if (cfg.n_steps < static_cast<std::int64_t>(cfg.n_segments) * kMinSegmentLength)
    throw ConfigError("n_steps too small for the requested number of segments");
  if (cfg.burn_in < 0) throw ConfigError("burn_in must be >= 0");
}

std::vector<double> QuadratureSeries::project(const Vec6& c) const {
  std::vector<double> y(static_cast<std::size_t>(size()));
  Eigen::Map<Eigen::RowVectorXd>(y.data(), size()) = c.transpose() * samples;
  return y;
}

double warped_frequency(double omega, double dt) { return 2.0 / dt * std::tan(0.5 * omega * dt); }

bool is_diffusive(const Vec6& c) {
  return std::abs(c(quad::q1) - c(quad::q2)) > 1e-12;
}

QuadratureSeries simulate(const OpoParams& params, const SimConfig& cfg) {
  validate(cfg, params);
  Stepper stepper(simulation_model(params, cfg), cfg.dt, cfg.seed, 0);
  for (std::int64_t i = 0; i < cfg.burn_in; ++i) stepper.step();

  QuadratureSeries series;
  series.dt = cfg.dt;
  series.samples.resize(6, cfg.n_steps);
  for (std::int64_t i = 0; i < cfg.n_steps; ++i) series.samples.col(i) = stepper.step();
  return series;
}

std::vector<SpectrumEstimate> estimate_spectrum(std::span<const double> y, double dt,
                                                std::span<const double> omegas, int n_segments) {
  if (n_segments < 2) throw InsufficientDataError("need at least two segments");
  const std::int64_t length = static_cast<std::int64_t>(y.size()) / n_segments;
  const PeriodogramBank bank(length, dt, omegas);

  std::vector<double> values(static_cast<std::size_t>(n_segments) * bank.size());
  for (int s = 0; s < n_segments; ++s) {
    const Eigen::Map<const Eigen::VectorXd> seg(y.data() + s * length, length);
    for (std::size_t k = 0; k < bank.size(); ++k) values[s * bank.size() + k] = bank.power(seg, k);
  }
  auto out = reduce_segments(values, n_segments, bank.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k].omega = omegas[k];
  return out;
}

std::vector<SpectrumEstimate> estimate_spectrum(const QuadratureSeries& series, const Vec6& c,
                                                std::span<const double> omegas, int n_segments) {
  const std::vector<double> y = series.project(c);
  auto out = estimate_spectrum(y, series.dt, omegas, n_segments);
  for (auto& e : out) e.diffusive = is_diffusive(c);
  return out;
}

std::vector<SpectrumEstimate> estimate_probes(const OpoParams& params, const SimConfig& cfg,
                                              std::span<const SpectrumProbe> probes,
                                              Execution exec) {
  validate(cfg, params);
  if (probes.empty()) return {};

  double omega_min = probes.front().omega;
  std::vector<double> omegas;
  for (const auto& p : probes) {
    omegas.push_back(p.omega);
    omega_min = std::min(omega_min, p.omega);
  }
  if (!(omega_min > 0.0)) throw ConfigError("probe frequencies must be > 0");
  if (static_cast<double>(cfg.n_steps) * cfg.dt < 100.0 / omega_min)
    throw ConfigError("n_steps * dt must be >= 100 / omega_min = " + std::to_string(100.0 / omega_min));

  const std::int64_t length = cfg.segment_length();
  const PeriodogramBank bank(length, cfg.dt, omegas);
  const DriftModel model = simulation_model(params, cfg);
  const int per_chain = cfg.n_segments / cfg.n_chains;
  const std::size_t columns = probes.size();

  std::vector<double> values(static_cast<std::size_t>(cfg.n_segments) * columns);

  auto run_chain = [&](int chain) {
    Stepper stepper(model, cfg.dt, cfg.seed, static_cast<std::uint64_t>(chain));
    for (std::int64_t i = 0; i < cfg.burn_in; ++i) stepper.step();
    Eigen::Matrix<double, 6, Eigen::Dynamic> buffer(6, length);
    Eigen::VectorXd y(length);
    for (int s = 0; s < per_chain; ++s) {
      for (std::int64_t i = 0; i < length; ++i) buffer.col(i) = stepper.step();
      const std::size_t row = static_cast<std::size_t>(chain * per_chain + s) * columns;
      for (std::size_t k = 0; k < columns; ++k) {
        y.noalias() = buffer.transpose() * probes[k].c;
        values[row + k] = bank.power(y, k);
      }
    }
  };

  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count())
    for (int chain = 0; chain < cfg.n_chains; ++chain) run_chain(chain);
  } else {
    for (int chain = 0; chain < cfg.n_chains; ++chain) run_chain(chain);
  }

  auto out = reduce_segments(values, cfg.n_segments, columns);
  for (std::size_t k = 0; k < columns; ++k) {
    out[k].omega = probes[k].omega;
    out[k].diffusive = is_diffusive(probes[k].c);
  }
  return out;
}

}  // namespace triopo
