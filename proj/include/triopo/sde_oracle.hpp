#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "triopo/execution.hpp"
#include "triopo/opo_model.hpp"

namespace triopo {

/// Time-domain Monte Carlo settings. Times are in round trips.
struct SimConfig {
  double dt = 0.5;
  std::int64_t n_steps = 1600 * 16384;  // recorded samples, all segments together
  std::int64_t burn_in = 40000;        // discarded steps at the start of each chain
  std::uint64_t seed = 42;
  int n_segments = 1600;               // Welch segments (no overlap)
  int n_chains = 16;                   // independent trajectories sharing the segments
  double coupling_scale = 1.0;         // != 1 only for negative controls

  std::int64_t segment_length() const { return n_steps / n_segments; }
};

/// Throws ConfigError unless dt <= 0.1 min(1/gamma0, 1/(2 gamma)) and the
/// step/segment/chain counts are consistent.
void validate(const SimConfig& cfg, const OpoParams& params);

/// Output quadratures (p0, q0, p1, q1, p2, q2), one column per time step.
/// Each sample is the output field averaged over its step, so the vacuum has
/// white spectral density 1.
struct QuadratureSeries {
  double dt = 0;
  Eigen::Matrix<double, 6, Eigen::Dynamic> samples;

  Eigen::Index size() const { return samples.cols(); }
  std::vector<double> project(const Vec6& c) const;
};

/// True when the combination has a component along q1 - q2, the undamped
/// phase-diffusion mode whose variance grows without bound.
bool is_diffusive(const Vec6& c);

/// One trajectory of cfg.n_steps recorded samples after cfg.burn_in steps,
/// seeded from (cfg.seed, chain 0). Deterministic for a fixed seed.
///
/// dx = a x dt + b_c dW_c + b_v dW_v is stepped with the trapezoidal rule and
/// the output c_out x - dW_c/dt is taken at the step midpoint. For this linear
/// system the sampled output spectrum is the continuous one at the warped
/// frequency (2/dt) tan(omega dt / 2).
QuadratureSeries simulate(const OpoParams& params, const SimConfig& cfg);

/// Frequency at which the continuous-time spectrum equals the sampled
/// simulation spectrum at omega: (2/dt) tan(omega dt / 2).
double warped_frequency(double omega, double dt);

struct SpectrumEstimate {
  double omega = 0;
  double estimate = 0;
  double std_error = 0;
  bool diffusive = false;
};

/// Welch estimate (Hann window, mean removed, no overlap) of the spectrum of
/// the real series y sampled every dt, normalized so that white noise of
/// variance 1/dt gives 1. Standard errors come from the scatter across
/// segments. Throws InsufficientDataError when a segment is too short to
/// resolve the lowest requested frequency.
std::vector<SpectrumEstimate> estimate_spectrum(std::span<const double> y, double dt,
                                                std::span<const double> omegas, int n_segments);

std::vector<SpectrumEstimate> estimate_spectrum(const QuadratureSeries& series, const Vec6& c,
                                                std::span<const double> omegas, int n_segments);

/// A combination of output quadratures observed at one analysis frequency.
struct SpectrumProbe {
  Vec6 c;
  double omega = 0;
};

/// Ensemble version used by the oracle check: cfg.n_chains independent
/// trajectories each contribute n_segments / n_chains consecutive segments;
/// segment periodograms are computed on the fly. Chains run concurrently under
/// Execution::parallel and are merged in segment order, so both execution
/// modes return identical numbers. With n_chains == 1 this matches
/// simulate() followed by estimate_spectrum().
std::vector<SpectrumEstimate> estimate_probes(const OpoParams& params, const SimConfig& cfg,
                                              std::span<const SpectrumProbe> probes,
                                              Execution exec = Execution::parallel);

}  // namespace triopo
