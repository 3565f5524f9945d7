#pragma once

#include "triopo/types.hpp"

namespace triopo {

/// Smallest admitted value of sigma - 1. The linearized fluctuation model
/// breaks down as the twin amplitudes vanish at threshold.
inline constexpr double kThresholdFloor = 1e-3;

/// Operating point of the triply resonant OPO. Build with make_params().
///
/// Rates are amplitude decay rates per round trip; the round-trip time is the
/// time unit, so `tau` only labels frequency axes.
struct OpoParams {
  double t0 = 0.10;    // pump coupling-mirror intensity transmittance
  double t = 0.02;     // signal/idler coupling-mirror intensity transmittance
  double mu0 = 0.0;    // pump spurious intensity loss
  double mu = 0.0;     // signal/idler spurious intensity loss
  double sigma = 1.5;  // pump power over threshold
  double chi = 1.0;    // nonlinear coupling; cancels from all fluctuations
  double tau = 1.0;

  // Extra spurious loss on the idler only. Zero everywhere except in tests
  // that deliberately break the signal/idler exchange symmetry.
  double idler_extra_loss = 0.0;

  double gamma_c0() const { return t0 / 2; }
  double gamma_l0() const { return mu0 / 2; }
  double gamma0() const { return gamma_c0() + gamma_l0(); }
  double gamma_c() const { return t / 2; }
  double gamma_l() const { return mu / 2; }
  double gamma() const { return gamma_c() + gamma_l(); }
  double gamma_l_idler() const { return (mu + idler_extra_loss) / 2; }
  double gamma_idler() const { return gamma_c() + gamma_l_idler(); }
};

/// Validates and assembles an OpoParams.
/// Throws RangeError naming the offending field and ThresholdError when
/// sigma < 1 + kThresholdFloor.
OpoParams make_params(double t0, double t, double mu0, double mu, double sigma,
                      double chi = 1.0);

/// Re-runs the make_params checks on an already built value.
void validate(const OpoParams& p);

/// Above-threshold mean field at exact resonance, all amplitudes real.
struct SteadyState {
  double pump_amp = 0;  // clamped at gamma/chi, independent of sigma
  double twin_amp = 0;  // common signal/idler amplitude
  double d = 0;         // effective coupling sqrt(2 gamma0 gamma (sqrt(sigma) - 1))

  // Per-twin amplitudes; equal to twin_amp unless idler_extra_loss != 0.
  double signal_amp = 0;
  double idler_amp = 0;
};

SteadyState steady_state(const OpoParams& p);

/// Linear Langevin model of the intracavity quadrature fluctuations in the
/// sum/difference basis (p0, q0, p+, q+, p-, q-), x+- = (x1 +- x2)/sqrt(2):
///
///   dx/dt = a x + b_c xi_c + b_v xi_v,     x_out = c_out x - xi_c
///
/// xi_c are the vacuum fields entering through the coupling mirrors, xi_v the
/// vacuum fields entering through spurious losses. With equal twin losses `a`
/// splits into a 4x4 block on (p0, q0, p+, q+) and a diagonal 2x2 block on
/// (p-, q-); q- is undamped (phase diffusion).
struct DriftModel {
  Mat6 a;
  Mat6 b_c;
  Mat6 b_v;
  Mat6 c_out;
};

DriftModel drift_model(const OpoParams& p);

/// Same model with every pump <-> twin coupling entry of `a` multiplied by
/// `scale`. Only used to build deliberately wrong models for negative controls.
DriftModel scale_coupling(DriftModel m, double scale);

/// Orthogonal, symmetric map between the physical ordering (p0,q0,p1,q1,p2,q2)
/// and the sum/difference ordering (p0,q0,p+,q+,p-,q-). It is its own inverse.
const Mat6& sum_difference_basis();

}  // namespace triopo
