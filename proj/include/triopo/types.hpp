#pragma once

#include <complex>

#include <Eigen/Dense>

namespace triopo {

using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using CMat6 = Eigen::Matrix<std::complex<double>, 6, 6>;
using Mat4 = Eigen::Matrix<double, 4, 4>;

/// Mode labels: 0 = pump, 1 = signal, 2 = idler.
enum class Mode : int { pump = 0, signal = 1, idler = 2 };

/// Quadrature indices in the physical ordering (p0, q0, p1, q1, p2, q2).
namespace quad {
inline constexpr int p0 = 0;
inline constexpr int q0 = 1;
inline constexpr int p1 = 2;
inline constexpr int q1 = 3;
inline constexpr int p2 = 4;
inline constexpr int q2 = 5;
}  // namespace quad

/// Unit vector along one quadrature.
inline Vec6 unit(int index) {
  Vec6 v = Vec6::Zero();
  v(index) = 1.0;
  return v;
}

}  // namespace triopo
