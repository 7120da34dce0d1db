#pragma once

#include <Eigen/Dense>

namespace bqec {

// Moment-map characterization of a Gaussian channel:
//   xbar -> T xbar + d,   V -> T V T^T + N.
// Quadrature ordering is per-mode blocks (q1, p1, q2, p2, ...).
struct GaussianChannelSpec {
  Eigen::MatrixXd T;
  Eigen::MatrixXd N;
  Eigen::VectorXd d;

  int mode_count() const { return static_cast<int>(T.rows()) / 2; }

  // N symmetric within 1e-12 and eigenvalues >= -1e-12.
  void validate() const;

  static GaussianChannelSpec identity(int modes);
};

// b after a (i.e. the map rho -> b(a(rho))).
GaussianChannelSpec compose(const GaussianChannelSpec& a, const GaussianChannelSpec& b);

GaussianChannelSpec thermal_loss_channel(double eta, double n_th, int modes = 1);
GaussianChannelSpec pure_loss_channel(double eta, int modes = 1);
GaussianChannelSpec noisy_amp_channel(double gain, double n_th, int modes = 1);
GaussianChannelSpec quantum_limited_amp_channel(double gain, int modes = 1);
GaussianChannelSpec additive_noise_channel(double sigma, int modes = 1);

}  // namespace bqec
