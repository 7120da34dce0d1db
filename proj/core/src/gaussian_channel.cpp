#include "bqec/gaussian_channel.hpp"

#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace bqec {

void GaussianChannelSpec::validate() const {
  const auto n = T.rows();
  if (T.cols() != n || N.rows() != n || N.cols() != n || d.size() != n || n % 2 != 0) {
    throw std::invalid_argument("GaussianChannelSpec: inconsistent dimensions");
  }
  if ((N - N.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("GaussianChannelSpec: N not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(N);
  if (es.eigenvalues().minCoeff() < -1e-12) {
    throw std::invalid_argument("GaussianChannelSpec: N not PSD");
  }
}

GaussianChannelSpec GaussianChannelSpec::identity(int modes) {
  GaussianChannelSpec s;
  s.T = Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
  s.N = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  s.d = Eigen::VectorXd::Zero(2 * modes);
  return s;
}

GaussianChannelSpec compose(const GaussianChannelSpec& a, const GaussianChannelSpec& b) {
  if (a.T.rows() != b.T.rows()) {
    throw std::invalid_argument("compose: mode count mismatch");
  }
  GaussianChannelSpec out;
  out.T = b.T * a.T;
  out.N = b.T * a.N * b.T.transpose() + b.N;
  out.d = b.T * a.d + b.d;
  return out;
}

namespace {

GaussianChannelSpec scalar_channel(double t, double n_var, int modes) {
  GaussianChannelSpec s;
  const int dim = 2 * modes;
  s.T = t * Eigen::MatrixXd::Identity(dim, dim);
  s.N = n_var * Eigen::MatrixXd::Identity(dim, dim);
  s.d = Eigen::VectorXd::Zero(dim);
  return s;
}

}  // namespace

GaussianChannelSpec thermal_loss_channel(double eta, double n_th, int modes) {
  if (eta < 0.0 || eta > 1.0 || n_th < 0.0) {
    throw std::domain_error("thermal_loss_channel: parameter out of range");
  }
  return scalar_channel(std::sqrt(eta), (1.0 - eta) * (n_th + 0.5), modes);
}

GaussianChannelSpec pure_loss_channel(double eta, int modes) {
  return thermal_loss_channel(eta, 0.0, modes);
}

GaussianChannelSpec noisy_amp_channel(double gain, double n_th, int modes) {
  if (gain < 1.0 || n_th < 0.0) {
    throw std::domain_error("noisy_amp_channel: parameter out of range");
  }
  return scalar_channel(std::sqrt(gain), (gain - 1.0) * (n_th + 0.5), modes);
}

GaussianChannelSpec quantum_limited_amp_channel(double gain, int modes) {
  return noisy_amp_channel(gain, 0.0, modes);
}

GaussianChannelSpec additive_noise_channel(double sigma, int modes) {
  if (sigma < 0.0) throw std::domain_error("additive_noise_channel: sigma must be nonnegative");
  return scalar_channel(1.0, sigma * sigma, modes);
}

}  // namespace bqec
