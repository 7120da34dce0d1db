#pragma once

#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace bqec {

// Gaussian thermal-loss channel N[eta, n_th] with an optional mean photon
// number constraint n_bar (infinity = unconstrained).
struct ChannelParams {
  double eta = 1.0;
  double n_th = 0.0;
  double n_bar = std::numeric_limits<double>::infinity();

  bool energy_constrained() const { return std::isfinite(n_bar); }
  void validate() const;
};

// Thermal entropy g(x) = (x+1) log2(x+1) - x log2 x, in bits; g(0) = 0.
double g_entropy(double x);

// Energy-constrained pure-loss capacity max[g(eta nbar) - g((1-eta) nbar), 0];
// unconstrained limit max[log2(eta/(1-eta)), 0]. Requires n_th = 0.
double pure_loss_capacity(const ChannelParams& params);

// Data-processing upper bounds and their pointwise maximum.
double q_dp(const ChannelParams& params);
double q_idp(const ChannelParams& params);
double q_odp(const ChannelParams& params);

// Coherent information of the channel with a thermal input of mean photon
// number n_bar; a valid capacity lower bound (may be negative).
double lower_bound_thermal_input(const ChannelParams& params);

struct CorrelatedBound {
  double rate = 0.0;
  double x_star = 1.0;
};

// max over x in (0,1] of x * I_c(N[eta,n_th], thermal(n_bar/x)); x = 1
// recovers the thermal-input bound.
CorrelatedBound lower_bound_correlated(const ChannelParams& params);

// Achievable GKP rate max(log2 floor(1/(e (1-eta)(n_th+1))), 0).
double gkp_achievable_rate(const ChannelParams& params);

// Block description of a correlated multi-mode thermal state: N_k modes at
// mean photon number n_k each, mixed by the N-mode Fourier transform.
struct CorrelatedThermalSpec {
  std::vector<int> block_sizes;
  std::vector<double> block_photon_numbers;

  int total_modes() const;
  double mean_photon_number() const;
  void validate() const;
};

// 2N x 2N covariance of the mixed state, in per-mode block ordering
// (q1, p1, q2, p2, ...). Satisfies the uncertainty test V + (i/2) Omega >= 0.
Eigen::MatrixXd correlated_thermal_covariance(const CorrelatedThermalSpec& spec);

// Minimum eigenvalue of V + (i/2) Omega (Hermitian); >= -tol iff V is a
// valid quantum covariance matrix.
double uncertainty_min_eigenvalue(const Eigen::MatrixXd& cov);

}  // namespace bqec
