#pragma once

#include <array>
#include <string>

#include <Eigen/Dense>

#include "bqec/rng.hpp"

namespace bqec {

// ---- GKP-two-mode-squeezing oscillator code -------------------------------

// Reshaped quadrature noise z = S_TS(G)^{-1} xi for xi = (q1, p1, q2, p2).
std::array<double, 4> reshape_noise(double gain, const std::array<double, 4>& xi);

// Single-mode squeezing (dB) needed to realize gain G: 20 log10(sqrt(G) + sqrt(G-1)).
double tms_squeezing_db(double gain);

// Output logical quadrature variance with ideal GKP resources:
// sigma^2/(2G-1) + sum_n 4G(G-1)/(2G-1)^2 * 2 pi n^2 * q_n(sigma).
double tms_logical_variance(double sigma, double gain);

struct TmsOptimum {
  double gain = 1.0;
  double sigma_l = 0.0;
};

// Gain minimizing the output standard deviation, searched on [1, 10/sigma^2].
TmsOptimum tms_optimize_gain(double sigma);

// Small-sigma asymptotics of the optimum.
double tms_gain_asymptotic(double sigma);
double tms_sigma_l_asymptotic(double sigma);

// Output logical variance when the two supplied GKP states carry peak noise
// sigma_gkp each (estimate coefficient and modular argument both corrupted).
// Evaluated by per-cell adaptive quadrature to 1e-8 absolute.
double tms_logical_variance_finite_gkp(double sigma, double sigma_gkp, double gain);

TmsOptimum tms_optimize_gain_finite_gkp(double sigma, double sigma_gkp);

struct TmsGainOptimum {
  double sigma = 0.0;       // input noise at which the QEC gain peaks
  double qec_gain = 1.0;    // sigma^2 / sigma_L*^2
  double gain = 1.0;        // two-mode squeezing gain at the peak
};

// Best achievable QEC gain over the input-noise range for a given GKP
// squeezing (in dB).
TmsGainOptimum tms_max_qec_gain(double s_gkp_db);

struct TmsMonteCarlo {
  double var_q = 0.0, var_p = 0.0;
  double se_q = 0.0, se_p = 0.0;  // standard errors of the variance estimates
};

// Direct simulation of the estimate/correct pipeline; sigma_gkp = 0 uses the
// ideal-resource estimator coefficients.
TmsMonteCarlo tms_monte_carlo(double sigma, double sigma_gkp, double gain, long trials, Rng& rng);

// ---- Cubic-phase distillation algebra -------------------------------------

struct TriorthogonalReport {
  bool valid = false;
  int k = 0;  // number of unit diagonal triples when valid
  std::string violation;
};

// Checks full column rank and all m^3 triple sums of an n x m matrix:
// sum_j A_ja A_jb A_jc = 1 exactly on the first k diagonal triples and 0
// elsewhere (tolerance 1e-9).
TriorthogonalReport check_triorthogonal(const Eigen::MatrixXd& a_bar);

// The signed 15 x 5 Reed-Muller-derived (15,5,1)-triorthogonal matrix.
Eigen::MatrixXd rm15_matrix();
// The signed 14 x 5 (14,5,2)-triorthogonal matrix.
Eigen::MatrixXd bh14_matrix();

struct DistillationResult {
  double sigma_sq_out = 0.0;     // optimal output variance Sigma^2
  Eigen::VectorXd coefficients;  // optimal estimator c* (size m-1)
};

// Sigma^2 = V_ul - V_ll^T V_lr^{-1} V_ll for V = sigma^2 A^T A, with the
// optimal linear estimate of the first-mode momentum shift from the others.
DistillationResult distillation_output_variance(const Eigen::MatrixXd& a_bar, double sigma);

// The (n, m, 1) no-go witness: for v with sum v^3 = 1 returns sum v^2,
// which is always >= 1.
double nogo_witness(const Eigen::VectorXd& v);

// ---- Magic variance of Gaussian states -------------------------------------

struct GaussianStateMoments {
  double q_bar = 0.0, p_bar = 0.0;
  double v_qq = 0.5, v_pp = 0.5, v_qp = 0.0;

  void validate() const;  // uncertainty V_qq V_pp - V_qp^2 >= 1/4
};

// Variance of p - 3 gamma q^2 over the state (the spread in the displaced
// cubic-phase-state basis).
double magic_variance(const GaussianStateMoments& state, double gamma);

// Lower bound (3/2)(3 gamma / 2)^{2/3} over all Gaussian states, and the
// moments attaining it.
double magic_variance_bound(double gamma);
GaussianStateMoments magic_variance_saturating_state(double gamma);

}  // namespace bqec
