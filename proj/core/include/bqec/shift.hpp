#pragma once

#include <cmath>
#include <vector>

namespace bqec {

inline constexpr double kSqrtPi = 1.7724538509055160273;
inline constexpr double kSqrt2Pi = 2.5066282746310005024;

// Per-mode position/momentum quadrature shift realizations, in the
// dimensionless convention [q, p] = i (vacuum variance 1/2).
struct ShiftVector {
  std::vector<double> q;
  std::vector<double> p;

  ShiftVector() = default;
  explicit ShiftVector(int mode_count) : q(mode_count, 0.0), p(mode_count, 0.0) {}

  int mode_count() const { return static_cast<int>(q.size()); }
  bool finite() const;
};

// Circuit shift noise (sigma) and GKP peak noise (sigma_gkp).
struct NoiseParams {
  double sigma = 0.0;
  double sigma_gkp = 0.0;

  // s_gkp = -10 log10(2 sigma_gkp^2), in dB.
  double gkp_squeezing_db() const;
  static NoiseParams from_gkp_squeezing_db(double s_db, double sigma = 0.0);
};

// Centered remainder: R_s(z) = z - s*floor(z/s + 1/2), so |R_s(z)| <= s/2
// with the tie at z = s/2 mapped to -s/2.
double remainder_mod(double z, double s);

// Probability that a N(0, sigma^2) shift lands in an odd cell
// [(2n+1/2)sqrt(pi), (2n+3/2)sqrt(pi)); the wrap-around Pauli rate of one
// GKP quadrature. Exact in [0, 1/2], evaluated with erf over a window wide
// enough that the truncated tail is below 1e-15.
double p_err(double sigma_eff);

// Small-sigma asymptote (sqrt(8) sigma / pi) exp(-pi / (8 sigma^2)).
double p_err_asymptotic(double sigma);

// Conditional Pauli probability p[sigma](z) given an analog readout
// z = R_sqrt(pi)(measured value): ratio of the odd-peak Gaussian comb to the
// full comb. Requires sigma_eff > 0 and |z| <= sqrt(pi)/2 + tiny slack.
double conditional_pauli_prob(double sigma_eff, double z);

// Pure-loss + quantum-limited amplification (gain 1/eta) acts as an additive
// Gaussian shift of variance (1-eta)/eta.
double loss_to_shift_post_amp(double eta);

// Pre-amplified thermal loss acts as an additive Gaussian shift of variance
// (1-eta)(n_th+1).
double thermal_loss_to_shift_pre_amp(double eta, double n_th);

}  // namespace bqec
