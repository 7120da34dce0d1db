#include "bqec/shift.hpp"

#include <algorithm>
#include <stdexcept>

namespace bqec {

bool ShiftVector::finite() const {
  for (double v : q)
    if (!std::isfinite(v)) return false;
  for (double v : p)
    if (!std::isfinite(v)) return false;
  return true;
}

double NoiseParams::gkp_squeezing_db() const {
  return -10.0 * std::log10(2.0 * sigma_gkp * sigma_gkp);
}

NoiseParams NoiseParams::from_gkp_squeezing_db(double s_db, double sigma) {
  NoiseParams n;
  n.sigma = sigma;
  n.sigma_gkp = std::sqrt(0.5 * std::pow(10.0, -s_db / 10.0));
  return n;
}

double remainder_mod(double z, double s) {
  if (!(s > 0.0)) throw std::domain_error("remainder_mod: period must be positive");
  if (!std::isfinite(z)) throw std::domain_error("remainder_mod: non-finite input");
  return z - s * std::floor(z / s + 0.5);
}

namespace {

// Gaussian tail mass beyond x > 0 for N(0, sigma^2), via erfc so tiny tails
// survive in double precision.
inline double gauss_tail(double x, double sigma) {
  return 0.5 * std::erfc(x / (sigma * std::sqrt(2.0)));
}

inline int comb_window(double sigma) {
  return static_cast<int>(std::ceil(8.0 * sigma / kSqrtPi)) + 2;
}

}  // namespace

double p_err(double sigma_eff) {
  if (sigma_eff < 0.0) throw std::domain_error("p_err: sigma must be nonnegative");
  if (sigma_eff == 0.0) return 0.0;
  const int w = comb_window(sigma_eff);
  // Odd cells [(2n+1/2) sqrt(pi), (2n+3/2) sqrt(pi)] on both sides, written
  // as tail differences.
  double p = 0.0;
  for (int n = w; n >= 0; --n) {
    p += 2.0 * (gauss_tail((2 * n + 0.5) * kSqrtPi, sigma_eff) -
                gauss_tail((2 * n + 1.5) * kSqrtPi, sigma_eff));
  }
  return std::clamp(p, 0.0, 0.5);
}

double p_err_asymptotic(double sigma) {
  return std::sqrt(8.0) * sigma / M_PI * std::exp(-M_PI / (8.0 * sigma * sigma));
}

double conditional_pauli_prob(double sigma_eff, double z) {
  if (!(sigma_eff > 0.0)) throw std::domain_error("conditional_pauli_prob: sigma must be positive");
  z = std::abs(z);  // even in z, made exact by construction
  if (z > 0.5 * kSqrtPi * (1.0 + 1e-9)) {
    throw std::domain_error("conditional_pauli_prob: |z| must be <= sqrt(pi)/2");
  }
  const int w = comb_window(sigma_eff) + 1;
  const double inv2s2 = 1.0 / (2.0 * sigma_eff * sigma_eff);
  // Peaks are offset so the largest term has weight one; immune to underflow
  // for any sigma of interest.
  const double z2 = z * z;
  double odd = 0.0, all = 0.0;
  for (int n = -w; n <= w; ++n) {
    double d = z - n * kSqrtPi;
    double t = std::exp(-(d * d - z2) * inv2s2);
    all += t;
    if (n & 1) odd += t;
  }
  return odd / all;
}

double loss_to_shift_post_amp(double eta) {
  if (!(eta > 0.0) || eta > 1.0) throw std::domain_error("loss_to_shift_post_amp: eta in (0,1]");
  return (1.0 - eta) / eta;
}

double thermal_loss_to_shift_pre_amp(double eta, double n_th) {
  if (eta < 0.0 || eta > 1.0 || n_th < 0.0) {
    throw std::domain_error("thermal_loss_to_shift_pre_amp: parameter out of range");
  }
  return (1.0 - eta) * (n_th + 1.0);
}

}  // namespace bqec
