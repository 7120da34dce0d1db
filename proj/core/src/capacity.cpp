#include "bqec/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace bqec {

void ChannelParams::validate() const {
  if (eta < 0.0 || eta > 1.0) throw std::domain_error("ChannelParams: eta must be in [0,1]");
  if (n_th < 0.0) throw std::domain_error("ChannelParams: n_th must be nonnegative");
  if (!(n_bar > 0.0)) throw std::domain_error("ChannelParams: n_bar must be positive");
}

double g_entropy(double x) {
  if (x < 0.0) throw std::domain_error("g_entropy: x must be nonnegative");
  if (x == 0.0) return 0.0;
  return (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
}

namespace {

// Pure-loss capacity at transmissivity eta with mean input photons n_bar.
double pure_loss_value(double eta, double n_bar) {
  if (eta <= 0.5) return 0.0;
  if (!std::isfinite(n_bar)) {
    return std::max(std::log2(eta / (1.0 - eta)), 0.0);
  }
  return std::max(g_entropy(eta * n_bar) - g_entropy((1.0 - eta) * n_bar), 0.0);
}

}  // namespace

double pure_loss_capacity(const ChannelParams& params) {
  params.validate();
  if (params.n_th != 0.0) throw std::domain_error("pure_loss_capacity: requires n_th = 0");
  return pure_loss_value(params.eta, params.n_bar);
}

double q_dp(const ChannelParams& params) {
  params.validate();
  const double gp = (1.0 - params.eta) * params.n_th + 1.0;
  const double eta_p = params.eta / gp;
  if (!std::isfinite(params.n_bar)) {
    return std::max(std::log2(params.eta / ((1.0 - params.eta) * (params.n_th + 1.0))), 0.0);
  }
  return pure_loss_value(eta_p, params.n_bar);
}

double q_idp(const ChannelParams& params) {
  params.validate();
  const double eta_t = params.eta - (1.0 - params.eta) * params.n_th;
  if (eta_t <= 0.0) return 0.0;  // entanglement-breaking regime
  if (!std::isfinite(params.n_bar)) {
    return std::max(std::log2(eta_t / ((1.0 - params.eta) * (params.n_th + 1.0))), 0.0);
  }
  const double gain = params.eta / eta_t;
  return pure_loss_value(eta_t, gain * params.n_bar + (gain - 1.0));
}

double q_odp(const ChannelParams& params) {
  return std::max(q_dp(params), q_idp(params));
}

double lower_bound_thermal_input(const ChannelParams& params) {
  params.validate();
  if (!std::isfinite(params.n_bar)) {
    throw std::domain_error("lower_bound_thermal_input: requires a finite n_bar");
  }
  const double eta = params.eta, nth = params.n_th, nb = params.n_bar;
  const double s = (1.0 + eta) * nb + (1.0 - eta) * nth + 1.0;
  const double dd = std::sqrt(s * s - 4.0 * eta * nb * (nb + 1.0));
  const double shift = (1.0 - eta) * (nb - nth);
  return g_entropy(eta * nb + (1.0 - eta) * nth) -
         g_entropy(std::max(0.0, (dd + shift - 1.0) / 2.0)) -
         g_entropy(std::max(0.0, (dd - shift - 1.0) / 2.0));
}

CorrelatedBound lower_bound_correlated(const ChannelParams& params) {
  params.validate();
  if (!std::isfinite(params.n_bar)) {
    throw std::domain_error("lower_bound_correlated: requires a finite n_bar");
  }
  auto objective = [&](double x) {
    ChannelParams p = params;
    p.n_bar = params.n_bar / x;
    return x * lower_bound_thermal_input(p);
  };

  // Grid scan, then golden-section refinement around the best grid points.
  constexpr int kGrid = 1000;
  std::vector<double> xs(kGrid), fs(kGrid);
  for (int i = 0; i < kGrid; ++i) {
    xs[i] = (i + 1) / static_cast<double>(kGrid);
    fs[i] = objective(xs[i]);
  }
  std::vector<int> order(kGrid);
  for (int i = 0; i < kGrid; ++i) order[i] = i;
  std::partial_sort(order.begin(), order.begin() + 3, order.end(),
                    [&](int a, int b) { return fs[a] > fs[b]; });

  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  CorrelatedBound best{fs[order[0]], xs[order[0]]};
  for (int rank = 0; rank < 3; ++rank) {
    int i = order[rank];
    double lo = xs[std::max(0, i - 1)];
    double hi = xs[std::min(kGrid - 1, i + 1)];
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = objective(x1), f2 = objective(x2);
    while (b - a > 1e-6) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + phi * (b - a);
        f2 = objective(x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - phi * (b - a);
        f1 = objective(x1);
      }
    }
    double xm = 0.5 * (a + b);
    double fm = objective(xm);
    if (fm > best.rate) best = {fm, xm};
  }
  return best;
}

double gkp_achievable_rate(const ChannelParams& params) {
  params.validate();
  double arg = 1.0 / (M_E * (1.0 - params.eta) * (params.n_th + 1.0));
  double f = std::floor(arg);
  if (f < 2.0) return 0.0;
  return std::log2(f);
}

int CorrelatedThermalSpec::total_modes() const {
  int n = 0;
  for (int b : block_sizes) n += b;
  return n;
}

double CorrelatedThermalSpec::mean_photon_number() const {
  double sum = 0.0;
  for (size_t i = 0; i < block_sizes.size(); ++i) sum += block_sizes[i] * block_photon_numbers[i];
  return sum / total_modes();
}

void CorrelatedThermalSpec::validate() const {
  if (block_sizes.empty() || block_sizes.size() != block_photon_numbers.size()) {
    throw std::invalid_argument("CorrelatedThermalSpec: inconsistent blocks");
  }
  for (int b : block_sizes) {
    if (b < 1) throw std::invalid_argument("CorrelatedThermalSpec: block sizes must be >= 1");
  }
  for (double n : block_photon_numbers) {
    if (n < 0.0) throw std::invalid_argument("CorrelatedThermalSpec: photon numbers must be >= 0");
  }
}

Eigen::MatrixXd correlated_thermal_covariance(const CorrelatedThermalSpec& spec) {
  spec.validate();
  const int n = spec.total_modes();

  // Per-mode thermal variances before mixing.
  Eigen::VectorXd var(n);
  int mode = 0;
  for (size_t b = 0; b < spec.block_sizes.size(); ++b) {
    for (int i = 0; i < spec.block_sizes[b]; ++i) var[mode++] = spec.block_photon_numbers[b] + 0.5;
  }

  // Mode-space Fourier transform F_jk = exp(i 2 pi (j-1)(k-1) / N)/sqrt(N)
  // acts on quadratures as [[Re F, -Im F], [Im F, Re F]].
  Eigen::MatrixXd re(n, n), im(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      double phase = 2.0 * M_PI * j * k / n;
      re(j, k) = std::cos(phase) / std::sqrt(static_cast<double>(n));
      im(j, k) = std::sin(phase) / std::sqrt(static_cast<double>(n));
    }
  }
  Eigen::MatrixXd vqq = re * var.asDiagonal() * re.transpose() + im * var.asDiagonal() * im.transpose();
  Eigen::MatrixXd vqp = re * var.asDiagonal() * im.transpose() - im * var.asDiagonal() * re.transpose();

  Eigen::MatrixXd out(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      out(2 * j, 2 * k) = vqq(j, k);
      out(2 * j + 1, 2 * k + 1) = vqq(j, k);
      out(2 * j, 2 * k + 1) = vqp(j, k);
      out(2 * j + 1, 2 * k) = -vqp(j, k);
    }
  }
  return out;
}

double uncertainty_min_eigenvalue(const Eigen::MatrixXd& cov) {
  const int dim = static_cast<int>(cov.rows());
  if (cov.cols() != dim || dim % 2 != 0) {
    throw std::invalid_argument("uncertainty_min_eigenvalue: covariance must be 2N x 2N");
  }
  Eigen::MatrixXcd m = cov.cast<std::complex<double>>();
  const std::complex<double> ihalf(0.0, 0.5);
  for (int j = 0; j < dim / 2; ++j) {
    m(2 * j, 2 * j + 1) += ihalf;
    m(2 * j + 1, 2 * j) -= ihalf;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  return es.eigenvalues().minCoeff();
}

}  // namespace bqec
