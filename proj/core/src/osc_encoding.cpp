#include "bqec/osc_encoding.hpp"

#include <cmath>
#include <stdexcept>

#include "bqec/shift.hpp"

namespace bqec {

namespace {

void check_gain(double gain) {
  if (!(gain >= 1.0)) throw std::domain_error("gain must be >= 1");
}

inline double normal_pdf(double x, double sigma) {
  return std::exp(-x * x / (2.0 * sigma * sigma)) / (sigma * kSqrt2Pi);
}

inline double normal_mass(double a, double b, double sigma) {
  const double inv = 1.0 / (sigma * std::sqrt(2.0));
  return 0.5 * (std::erf(b * inv) - std::erf(a * inv));
}

int cell_window(double sigma) {
  return static_cast<int>(std::ceil(8.0 * sigma / kSqrt2Pi)) + 2;
}

}  // namespace

std::array<double, 4> reshape_noise(double gain, const std::array<double, 4>& xi) {
  check_gain(gain);
  const double cg = std::sqrt(gain), sg = std::sqrt(gain - 1.0);
  return {cg * xi[0] - sg * xi[2], cg * xi[1] + sg * xi[3],
          cg * xi[2] - sg * xi[0], cg * xi[3] + sg * xi[1]};
}

double tms_squeezing_db(double gain) {
  check_gain(gain);
  return 20.0 * std::log10(std::sqrt(gain) + std::sqrt(gain - 1.0));
}

double tms_logical_variance(double sigma, double gain) {
  if (!(sigma > 0.0)) throw std::domain_error("tms_logical_variance: sigma must be positive");
  check_gain(gain);
  const double g2 = 2.0 * gain - 1.0;
  double var = sigma * sigma / g2;
  if (gain == 1.0) return var;
  const double coeff = 4.0 * gain * (gain - 1.0) / (g2 * g2);
  const double sz = std::sqrt(g2) * sigma;
  const int w = cell_window(sz);
  for (int n = 1; n <= w; ++n) {
    double qn = normal_mass((n - 0.5) * kSqrt2Pi, (n + 0.5) * kSqrt2Pi, sz);
    var += 2.0 * coeff * 2.0 * M_PI * n * n * qn;  // cells n and -n
  }
  return var;
}

namespace {

// Golden-section minimization of f on [lo, hi].
template <typename F>
double golden_min(F f, double lo, double hi, double tol) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 > f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

template <typename VarFn>
TmsOptimum optimize_gain(double sigma, VarFn variance) {
  const double hi = std::max(2.0, 10.0 / (sigma * sigma));
  // Coarse scan in log(G - 1 + eps), then refine.
  const int kScan = 160;
  double best_g = 1.0, best_v = variance(1.0);
  for (int i = 0; i <= kScan; ++i) {
    double t = static_cast<double>(i) / kScan;
    double g = 1.0 + (hi - 1.0) * (std::expm1(6.0 * t)) / std::expm1(6.0);
    double v = variance(g);
    if (v < best_v) {
      best_v = v;
      best_g = g;
    }
  }
  if (best_g > 1.0) {
    double lo = std::max(1.0, best_g * 0.7), up = std::min(hi, best_g * 1.4);
    double g = golden_min(variance, lo, up, 1e-5 * best_g);
    double v = variance(g);
    if (v < best_v) {
      best_v = v;
      best_g = g;
    }
  }
  TmsOptimum opt;
  opt.gain = best_g;
  opt.sigma_l = std::sqrt(best_v);
  // No interior optimum below the identity channel.
  if (variance(1.0) <= best_v) {
    opt.gain = 1.0;
    opt.sigma_l = std::sqrt(variance(1.0));
  }
  return opt;
}

}  // namespace

TmsOptimum tms_optimize_gain(double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("tms_optimize_gain: sigma must be positive");
  return optimize_gain(sigma, [&](double g) { return tms_logical_variance(sigma, g); });
}

double tms_gain_asymptotic(double sigma) {
  double l = std::log(std::pow(M_PI, 1.5) / (2.0 * std::pow(sigma, 4)));
  return M_PI / (8.0 * sigma * sigma) / l + 0.5;
}

double tms_sigma_l_asymptotic(double sigma) {
  double l = std::log(std::pow(M_PI, 1.5) / (2.0 * std::pow(sigma, 4)));
  return 2.0 * sigma * sigma / std::sqrt(M_PI) * std::sqrt(l);
}

double tms_logical_variance_finite_gkp(double sigma, double sigma_gkp, double gain) {
  if (!(sigma > 0.0)) throw std::domain_error("finite gkp variance: sigma must be positive");
  if (sigma_gkp < 0.0) throw std::domain_error("finite gkp variance: sigma_gkp must be >= 0");
  check_gain(gain);
  if (sigma_gkp == 0.0) return tms_logical_variance(sigma, gain);

  const double g2 = 2.0 * gain - 1.0;
  const double var_z = g2 * sigma * sigma;          // reshaped ancilla quadrature
  const double var_g = 2.0 * sigma_gkp * sigma_gkp;  // GKP measurement corruption
  const double var_u = var_z + var_g;                // modular-measured sum
  const double root = 2.0 * std::sqrt(gain * (gain - 1.0));
  const double a = root * sigma * sigma / (g2 * sigma * sigma + var_g);
  const double b = root * var_g / (g2 * (g2 * sigma * sigma + var_g));

  // Conditional moments of xi_gkp given u = z + xi_gkp.
  const double mu_coef = var_g / var_u;
  const double cond_var = var_g * var_z / var_u;
  const double ab = a + b;
  const double sigma_u = std::sqrt(var_u);

  // E[(a (xi - sqrt(2 pi) n) - b z)^2 | u] integrated against the Gaussian
  // density of u over lattice cell n.
  auto cell_integrand = [&](double u, int n) {
    double mean = ab * mu_coef * u - b * u - a * kSqrt2Pi * n;
    return normal_pdf(u, sigma_u) * (mean * mean + ab * ab * cond_var);
  };

  // Adaptive Gauss-Legendre (7-point) with interval halving to 1e-8.
  static const double kGx[7] = {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
                                0.0,                 0.4058451513773972,  0.7415311855993945,
                                0.9491079123427585};
  static const double kGw[7] = {0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
                                0.4179591836734694, 0.3818300505051189, 0.2797053914892766,
                                0.1294849661688697};
  auto gauss = [&](double lo, double hi, int n) {
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double s = 0.0;
    for (int i = 0; i < 7; ++i) s += kGw[i] * cell_integrand(mid + half * kGx[i], n);
    return s * half;
  };
  auto integrate_cell = [&](double lo, double hi, int n) {
    double prev = gauss(lo, hi, n);
    int pieces = 2;
    for (int iter = 0; iter < 12; ++iter) {
      double sum = 0.0;
      double step = (hi - lo) / pieces;
      for (int i = 0; i < pieces; ++i) sum += gauss(lo + i * step, lo + (i + 1) * step, n);
      if (std::abs(sum - prev) < 1e-9) return sum;
      prev = sum;
      pieces *= 2;
    }
    return prev;
  };

  double var = sigma * sigma / g2;
  const int w = cell_window(sigma_u);
  for (int n = -w; n <= w; ++n) {
    var += integrate_cell((n - 0.5) * kSqrt2Pi, (n + 0.5) * kSqrt2Pi, n);
  }
  return var;
}

TmsOptimum tms_optimize_gain_finite_gkp(double sigma, double sigma_gkp) {
  if (sigma_gkp == 0.0) return tms_optimize_gain(sigma);
  return optimize_gain(sigma,
                       [&](double g) { return tms_logical_variance_finite_gkp(sigma, sigma_gkp, g); });
}

TmsGainOptimum tms_max_qec_gain(double s_gkp_db) {
  const double sigma_gkp = NoiseParams::from_gkp_squeezing_db(s_gkp_db).sigma_gkp;
  auto neg_gain = [&](double sigma) {
    TmsOptimum o = tms_optimize_gain_finite_gkp(sigma, sigma_gkp);
    return -(sigma * sigma) / (o.sigma_l * o.sigma_l);
  };
  // Coarse scan, then golden refinement around the best input noise.
  double best_sigma = 0.1, best = 0.0;
  for (double s = 0.03; s <= 0.61; s += 0.02) {
    double g = -neg_gain(s);
    if (g > best) {
      best = g;
      best_sigma = s;
    }
  }
  double s = golden_min(neg_gain, std::max(0.02, best_sigma - 0.03), best_sigma + 0.03, 1e-4);
  if (-neg_gain(s) < best) s = best_sigma;
  TmsGainOptimum out;
  out.sigma = s;
  TmsOptimum o = tms_optimize_gain_finite_gkp(s, sigma_gkp);
  out.qec_gain = s * s / (o.sigma_l * o.sigma_l);
  out.gain = o.gain;
  return out;
}

TmsMonteCarlo tms_monte_carlo(double sigma, double sigma_gkp, double gain, long trials, Rng& rng) {
  if (trials < 2) throw std::invalid_argument("tms_monte_carlo: trials must be >= 2");
  check_gain(gain);
  const double g2 = 2.0 * gain - 1.0;
  const double var_g = 2.0 * sigma_gkp * sigma_gkp;
  const double coeff = sigma_gkp == 0.0
                           ? 2.0 * std::sqrt(gain * (gain - 1.0)) / g2
                           : 2.0 * std::sqrt(gain * (gain - 1.0)) * sigma * sigma /
                                 (g2 * sigma * sigma + var_g);

  double sq = 0.0, s2q = 0.0, s4q = 0.0;
  double sp = 0.0, s2p = 0.0, s4p = 0.0;
  for (long t = 0; t < trials; ++t) {
    std::array<double, 4> xi = {rng.normal(sigma), rng.normal(sigma), rng.normal(sigma),
                                rng.normal(sigma)};
    std::array<double, 4> z = reshape_noise(gain, xi);
    double mq = remainder_mod(z[2] + rng.normal(std::sqrt(var_g)), kSqrt2Pi);
    double mp = remainder_mod(z[3] + rng.normal(std::sqrt(var_g)), kSqrt2Pi);
    double out_q = z[0] + coeff * mq;
    double out_p = z[1] - coeff * mp;
    sq += out_q;
    s2q += out_q * out_q;
    s4q += out_q * out_q * out_q * out_q;
    sp += out_p;
    s2p += out_p * out_p;
    s4p += out_p * out_p * out_p * out_p;
  }
  TmsMonteCarlo mc;
  const double n = static_cast<double>(trials);
  double m1q = sq / n, m2q = s2q / n, m4q = s4q / n;
  double m1p = sp / n, m2p = s2p / n, m4p = s4p / n;
  mc.var_q = m2q - m1q * m1q;
  mc.var_p = m2p - m1p * m1p;
  mc.se_q = std::sqrt(std::max(0.0, m4q - m2q * m2q) / n);
  mc.se_p = std::sqrt(std::max(0.0, m4p - m2p * m2p) / n);
  return mc;
}

TriorthogonalReport check_triorthogonal(const Eigen::MatrixXd& a_bar) {
  TriorthogonalReport rep;
  const int n = static_cast<int>(a_bar.rows());
  const int m = static_cast<int>(a_bar.cols());
  if (n < m || m < 1) {
    rep.violation = "matrix must be n x m with n >= m >= 1";
    return rep;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a_bar);
  double smin = svd.singularValues().minCoeff();
  if (smin < 1e-9 * std::max(1.0, svd.singularValues().maxCoeff())) {
    rep.violation = "matrix is not full column rank";
    return rep;
  }

  constexpr double kTol = 1e-9;
  int k = 0;
  while (k < m) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) diag += std::pow(a_bar(j, k), 3);
    if (std::abs(diag - 1.0) <= kTol) {
      ++k;
    } else {
      break;
    }
  }
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      for (int c = 0; c < m; ++c) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += a_bar(j, a) * a_bar(j, b) * a_bar(j, c);
        double expected = (a == b && b == c && a < k) ? 1.0 : 0.0;
        if (std::abs(s - expected) > kTol) {
          rep.violation = "triple (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "," +
                          std::to_string(c + 1) + ") sums to " + std::to_string(s);
          return rep;
        }
      }
    }
  }
  if (k == 0) {
    rep.violation = "no unit diagonal triples";
    return rep;
  }
  rep.valid = true;
  rep.k = k;
  return rep;
}

Eigen::MatrixXd rm15_matrix() {
  Eigen::MatrixXd a(15, 5);
  a << 1, 1, 0, 0, 0,
      1, 0, 1, 0, 0,
      -1, -1, -1, 0, 0,
      1, 0, 0, 1, 0,
      -1, -1, 0, -1, 0,
      -1, 0, -1, -1, 0,
      1, 1, 1, 1, 0,
      1, 0, 0, 0, 1,
      -1, -1, 0, 0, -1,
      -1, 0, -1, 0, -1,
      1, 1, 1, 0, 1,
      -1, 0, 0, -1, -1,
      1, 1, 0, 1, 1,
      1, 0, 1, 1, 1,
      -1, -1, -1, -1, -1;
  return a;
}

Eigen::MatrixXd bh14_matrix() {
  Eigen::MatrixXd a(14, 5);
  a << 0, 0, 0, 0, -1,
      0, 0, 1, 0, 1,
      0, 0, 0, 1, 1,
      0, 0, -1, -1, -1,
      1, 1, 0, 0, 1,
      -1, -1, -1, 0, -1,
      -1, -1, 0, -1, -1,
      1, 1, 1, 1, 1,
      1, 0, -1, 0, 0,
      1, 0, 0, -1, 0,
      -1, 0, 1, 1, 0,
      0, 1, 1, 0, 0,
      0, 1, 0, 1, 0,
      0, -1, -1, -1, 0;
  return a;
}

DistillationResult distillation_output_variance(const Eigen::MatrixXd& a_bar, double sigma) {
  TriorthogonalReport rep = check_triorthogonal(a_bar);
  if (!rep.valid) throw std::invalid_argument("distillation: matrix is not triorthogonal: " + rep.violation);
  const int m = static_cast<int>(a_bar.cols());
  Eigen::MatrixXd v = sigma * sigma * a_bar.transpose() * a_bar;
  double v_ul = v(0, 0);
  Eigen::VectorXd v_ll = v.block(1, 0, m - 1, 1);
  Eigen::MatrixXd v_lr = v.block(1, 1, m - 1, m - 1);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(v_lr);
  if (!lu.isInvertible()) throw std::invalid_argument("distillation: singular lower-right block");
  DistillationResult out;
  out.coefficients = lu.solve(v_ll);
  out.sigma_sq_out = v_ul - v_ll.dot(out.coefficients);
  return out;
}

double nogo_witness(const Eigen::VectorXd& v) {
  double cube = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) cube += v[i] * v[i] * v[i];
  if (std::abs(cube - 1.0) > 1e-9) {
    throw std::invalid_argument("nogo_witness: vector must satisfy sum v^3 = 1");
  }
  return v.squaredNorm();
}

void GaussianStateMoments::validate() const {
  if (v_qq <= 0.0 || v_pp <= 0.0) throw std::domain_error("moments: variances must be positive");
  if (v_qq * v_pp - v_qp * v_qp < 0.25 - 1e-12) {
    throw std::domain_error("moments: uncertainty relation violated");
  }
}

double magic_variance(const GaussianStateMoments& st, double gamma) {
  if (!(gamma > 0.0)) throw std::domain_error("magic_variance: gamma must be positive");
  st.validate();
  double offset = st.q_bar - st.v_qp / (6.0 * gamma * st.v_qq);
  return st.v_pp + 18.0 * gamma * gamma * st.v_qq * st.v_qq +
         36.0 * gamma * gamma * st.v_qq * offset * offset - st.v_qp * st.v_qp / st.v_qq;
}

double magic_variance_bound(double gamma) {
  return 1.5 * std::pow(1.5 * gamma, 2.0 / 3.0);
}

GaussianStateMoments magic_variance_saturating_state(double gamma) {
  GaussianStateMoments st;
  st.v_qp = 0.0;
  st.q_bar = 0.0;
  st.p_bar = 0.0;
  // Minimum-uncertainty squeezed state at the stationary point of
  // 1/(4 V_qq) + 18 gamma^2 V_qq^2.
  st.v_qq = std::pow(1.0 / (144.0 * gamma * gamma), 1.0 / 3.0);
  st.v_pp = 0.25 / st.v_qq;
  return st;
}

}  // namespace bqec
