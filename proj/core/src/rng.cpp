#include "bqec/rng.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace bqec {

namespace {

inline uint64_t splitmix64(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ull;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

void Rng::reseed(uint64_t master_seed, uint64_t stream_id) {
  // Mix the stream id into the seed sequence so neighbouring ids give
  // unrelated states.
  uint64_t s = master_seed ^ (stream_id * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull);
  for (auto& w : state_) w = splitmix64(s);
  has_spare_ = false;
}

uint64_t Rng::next_u64() {
  uint64_t* s = state_;
  uint64_t result = rotl(s[0] + s[3], 23) + s[0];
  uint64_t t = s[1] << 17;
  s[2] ^= s[0];
  s[3] ^= s[1];
  s[1] ^= s[2];
  s[0] ^= s[3];
  s[2] ^= t;
  s[3] = rotl(s[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double c = std::cos(2.0 * M_PI * u2);
  double sn = std::sin(2.0 * M_PI * u2);
  spare_ = r * sn;
  has_spare_ = true;
  return r * c;
}

void Rng::normal_pair(const double chol[3], double& a, double& b) {
  double z0 = normal();
  double z1 = normal();
  a = chol[0] * z0;
  b = chol[1] * z0 + chol[2] * z1;
}

void cholesky2(double v00, double v01, double v11, double out[3]) {
  if (v00 < 0.0) throw std::invalid_argument("cholesky2: negative variance");
  double l00 = std::sqrt(v00);
  double l10 = l00 > 0.0 ? v01 / l00 : 0.0;
  double rest = v11 - l10 * l10;
  if (rest < -1e-12 * std::max(1.0, v11)) {
    throw std::invalid_argument("cholesky2: matrix not PSD");
  }
  out[0] = l00;
  out[1] = l10;
  out[2] = std::sqrt(std::max(0.0, rest));
}

Eigen::VectorXd sample_gaussian(Rng& rng, const Eigen::MatrixXd& cov) {
  if (cov.rows() != cov.cols()) {
    throw std::invalid_argument("sample_gaussian: covariance must be square");
  }
  const auto n = cov.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  if (es.info() != Eigen::Success) {
    throw std::invalid_argument("sample_gaussian: eigendecomposition failed");
  }
  const Eigen::VectorXd& ev = es.eigenvalues();
  double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  if (ev.minCoeff() < -1e-12 * scale) {
    throw std::invalid_argument("sample_gaussian: covariance not PSD");
  }
  Eigen::VectorXd sqrt_ev = ev.cwiseMax(0.0).cwiseSqrt();
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z[i] = rng.normal();
  return es.eigenvectors() * (sqrt_ev.asDiagonal() * (es.eigenvectors().transpose() * z));
}

}  // namespace bqec
