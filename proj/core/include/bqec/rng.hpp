#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace bqec {

// Counter-seeded xoshiro256++ stream. Streams derived from
// (master_seed, stream_id) are independent, so Monte Carlo trials can be
// dispatched to workers in any order without changing the results.
class Rng {
 public:
  explicit Rng(uint64_t seed) { reseed(seed, 0); }
  Rng(uint64_t master_seed, uint64_t stream_id) { reseed(master_seed, stream_id); }

  void reseed(uint64_t master_seed, uint64_t stream_id);

  uint64_t next_u64();

  // Uniform in [0, 1) with 53 random bits.
  double uniform();

  // Standard normal via Box-Muller; one spare value is cached.
  double normal();
  double normal(double sigma) { return sigma == 0.0 ? 0.0 : sigma * normal(); }

  // Correlated pair drawn from the 2x2 covariance "cov" through its
  // (precomputed) lower-triangular Cholesky factor.
  void normal_pair(const double chol[3], double& a, double& b);

 private:
  uint64_t state_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Lower-triangular Cholesky factor of a symmetric 2x2 PSD matrix, packed as
// {L00, L10, L11}.
void cholesky2(double v00, double v01, double v11, double out[3]);

// Sample from N(0, cov) through the symmetric square root of cov.
// Throws std::invalid_argument when cov is not PSD (tolerance 1e-12 on the
// smallest eigenvalue relative to the largest).
Eigen::VectorXd sample_gaussian(Rng& rng, const Eigen::MatrixXd& cov);

}  // namespace bqec
