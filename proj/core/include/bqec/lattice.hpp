#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bqec/shift.hpp"

namespace bqec {

enum class Pauli : uint8_t { I, X, Z, Y };
char pauli_char(Pauli p);

// A GKP code over the lattice generated by the 2N x 2N stabilizer matrix S,
// in the stacked quadrature convention x = (q_1..q_N, p_1..p_N) with
// Omega = [[0, I], [-I, 0]]. Decoding happens in the dual lattice
// sqrt(2*pi) * S^{-1}.
class GkpLatticeCode {
 public:
  GkpLatticeCode(Eigen::MatrixXd S, std::vector<int> logical_dims);

  int mode_count() const { return modes_; }
  const Eigen::MatrixXd& stabilizer_matrix() const { return S_; }
  const Eigen::MatrixXd& decoding_lattice() const { return L_; }
  const std::vector<int>& logical_dims() const { return dims_; }

  static GkpLatticeCode square(int logical_dim = 2);
  static GkpLatticeCode hexagonal(int logical_dim = 2);
  // Rows of S plus logical dims from a plain-text file; throws on any
  // violation of the code invariants.
  static GkpLatticeCode from_file(const std::string& path);
  static GkpLatticeCode from_stream(std::istream& in);

 private:
  void validate() const;

  Eigen::MatrixXd S_;
  Eigen::MatrixXd L_;  // sqrt(2*pi) * S^{-1}, cached
  std::vector<int> dims_;
  int modes_;
};

struct DecodeOutcome {
  ShiftVector estimated_shift;
  // Per mode: (n_q mod d, n_p mod d) residues of the closest lattice point.
  std::vector<std::pair<int, int>> residues;
  // Per-mode Pauli label; meaningful for logical_dim = 2 where the residues
  // reduce to parities.
  std::vector<Pauli> labels;
};

// Closest-vector decoding of a syndrome measured modulo sqrt(2*pi):
// n* = argmin_n |S^{-1} z - sqrt(2*pi) S^{-1} n| by exhaustive search over
// an integer box of half-width 3 around the rounded target. N <= 2 only.
DecodeOutcome closest_vector_decode(const GkpLatticeCode& code, const Eigen::VectorXd& syndrome_z);

// Radius of the largest origin-centered ball inside the origin Voronoi cell
// of the decoding lattice: half the shortest nonzero lattice vector.
double correctable_radius(const GkpLatticeCode& code);

// Exact failure probability of the square-lattice qubit code under isotropic
// Gaussian shifts: 1 - (1 - p_err(sigma))^2. "exact=false" returns the
// small-sigma asymptote sqrt(32) sigma / pi * exp(-pi/(8 sigma^2)).
double square_failure_probability(double sigma, bool exact = true);

// Upper bound exp(-r_c^2 / (2 sigma^2)) from the correctable radius.
double failure_bound(const GkpLatticeCode& code, double sigma);

// failure_bound evaluated at the amplification-decoding variance
// sigma^2 = gamma / (1 - gamma).
double loss_error_bound(const GkpLatticeCode& code, double gamma);

}  // namespace bqec
