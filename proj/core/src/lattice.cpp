#include "bqec/lattice.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bqec {

namespace {

constexpr double kIntTol = 1e-9;

bool near_integer(double x, double tol = kIntTol) {
  return std::abs(x - std::round(x)) <= tol;
}

Eigen::MatrixXd omega(int modes) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  w.topRightCorner(modes, modes) = Eigen::MatrixXd::Identity(modes, modes);
  w.bottomLeftCorner(modes, modes) = -Eigen::MatrixXd::Identity(modes, modes);
  return w;
}

}  // namespace

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Z: return 'Z';
    case Pauli::Y: return 'Y';
  }
  return '?';
}

GkpLatticeCode::GkpLatticeCode(Eigen::MatrixXd S, std::vector<int> logical_dims)
    : S_(std::move(S)), dims_(std::move(logical_dims)) {
  if (S_.rows() != S_.cols() || S_.rows() % 2 != 0 || S_.rows() == 0) {
    throw std::invalid_argument("GkpLatticeCode: S must be 2N x 2N");
  }
  modes_ = static_cast<int>(S_.rows()) / 2;
  if (static_cast<int>(dims_.size()) != modes_) {
    throw std::invalid_argument("GkpLatticeCode: need one logical dim per mode");
  }
  validate();
  L_ = kSqrt2Pi * S_.inverse();
}

void GkpLatticeCode::validate() const {
  for (int d : dims_) {
    if (d < 1) throw std::invalid_argument("GkpLatticeCode: logical dims must be >= 1");
  }
  if (modes_ == 1) {
    if (!near_integer(S_.determinant())) {
      throw std::invalid_argument("GkpLatticeCode: det(S) must be an integer");
    }
  }
  Eigen::MatrixXd A = S_ * omega(modes_) * S_.transpose();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (!near_integer(A(i, j))) {
        throw std::invalid_argument("GkpLatticeCode: S*Omega*S^T must be integer");
      }
    }
  }
  double prod = 1.0;
  for (int d : dims_) prod *= d;
  double det_a = std::abs(A.determinant());
  if (std::abs(std::sqrt(det_a) - prod) > 1e-6 * std::max(1.0, prod)) {
    throw std::invalid_argument("GkpLatticeCode: logical dims inconsistent with |det(S Omega S^T)|^{1/2}");
  }
}

GkpLatticeCode GkpLatticeCode::square(int logical_dim) {
  if (logical_dim < 1) throw std::invalid_argument("square: dim must be >= 1");
  Eigen::MatrixXd S = std::sqrt(static_cast<double>(logical_dim)) * Eigen::MatrixXd::Identity(2, 2);
  return GkpLatticeCode(S, {logical_dim});
}

GkpLatticeCode GkpLatticeCode::hexagonal(int logical_dim) {
  if (logical_dim < 1) throw std::invalid_argument("hexagonal: dim must be >= 1");
  Eigen::MatrixXd S(2, 2);
  S << 1.0, 0.0, 0.5, std::sqrt(3.0) / 2.0;
  S *= std::sqrt(static_cast<double>(logical_dim)) * std::sqrt(2.0 / std::sqrt(3.0));
  return GkpLatticeCode(S, {logical_dim});
}

GkpLatticeCode GkpLatticeCode::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("GkpLatticeCode: cannot open " + path);
  return from_stream(in);
}

GkpLatticeCode GkpLatticeCode::from_stream(std::istream& in) {
  auto next_line = [&in](std::string& line) -> bool {
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream probe(line);
      std::string tok;
      if (probe >> tok) return true;
    }
    return false;
  };

  std::string line;
  if (!next_line(line)) throw std::runtime_error("lattice file: empty");
  std::istringstream head(line);
  std::string key;
  int modes = 0;
  if (!(head >> key >> modes) || key != "modes" || modes < 1) {
    throw std::runtime_error("lattice file: expected 'modes N'");
  }
  if (!next_line(line)) throw std::runtime_error("lattice file: missing 'S'");
  {
    std::istringstream s(line);
    s >> key;
    if (key != "S") throw std::runtime_error("lattice file: expected 'S'");
  }
  const int dim = 2 * modes;
  Eigen::MatrixXd S(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (!next_line(line)) throw std::runtime_error("lattice file: truncated S matrix");
    std::istringstream row(line);
    for (int j = 0; j < dim; ++j) {
      if (!(row >> S(i, j))) throw std::runtime_error("lattice file: bad S row");
    }
    double extra;
    if (row >> extra) throw std::runtime_error("lattice file: too many entries in S row");
  }
  if (!next_line(line)) throw std::runtime_error("lattice file: missing 'dims'");
  std::istringstream ds(line);
  ds >> key;
  if (key != "dims") throw std::runtime_error("lattice file: expected 'dims'");
  std::vector<int> dims;
  int d;
  while (ds >> d) dims.push_back(d);
  if (static_cast<int>(dims.size()) != modes) {
    throw std::runtime_error("lattice file: need one dim per mode");
  }
  return GkpLatticeCode(S, dims);
}

DecodeOutcome closest_vector_decode(const GkpLatticeCode& code, const Eigen::VectorXd& syndrome_z) {
  const int modes = code.mode_count();
  if (modes > 2) {
    throw std::invalid_argument("closest_vector_decode: N > 2 unsupported (general CVP is the extension point)");
  }
  const int dim = 2 * modes;
  if (syndrome_z.size() != dim) {
    throw std::invalid_argument("closest_vector_decode: syndrome dimension mismatch");
  }
  for (int i = 0; i < dim; ++i) {
    if (!std::isfinite(syndrome_z[i])) {
      throw std::invalid_argument("closest_vector_decode: non-finite syndrome");
    }
  }

  const Eigen::MatrixXd& L = code.decoding_lattice();
  Eigen::VectorXd target = code.stabilizer_matrix().inverse() * syndrome_z;
  Eigen::VectorXi center(dim);
  for (int i = 0; i < dim; ++i) center[i] = static_cast<int>(std::lround(syndrome_z[i] / kSqrt2Pi));

  constexpr int kHalfWidth = 3;
  Eigen::VectorXi n(dim), best(dim);
  double best_dist = std::numeric_limits<double>::infinity();
  const long total = static_cast<long>(std::pow(2 * kHalfWidth + 1, dim));
  for (long idx = 0; idx < total; ++idx) {
    long rest = idx;
    for (int i = 0; i < dim; ++i) {
      n[i] = center[i] + static_cast<int>(rest % (2 * kHalfWidth + 1)) - kHalfWidth;
      rest /= (2 * kHalfWidth + 1);
    }
    double dist = (target - L * n.cast<double>()).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = n;
    }
  }

  DecodeOutcome out;
  Eigen::VectorXd est = target - L * best.cast<double>();
  out.estimated_shift = ShiftVector(modes);
  for (int k = 0; k < modes; ++k) {
    out.estimated_shift.q[k] = est[k];
    out.estimated_shift.p[k] = est[modes + k];
  }
  out.residues.resize(modes);
  out.labels.resize(modes);
  for (int k = 0; k < modes; ++k) {
    int d = code.logical_dims()[k];
    int nq = ((best[k] % d) + d) % d;
    int np = ((best[modes + k] % d) + d) % d;
    out.residues[k] = {nq, np};
    bool x = nq % 2, z = np % 2;
    out.labels[k] = x ? (z ? Pauli::Y : Pauli::X) : (z ? Pauli::Z : Pauli::I);
  }
  return out;
}

double correctable_radius(const GkpLatticeCode& code) {
  const int modes = code.mode_count();
  if (modes > 4) throw std::invalid_argument("correctable_radius: N > 4 unsupported");
  const int dim = 2 * modes;
  const int bound = modes <= 2 ? 5 : 3;
  const Eigen::MatrixXd& L = code.decoding_lattice();

  Eigen::VectorXi n(dim);
  double shortest_sq = std::numeric_limits<double>::infinity();
  const long total = static_cast<long>(std::pow(2 * bound + 1, dim));
  for (long idx = 0; idx < total; ++idx) {
    long rest = idx;
    bool zero = true;
    for (int i = 0; i < dim; ++i) {
      n[i] = static_cast<int>(rest % (2 * bound + 1)) - bound;
      rest /= (2 * bound + 1);
      zero = zero && n[i] == 0;
    }
    if (zero) continue;
    shortest_sq = std::min(shortest_sq, (L * n.cast<double>()).squaredNorm());
  }
  return 0.5 * std::sqrt(shortest_sq);
}

double square_failure_probability(double sigma, bool exact) {
  if (!(sigma > 0.0)) throw std::domain_error("square_failure_probability: sigma must be positive");
  if (!exact) {
    return std::sqrt(32.0) * sigma / M_PI * std::exp(-M_PI / (8.0 * sigma * sigma));
  }
  // 1 - (1 - p)^2, written to survive p near the double-precision floor.
  double p = p_err(sigma);
  return p * (2.0 - p);
}

double failure_bound(const GkpLatticeCode& code, double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("failure_bound: sigma must be positive");
  double rc = correctable_radius(code);
  return std::exp(-rc * rc / (2.0 * sigma * sigma));
}

double loss_error_bound(const GkpLatticeCode& code, double gamma) {
  if (!(gamma > 0.0) || !(gamma < 1.0)) {
    throw std::domain_error("loss_error_bound: gamma must be in (0,1)");
  }
  return failure_bound(code, std::sqrt(gamma / (1.0 - gamma)));
}

}  // namespace bqec
