#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bqec/lattice.hpp"
#include "bqec/matching.hpp"
#include "bqec/rng.hpp"
#include "bqec/shift.hpp"

namespace bqec {

enum class StabKind : uint8_t { Z, X };

// Rotated surface code layout: d^2 data qubits in row-major order
// (1-based index k = row*d + col + 1) and (d^2-1)/2 syndrome qubits of each
// type. Syndrome <-> data connectivity is resolved into the four two-mode
// gate time steps; entry 0 means the syndrome mode idles in that step.
struct SurfaceLayout {
  int d = 0;
  int n_data = 0;
  int n_synd = 0;

  // step[t][ell] = 1-based data index coupled to syndrome ell at time step
  // t+1 (t in 0..3), or 0 when idle.
  std::array<std::vector<int>, 4> z_step;
  std::array<std::vector<int>, 4> x_step;

  // For data qubit k (0-based): the syndrome vertices its edge connects in
  // the Z-type / X-type space graph; -1 marks the boundary.
  std::vector<std::array<int, 2>> z_edge_of_data;
  std::vector<std::array<int, 2>> x_edge_of_data;

  // Data qubits touched by some gate at step t (0-based data index -> flag).
  std::array<std::vector<uint8_t>, 4> data_busy;

  const std::array<std::vector<int>, 4>& steps(StabKind kind) const {
    return kind == StabKind::Z ? z_step : x_step;
  }
  const std::vector<std::array<int, 2>>& edges(StabKind kind) const {
    return kind == StabKind::Z ? z_edge_of_data : x_edge_of_data;
  }
};

SurfaceLayout make_layout(int d);

struct SurfaceGkpConfig {
  int distance = 3;  // odd, >= 3
  NoiseParams noise;
  bool use_analog_info = true;
  uint64_t master_seed = 0;

  int rounds() const { return distance; }  // noisy rounds; one ideal round follows
  void validate() const;
};

// Quadrature noise realizations for every mode of the code patch.
struct NoiseState {
  std::vector<double> dq, dp;  // data, d^2
  std::vector<double> aq, ap;  // GKP measurement ancillas, d^2
  std::vector<double> zq, zp;  // Z-type syndrome modes, (d^2-1)/2
  std::vector<double> xq, xp;  // X-type syndrome modes, (d^2-1)/2

  explicit NoiseState(const SurfaceLayout& layout);
};

// Analog records of one full GKP stabilizer round (both half-steps):
// sq[k] = R_sqrt(pi)(ancilla readout of the S_q measurement on mode k).
struct GkpRoundRecord {
  std::vector<double> sq;
  std::vector<double> sp;
};

// Outcomes of one surface stabilizer round.
struct SurfaceRoundRecord {
  std::vector<int8_t> z_value;   // +-1
  std::vector<int8_t> x_value;   // +-1
  std::vector<double> z_analog;  // R_sqrt(pi)(Z readout)
  std::vector<double> x_analog;  // R_sqrt(pi)(X readout)
};

struct TrialRecord {
  std::vector<GkpRoundRecord> gkp;         // rounds 1..d+1
  std::vector<SurfaceRoundRecord> surface;  // rounds 1..d+1
};

// (d+1)-layer space-time syndrome graph of one stabilizer type. Vertices
// 0..(d+1)*n_synd-1 are (layer, syndrome) pairs; the last vertex absorbs all
// boundary vertices (their mutual edges carry zero weight, so they collapse).
struct SpaceTimeGraph {
  WeightedGraph graph;
  std::vector<int> highlighted;
  int layers = 0;
  int n_synd = 0;
  int boundary_vertex = 0;

  int vertex(int layer_1based, int ell) const { return (layer_1based - 1) * n_synd + ell; }
};

struct TrialResult {
  Pauli label = Pauli::I;
  long total_q = 0;  // sum(dq)/sqrt(pi) after correction, rounded
  long total_p = 0;
};

// Exclusive logical label frequencies (a Y counts as neither X nor Z).
struct MonteCarloResult {
  long trials = 0;
  long n_x = 0, n_z = 0, n_y = 0;
  double p_x() const { return static_cast<double>(n_x) / trials; }
  double p_z() const { return static_cast<double>(n_z) / trials; }
  double p_y() const { return static_cast<double>(n_y) / trials; }
  double err_x() const { return binom_err(n_x); }
  double err_z() const { return binom_err(n_z); }
  double err_y() const { return binom_err(n_y); }

 private:
  double binom_err(long k) const;
};

// Steady-state readout standard deviations, transcribed from the
// noise-propagation analysis of the syndrome extraction circuit.
double sigma_table_h(StabKind kind, int k_1based, int d, const NoiseParams& np);
double sigma_table_v(StabKind kind, int ell_1based, int d, const NoiseParams& np);
// Effective sigma for the horizontal edge of data qubit k at a given round
// (1-based; rounds 1 and d+1 use the reduced start/ideal-round variances).
double horizontal_sigma(StabKind kind, int k_1based, int d, int round_1based, int total_rounds,
                        const NoiseParams& np);

class SurfaceGkpSimulator {
 public:
  explicit SurfaceGkpSimulator(const SurfaceGkpConfig& config);

  const SurfaceLayout& layout() const { return layout_; }
  const SurfaceGkpConfig& config() const { return config_; }

  // One GKP stabilizer half-step (step 1 or 2). Updates the analog records
  // for the modes whose S_q / S_p stabilizer is measured in this step.
  void gkp_step(NoiseState& state, int step, Rng& rng, GkpRoundRecord& record,
                bool ideal = false) const;

  // The four syndrome-extraction time steps plus homodyne readout.
  SurfaceRoundRecord surface_round(NoiseState& state, Rng& rng, bool ideal = false) const;

  // The round without the fresh-syndrome preparation, so shifts can be
  // injected on syndrome modes before the coupling steps.
  SurfaceRoundRecord surface_steps(NoiseState& state, Rng& rng, bool ideal = false) const;

  // d noisy rounds followed by one ideal round; state starts from zero noise.
  TrialRecord simulate_rounds(NoiseState& state, Rng& rng) const;

  SpaceTimeGraph build_graph(StabKind kind, const TrialRecord& record) const;

  // MWPM correction on both graphs, then the logical class of the residual
  // data noise totals.
  TrialResult decode_and_score(const TrialRecord& record, NoiseState& state) const;

  TrialResult run_trial(uint64_t trial_index) const;

  // Deterministic given (config, master_seed) regardless of thread count.
  MonteCarloResult monte_carlo(long trials, int threads = 0) const;

 private:
  SurfaceGkpConfig config_;
  SurfaceLayout layout_;
  double chol_a_[3], chol_b_[3], chol_c_[3], chol_d_[3];
};

struct ThresholdPoint {
  double noise = 0.0;  // swept parameter (sigma_gkp for Case I, sigma otherwise)
  std::vector<MonteCarloResult> per_distance;
};

struct ThresholdScanResult {
  std::vector<int> distances;
  std::vector<ThresholdPoint> points;
  // Crossing of each adjacent distance pair, NaN when no crossing was found
  // inside the grid.
  std::vector<double> pair_crossings;
  bool has_crossing = false;
  double crossing_mean = 0.0;
  double crossing_spread = 0.0;
};

// Case I: sigma = 0, sweep sigma_gkp. Case II: sigma_gkp = 0, sweep sigma.
// Case III: sigma = sigma_gkp, sweep both.
NoiseParams case_noise(int case_id, double value);

ThresholdScanResult threshold_scan(int case_id, const std::vector<int>& distances,
                                   const std::vector<double>& grid, long trials_per_point,
                                   uint64_t master_seed, bool use_analog_info = true,
                                   int threads = 0);

int worker_count(int requested = 0);

}  // namespace bqec
