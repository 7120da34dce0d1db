#include <doctest.h>

#include <cmath>

#include "bqec/surface_gkp.hpp"

using namespace bqec;

TEST_CASE("zero noise gives label I and an empty syndrome history") {
  SurfaceGkpConfig cfg;
  cfg.distance = 3;
  cfg.noise.sigma = 0.0;
  cfg.noise.sigma_gkp = 0.0;
  SurfaceGkpSimulator sim(cfg);
  Rng rng(0);
  NoiseState st(sim.layout());
  TrialRecord rec = sim.simulate_rounds(st, rng);
  for (const auto& sr : rec.surface) {
    for (int8_t v : sr.z_value) CHECK(v == 1);
    for (int8_t v : sr.x_value) CHECK(v == 1);
  }
  SpaceTimeGraph gz = sim.build_graph(StabKind::Z, rec);
  CHECK(gz.highlighted.empty());
  TrialResult res = sim.decode_and_score(rec, st);
  CHECK(res.label == Pauli::I);
  CHECK(res.total_q == 0);
  CHECK(res.total_p == 0);
}

TEST_CASE("gkp round turns a 0.51 sqrt(pi) shift into a full logical flip") {
  SurfaceGkpConfig cfg;
  cfg.distance = 3;
  cfg.noise.sigma = 0.0;
  cfg.noise.sigma_gkp = 0.0;
  SurfaceGkpSimulator sim(cfg);
  Rng rng(0);
  NoiseState st(sim.layout());
  st.dq[0] = 0.51 * kSqrtPi;  // mode 1 is measured in the first half-step
  GkpRoundRecord rec;
  sim.gkp_step(st, 1, rng, rec, true);
  CHECK(st.dq[0] == doctest::Approx(kSqrtPi).epsilon(1e-12));
  CHECK(rec.sq[0] == doctest::Approx(-0.49 * kSqrtPi).epsilon(1e-12));
  // All other modes untouched.
  for (int m = 1; m < 9; ++m) CHECK(st.dq[m] == 0.0);
}

TEST_CASE("a residual sqrt(pi) shift flips exactly the adjacent Z stabilizers") {
  SurfaceGkpConfig cfg;
  cfg.distance = 5;
  cfg.noise.sigma = 0.0;
  cfg.noise.sigma_gkp = 0.0;
  SurfaceGkpSimulator sim(cfg);
  Rng rng(0);
  for (int k = 0; k < sim.layout().n_data; ++k) {
    NoiseState st(sim.layout());
    st.dq[k] = kSqrtPi;
    SurfaceRoundRecord rec = sim.surface_round(st, rng, true);
    auto edge = sim.layout().z_edge_of_data[k];
    for (int l = 0; l < sim.layout().n_synd; ++l) {
      bool adjacent = (edge[0] == l || edge[1] == l);
      CHECK(rec.z_value[l] == (adjacent ? -1 : 1));
    }
    for (int l = 0; l < sim.layout().n_synd; ++l) CHECK(rec.x_value[l] == 1);
  }
}

TEST_CASE("an isolated residual error is corrected back to label I") {
  SurfaceGkpConfig cfg;
  cfg.distance = 5;
  cfg.noise.sigma = 0.0;
  cfg.noise.sigma_gkp = 0.0;
  SurfaceGkpSimulator sim(cfg);
  Rng rng(0);
  for (int k : {0, 3, 7, 12, 18, 24}) {
    NoiseState st(sim.layout());
    // Residual X on data qubit k present from the start; every round sees it.
    st.dq[k] = kSqrtPi;
    TrialRecord rec = sim.simulate_rounds(st, rng);
    SpaceTimeGraph gz = sim.build_graph(StabKind::Z, rec);
    // Highlighted only in layer 1 (value change relative to the clean start).
    for (int v : gz.highlighted) CHECK(v < gz.n_synd);
    TrialResult res = sim.decode_and_score(rec, st);
    CHECK(res.label == Pauli::I);
  }
}

TEST_CASE("residual totals are integers across noisy trials") {
  SurfaceGkpConfig cfg;
  cfg.distance = 3;
  cfg.noise.sigma = 0.04;
  cfg.noise.sigma_gkp = 0.12;
  cfg.master_seed = 5;
  SurfaceGkpSimulator sim(cfg);
  for (uint64_t t = 0; t < 2000; ++t) {
    // decode_and_score throws on a non-integer total.
    CHECK_NOTHROW(sim.run_trial(t));
  }
}

TEST_CASE("determinism: same seed, same results, any thread count") {
  SurfaceGkpConfig cfg;
  cfg.distance = 3;
  cfg.noise.sigma_gkp = 0.18;
  cfg.master_seed = 77;
  SurfaceGkpSimulator sim(cfg);
  MonteCarloResult a = sim.monte_carlo(4000, 1);
  MonteCarloResult b = sim.monte_carlo(4000, 2);
  CHECK(a.n_x == b.n_x);
  CHECK(a.n_z == b.n_z);
  CHECK(a.n_y == b.n_y);
  // Per-trial results are reproducible.
  for (uint64_t t = 0; t < 50; ++t) {
    TrialResult r1 = sim.run_trial(t);
    TrialResult r2 = sim.run_trial(t);
    CHECK(r1.label == r2.label);
    CHECK(r1.total_q == r2.total_q);
  }
}

TEST_CASE("logical X and Z rates agree for the symmetric configuration") {
  SurfaceGkpConfig cfg;
  cfg.distance = 3;
  cfg.noise.sigma_gkp = 0.20;
  cfg.master_seed = 3;
  SurfaceGkpSimulator sim(cfg);
  MonteCarloResult r = sim.monte_carlo(20000);
  double se = std::sqrt(r.err_x() * r.err_x() + r.err_z() * r.err_z());
  CHECK(std::abs(r.p_x() - r.p_z()) < 3.5 * se);
  CHECK(r.p_y() < r.p_x());
}

TEST_CASE("analog information beats the hard-decision decoder") {
  SurfaceGkpConfig cfg;
  cfg.distance = 3;
  cfg.noise.sigma_gkp = 0.16;
  cfg.master_seed = 11;
  cfg.use_analog_info = true;
  MonteCarloResult with = SurfaceGkpSimulator(cfg).monte_carlo(15000);
  cfg.use_analog_info = false;
  MonteCarloResult without = SurfaceGkpSimulator(cfg).monte_carlo(15000);
  CHECK(with.p_x() < without.p_x());
}

TEST_CASE("data noise stays bounded in distribution over 50 cycles") {
  // Sub-threshold, the inner correction pins each mode to its code lattice:
  // the deviation from the nearest lattice point must not drift with the
  // cycle count. (The lattice-valued part is what the outer code tracks.)
  SurfaceGkpConfig cfg;
  cfg.distance = 3;
  cfg.noise.sigma_gkp = 0.10;
  cfg.noise.sigma = 0.02;
  SurfaceGkpSimulator sim(cfg);
  const long trials = 3000;
  auto variance_at = [&](int cycles) {
    double acc = 0.0;
    long count = 0;
    for (long t = 0; t < trials; ++t) {
      Rng rng(900 + t, 0);
      NoiseState st(sim.layout());
      GkpRoundRecord rec;
      for (int c = 0; c < cycles; ++c) {
        rec.sq.clear();
        rec.sp.clear();
        sim.gkp_step(st, 1, rng, rec);
        sim.gkp_step(st, 2, rng, rec);
        sim.surface_round(st, rng);
      }
      for (double v : st.dq) {
        double r = remainder_mod(v, kSqrtPi);
        acc += r * r;
        ++count;
      }
    }
    return acc / count;
  };
  double v5 = variance_at(5);
  double v50 = variance_at(50);
  CHECK(v50 < 1.10 * v5 + 1e-12);
}

TEST_CASE("threshold scan reports no crossing on a one-sided grid") {
  auto res = threshold_scan(1, {3, 5}, {0.05, 0.06}, 400, 4);
  CHECK_FALSE(res.has_crossing);
  for (double c : res.pair_crossings) CHECK(std::isnan(c));
}
