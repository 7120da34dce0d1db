// Batch front-end: experiment orchestration, CSV emission, and run manifests.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bqec/capacity.hpp"
#include "bqec/lattice.hpp"
#include "bqec/osc_encoding.hpp"
#include "bqec/shift.hpp"
#include "bqec/surface_gkp.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bqec;

namespace {

constexpr const char* kVersion = "bqec 0.1.0";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> parse_grid(const std::string& spec) {
  // "a:b:step" inclusive grid, or a single value.
  std::vector<double> grid;
  double a, b, step;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &a, &b, &step) == 3) {
    if (step <= 0.0 || b < a) throw CLI::ValidationError("grid", "expected a:b:step with step > 0");
    for (double v = a; v <= b + 0.25 * step; v += step) grid.push_back(v);
  } else if (std::sscanf(spec.c_str(), "%lf", &a) == 1) {
    grid.push_back(a);
  } else {
    throw CLI::ValidationError("grid", "expected a:b:step or a single value");
  }
  return grid;
}

std::string hostname() {
  char buf[256] = {0};
  std::ifstream f("/proc/sys/kernel/hostname");
  std::string h;
  if (f && std::getline(f, h) && !h.empty()) return h;
  (void)buf;
  return "unknown";
}

struct RunManifest {
  std::string subcommand;
  json config;
  uint64_t master_seed = 0;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  void write(const fs::path& dir) const {
    json j;
    j["subcommand"] = subcommand;
    j["config"] = config;
    j["master_seed"] = master_seed;
    j["version"] = kVersion;
    j["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    j["host"] = hostname();
    std::ofstream out(dir / "manifest.json");
    out << j.dump(2) << "\n";
  }
};

std::ofstream open_csv(const fs::path& dir, const std::string& name, const std::string& header) {
  fs::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  out << header << "\n";
  return out;
}

int case_id_from_string(std::string s) {
  for (auto& c : s) c = std::toupper(static_cast<unsigned char>(c));
  if (s == "I" || s == "1") return 1;
  if (s == "II" || s == "2") return 2;
  if (s == "III" || s == "3") return 3;
  throw CLI::ValidationError("--case", "expected I, II, or III");
}

// ---- surface-sim -----------------------------------------------------------

void write_sim_row(std::ofstream& csv, const SurfaceGkpConfig& cfg, const MonteCarloResult& r,
                   double seconds) {
  csv << cfg.distance << ',' << fmt(cfg.noise.sigma) << ',' << fmt(cfg.noise.sigma_gkp) << ','
      << (cfg.use_analog_info ? 1 : 0) << ',' << r.trials << ',' << fmt(r.p_x()) << ','
      << fmt(r.err_x()) << ',' << fmt(r.p_z()) << ',' << fmt(r.err_z()) << ',' << fmt(r.p_y())
      << ',' << fmt(r.err_y()) << ',' << fmt(seconds) << "\n";
}

int run_surface_sim(const SurfaceGkpConfig& cfg, long trials, const fs::path& out_dir,
                    RunManifest& manifest) {
  SurfaceGkpSimulator sim(cfg);
  auto t0 = std::chrono::steady_clock::now();
  MonteCarloResult r = sim.monte_carlo(trials);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto csv = open_csv(out_dir, "surface_sim.csv",
                      "d,sigma,sigma_gkp,analog,trials,p_x,p_x_err,p_z,p_z_err,p_y,p_y_err,seconds");
  write_sim_row(csv, cfg, r, secs);
  std::printf("d=%d sigma=%.4g sigma_gkp=%.4g analog=%d trials=%ld  P_X=%.4g+-%.2g  P_Z=%.4g+-%.2g  P_Y=%.4g\n",
              cfg.distance, cfg.noise.sigma, cfg.noise.sigma_gkp, cfg.use_analog_info ? 1 : 0,
              trials, r.p_x(), r.err_x(), r.p_z(), r.err_z(), r.p_y());
  manifest.write(out_dir);
  return 0;
}

// ---- threshold -------------------------------------------------------------

int run_threshold(int case_id, const std::vector<int>& distances, const std::vector<double>& grid,
                  long trials, uint64_t seed, bool analog, const fs::path& out_dir,
                  RunManifest& manifest) {
  auto res = threshold_scan(case_id, distances, grid, trials, seed, analog);
  auto csv = open_csv(out_dir, "threshold.csv",
                      "case,noise,d,analog,trials,p_x,p_x_err,p_z,p_z_err,p_y,p_y_err");
  for (const auto& pt : res.points) {
    for (size_t i = 0; i < distances.size(); ++i) {
      const auto& mc = pt.per_distance[i];
      csv << case_id << ',' << fmt(pt.noise) << ',' << distances[i] << ',' << (analog ? 1 : 0)
          << ',' << mc.trials << ',' << fmt(mc.p_x()) << ',' << fmt(mc.err_x()) << ','
          << fmt(mc.p_z()) << ',' << fmt(mc.err_z()) << ',' << fmt(mc.p_y()) << ','
          << fmt(mc.err_y()) << "\n";
    }
  }
  auto cross = open_csv(out_dir, "threshold_crossings.csv", "d_low,d_high,crossing");
  for (size_t p = 0; p + 1 < distances.size(); ++p) {
    cross << distances[p] << ',' << distances[p + 1] << ',' << fmt(res.pair_crossings[p]) << "\n";
  }
  if (res.has_crossing) {
    std::printf("crossing estimate: %.4g (pair spread %.4g)\n", res.crossing_mean,
                res.crossing_spread);
  } else {
    std::printf("no crossing found inside the grid\n");
  }
  manifest.write(out_dir);
  return 0;
}

// ---- gkp-single ------------------------------------------------------------

int run_gkp_single(const std::vector<double>& sigma_grid, double gamma, const fs::path& out_dir,
                   RunManifest& manifest) {
  GkpLatticeCode square = GkpLatticeCode::square();
  GkpLatticeCode hex = GkpLatticeCode::hexagonal();
  auto csv = open_csv(out_dir, "gkp_single.csv",
                      "sigma,p_fail_exact,p_fail_asy,bound_square,bound_hex");
  for (double s : sigma_grid) {
    csv << fmt(s) << ',' << fmt(square_failure_probability(s, true)) << ','
        << fmt(square_failure_probability(s, false)) << ',' << fmt(failure_bound(square, s)) << ','
        << fmt(failure_bound(hex, s)) << "\n";
  }
  double rs = correctable_radius(square), rh = correctable_radius(hex);
  std::printf("correctable radius: square=%.4g hex=%.4g (ratio %.4g)\n", rs, rh, rh / rs);
  std::printf("loss bound at gamma=%.4g: square=%.4g hex=%.4g\n", gamma,
              loss_error_bound(square, gamma), loss_error_bound(hex, gamma));
  manifest.write(out_dir);
  return 0;
}

// ---- capacity ---------------------------------------------------------------

void capacity_row(std::ofstream& csv, const ChannelParams& p) {
  double lb_th = std::numeric_limits<double>::quiet_NaN();
  double lb_corr = std::numeric_limits<double>::quiet_NaN();
  double x_star = std::numeric_limits<double>::quiet_NaN();
  if (p.energy_constrained()) {
    lb_th = lower_bound_thermal_input(p);
    CorrelatedBound cb = lower_bound_correlated(p);
    lb_corr = cb.rate;
    x_star = cb.x_star;
  }
  csv << fmt(p.eta) << ',' << fmt(1.0 - p.eta) << ',' << fmt(p.n_th) << ',' << fmt(p.n_bar) << ','
      << fmt(q_dp(p)) << ',' << fmt(q_idp(p)) << ',' << fmt(q_odp(p)) << ',' << fmt(lb_th) << ','
      << fmt(lb_corr) << ',' << fmt(x_star) << ',' << fmt(gkp_achievable_rate(p)) << "\n";
}

int run_capacity(const std::vector<double>& eta_grid, double n_th, double n_bar,
                 const fs::path& out_dir, RunManifest& manifest) {
  auto csv = open_csv(out_dir, "capacity.csv",
                      "eta,gamma,n_th,n_bar,q_dp,q_idp,q_odp,lb_thermal,lb_correlated,x_star,gkp_rate");
  for (double eta : eta_grid) {
    ChannelParams p;
    p.eta = eta;
    p.n_th = n_th;
    p.n_bar = n_bar;
    capacity_row(csv, p);
  }
  if (eta_grid.size() == 1) {
    ChannelParams p{eta_grid[0], n_th, n_bar};
    std::printf("eta=%.4g n_th=%.4g: Q_DP=%.4g Q_IDP=%.4g Q_ODP=%.4g gkp_rate=%.4g\n", p.eta, n_th,
                q_dp(p), q_idp(p), q_odp(p), gkp_achievable_rate(p));
  }
  manifest.write(out_dir);
  return 0;
}

// ---- tms --------------------------------------------------------------------

int run_tms(const std::vector<double>& sigma_grid, double s_gkp_db, const fs::path& out_dir,
            RunManifest& manifest) {
  auto csv = open_csv(out_dir, "tms.csv",
                      "sigma,sigma_gkp_db,g_star,squeezing_db,sigma_l_star,qec_gain");
  const bool ideal = std::isinf(s_gkp_db);
  const double sigma_gkp = ideal ? 0.0 : NoiseParams::from_gkp_squeezing_db(s_gkp_db).sigma_gkp;
  for (double s : sigma_grid) {
    TmsOptimum o = ideal ? tms_optimize_gain(s) : tms_optimize_gain_finite_gkp(s, sigma_gkp);
    csv << fmt(s) << ',' << fmt(s_gkp_db) << ',' << fmt(o.gain) << ',' << fmt(tms_squeezing_db(o.gain))
        << ',' << fmt(o.sigma_l) << ',' << fmt(s * s / (o.sigma_l * o.sigma_l)) << "\n";
  }
  manifest.write(out_dir);
  return 0;
}

// ---- distill ----------------------------------------------------------------

Eigen::MatrixXd read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::vector<double> vals;
    double v;
    while (row >> v) vals.push_back(v);
    if (vals.empty()) continue;
    if (!rows.empty() && rows.front().size() != vals.size()) {
      throw std::runtime_error("matrix file: ragged rows");
    }
    rows.push_back(std::move(vals));
  }
  if (rows.empty()) throw std::runtime_error("matrix file: empty");
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < rows.front().size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

int run_distill(const std::string& matrix_path) {
  Eigen::MatrixXd a = read_matrix(matrix_path);
  TriorthogonalReport rep = check_triorthogonal(a);
  if (!rep.valid) {
    std::printf("not triorthogonal: %s\n", rep.violation.c_str());
    return 0;
  }
  DistillationResult res = distillation_output_variance(a, 1.0);
  std::printf("triorthogonal (%d,%d,%d); Sigma^2/sigma^2 = %.4g\n", static_cast<int>(a.rows()),
              static_cast<int>(a.cols()), rep.k, res.sigma_sq_out);
  return 0;
}

// ---- reproduce --------------------------------------------------------------

int run_reproduce(const std::string& figure, long trials_override, uint64_t seed,
                  const fs::path& out_dir, RunManifest& manifest) {
  if (figure == "2.8") {
    auto csv = open_csv(out_dir, "fig2.8.csv", "sigma,p_fail_exact,p_fail_asy");
    for (double s = 0.05; s <= 0.6 + 1e-9; s += 0.005) {
      csv << fmt(s) << ',' << fmt(square_failure_probability(s, true)) << ','
          << fmt(square_failure_probability(s, false)) << "\n";
    }
  } else if (figure == "4.6") {
    long trials = trials_override > 0 ? trials_override : 20000;
    struct CaseGrid {
      int id;
      double lo, hi, step;
    };
    for (const CaseGrid& cg : {CaseGrid{1, 0.16, 0.22, 0.005}, CaseGrid{2, 0.075, 0.105, 0.0025},
                               CaseGrid{3, 0.070, 0.096, 0.002}}) {
      std::vector<double> grid = parse_grid(fmt(cg.lo) + ":" + fmt(cg.hi) + ":" + fmt(cg.step));
      for (bool analog : {true, false}) {
        auto res = threshold_scan(cg.id, {3, 5, 7}, grid, trials, seed, analog);
        auto csv = open_csv(out_dir,
                            "fig4.6_case" + std::to_string(cg.id) + (analog ? "" : "_noanalog") +
                                ".csv",
                            "noise,d,p_x,p_x_err");
        for (const auto& pt : res.points) {
          const int ds[3] = {3, 5, 7};
          for (int i = 0; i < 3; ++i) {
            csv << fmt(pt.noise) << ',' << ds[i] << ',' << fmt(pt.per_distance[i].p_x()) << ','
                << fmt(pt.per_distance[i].err_x()) << "\n";
          }
        }
      }
    }
  } else if (figure == "4.7") {
    auto csv = open_csv(out_dir, "fig4.7.csv", "sigma,p_err,p_asy");
    for (double s = 0.05; s <= 0.6 + 1e-9; s += 0.005) {
      csv << fmt(s) << ',' << fmt(p_err(s)) << ',' << fmt(p_err_asymptotic(s)) << "\n";
    }
  } else if (figure == "5.1") {
    auto csv = open_csv(out_dir, "fig5.1.csv", "eta,q_dp,q_idp,q_odp,lb_thermal");
    for (double eta = 0.5; eta <= 1.0 + 1e-9; eta += 0.002) {
      ChannelParams p{std::min(eta, 1.0), 1.0, 1.0};
      csv << fmt(p.eta) << ',' << fmt(q_dp(p)) << ',' << fmt(q_idp(p)) << ',' << fmt(q_odp(p))
          << ',' << fmt(lower_bound_thermal_input(p)) << "\n";
    }
  } else if (figure == "5.2") {
    auto csv = open_csv(out_dir, "fig5.2.csv", "gamma,lb_thermal,lb_correlated,x_star");
    for (double gamma = 0.005; gamma <= 0.4 + 1e-9; gamma += 0.005) {
      ChannelParams p{1.0 - gamma, 1.0, 1.0};
      CorrelatedBound cb = lower_bound_correlated(p);
      csv << fmt(gamma) << ',' << fmt(std::max(0.0, lower_bound_thermal_input(p))) << ','
          << fmt(cb.rate) << ',' << fmt(cb.x_star) << "\n";
    }
  } else if (figure == "5.3") {
    auto csv = open_csv(out_dir, "fig5.3.csv", "n_bar,ic_thermal,rate_correlated");
    ChannelParams base{0.81, 1.0, 1.0};
    for (double nb = 0.05; nb <= 6.0 + 1e-9; nb += 0.05) {
      ChannelParams p = base;
      p.n_bar = nb;
      CorrelatedBound cb = lower_bound_correlated(p);
      csv << fmt(nb) << ',' << fmt(lower_bound_thermal_input(p)) << ',' << fmt(cb.rate) << "\n";
    }
  } else if (figure == "7.2") {
    auto csv = open_csv(out_dir, "fig7.2.csv",
                        "sigma,g_star,squeezing_db,sigma_l_star,g_star_asy,sigma_l_asy");
    for (double s = 0.02; s <= 0.62 + 1e-9; s += 0.005) {
      TmsOptimum o = tms_optimize_gain(s);
      csv << fmt(s) << ',' << fmt(o.gain) << ',' << fmt(tms_squeezing_db(o.gain)) << ','
          << fmt(o.sigma_l) << ',' << fmt(tms_gain_asymptotic(s)) << ','
          << fmt(tms_sigma_l_asymptotic(s)) << "\n";
    }
  } else if (figure == "7.5") {
    auto csv = open_csv(out_dir, "fig7.5.csv", "sigma,s_gkp_db,g_star,qec_gain");
    for (double db : {12.8, 15.0, 20.0, 25.0, 30.0}) {
      double sigma_gkp = NoiseParams::from_gkp_squeezing_db(db).sigma_gkp;
      for (double s = 0.03; s <= 0.62 + 1e-9; s += 0.01) {
        TmsOptimum o = tms_optimize_gain_finite_gkp(s, sigma_gkp);
        csv << fmt(s) << ',' << fmt(db) << ',' << fmt(o.gain) << ','
            << fmt(s * s / (o.sigma_l * o.sigma_l)) << "\n";
      }
    }
  } else {
    std::fprintf(stderr, "unsupported figure id: %s\n", figure.c_str());
    return 2;
  }
  manifest.write(out_dir);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bosonic QEC toolkit: surface-GKP simulation, GKP lattice decoding, "
               "thermal-loss capacity bounds, and oscillator encoding analysis"};
  app.require_subcommand(1);

  std::string out_dir = ".";
  uint64_t seed = 0;
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--seed", seed, "Master seed")->capture_default_str();

  // surface-sim
  auto* sim_cmd = app.add_subcommand("surface-sim", "Monte Carlo logical error rates");
  sim_cmd->fallthrough();
  int sim_d = 3;
  double sim_sigma = 0.0, sim_sigma_gkp = 0.1;
  long sim_trials = 10000;
  bool sim_analog = true, sim_no_analog = false;
  sim_cmd->add_option("--d,--distance", sim_d, "Code distance (odd)")->capture_default_str();
  sim_cmd->add_option("--sigma", sim_sigma, "Circuit noise std dev")->capture_default_str();
  sim_cmd->add_option("--sigma-gkp,--sigma_gkp", sim_sigma_gkp, "GKP peak std dev")
      ->capture_default_str();
  sim_cmd->add_option("--trials", sim_trials, "Monte Carlo trials")->capture_default_str();
  sim_cmd->add_option("--use-analog-info,--use_analog_info", sim_analog,
                      "Use the GKP analog information")
      ->capture_default_str();
  sim_cmd->add_flag("--no-analog", sim_no_analog, "Ignore the GKP analog information");

  // threshold
  auto* thr_cmd = app.add_subcommand("threshold", "Threshold scan over a noise grid");
  thr_cmd->fallthrough();
  std::string thr_case = "I", thr_grid = "0.16:0.22:0.005";
  std::vector<int> thr_d = {3, 5, 7};
  long thr_trials = 20000;
  bool thr_no_analog = false;
  thr_cmd->add_option("--case", thr_case, "Noise case: I, II, or III")->capture_default_str();
  thr_cmd->add_option("--d,--distances", thr_d, "Code distances")->delimiter(',')->capture_default_str();
  thr_cmd->add_option("--grid", thr_grid, "Noise grid a:b:step")->capture_default_str();
  thr_cmd->add_option("--trials", thr_trials, "Trials per point")->capture_default_str();
  thr_cmd->add_flag("--no-analog", thr_no_analog, "Ignore the GKP analog information");

  // gkp-single
  auto* gkp_cmd = app.add_subcommand("gkp-single", "Single-mode GKP failure probabilities");
  gkp_cmd->fallthrough();
  std::string gkp_grid = "0.05:0.6:0.01";
  double gkp_gamma = 0.05;
  gkp_cmd->add_option("--sigma-grid", gkp_grid, "Sigma grid a:b:step")->capture_default_str();
  gkp_cmd->add_option("--gamma", gkp_gamma, "Loss probability for the loss bound")->capture_default_str();

  // capacity
  auto* cap_cmd = app.add_subcommand("capacity", "Thermal-loss channel capacity bounds");
  cap_cmd->fallthrough();
  std::string cap_eta = "0.5:1.0:0.005";
  double cap_nth = 1.0, cap_nbar = 1.0;
  bool cap_unconstrained = false;
  cap_cmd->add_option("--eta", cap_eta, "Transmissivity or grid a:b:step")->capture_default_str();
  cap_cmd->add_option("--n-th", cap_nth, "Environment photon number")->capture_default_str();
  cap_cmd->add_option("--n-bar", cap_nbar, "Mean input photon constraint")->capture_default_str();
  cap_cmd->add_flag("--unconstrained", cap_unconstrained, "No energy constraint");

  // tms
  auto* tms_cmd = app.add_subcommand("tms", "GKP-two-mode-squeezing code sweep");
  tms_cmd->fallthrough();
  std::string tms_grid = "0.05:0.6:0.01";
  double tms_db = std::numeric_limits<double>::infinity();
  tms_cmd->add_option("--sigma-grid", tms_grid, "Input noise grid a:b:step")->capture_default_str();
  tms_cmd->add_option("--sigma-gkp-db", tms_db, "GKP squeezing in dB (default: ideal)");

  // distill
  auto* dis_cmd = app.add_subcommand("distill", "Check a triorthogonal matrix");
  dis_cmd->fallthrough();
  std::string dis_matrix;
  dis_cmd->add_option("--matrix", dis_matrix, "Matrix file (whitespace rows)")->required();

  // reproduce
  auto* rep_cmd = app.add_subcommand("reproduce", "Emit a dataset underlying a supported figure");
  rep_cmd->fallthrough();
  std::string rep_fig;
  long rep_trials = 0;
  rep_cmd->add_option("--figure,figure", rep_fig, "One of 2.8 4.6 4.7 5.1 5.2 5.3 7.2 7.5")->required();
  rep_cmd->add_option("--trials", rep_trials, "Override Monte Carlo trials");

  // Expand "--config FILE" (flat key=value lines) into long options.
  std::vector<std::string> args;
  try {
    for (int i = 1; i < argc; ++i) {
      std::string a = argv[i];
      std::string path;
      if (a == "--config") {
        if (i + 1 >= argc) throw std::invalid_argument("--config needs a file");
        path = argv[++i];
      } else if (a.rfind("--config=", 0) == 0) {
        path = a.substr(9);
      } else {
        args.push_back(a);
        continue;
      }
      std::ifstream cfg(path);
      if (!cfg) throw std::invalid_argument("cannot read config file " + path);
      std::string line;
      while (std::getline(cfg, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
          size_t b = s.find_first_not_of(" \t\r");
          size_t e = s.find_last_not_of(" \t\r");
          return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) args.push_back("--" + key + "=" + value);
      }
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunManifest manifest;
    manifest.master_seed = seed;
    fs::path dir(out_dir);

    if (sim_cmd->parsed()) {
      SurfaceGkpConfig cfg;
      cfg.distance = sim_d;
      cfg.noise.sigma = sim_sigma;
      cfg.noise.sigma_gkp = sim_sigma_gkp;
      cfg.use_analog_info = sim_analog && !sim_no_analog;
      cfg.master_seed = seed;
      cfg.validate();
      manifest.subcommand = "surface-sim";
      manifest.config = {{"d", sim_d},
                         {"sigma", sim_sigma},
                         {"sigma_gkp", sim_sigma_gkp},
                         {"analog", cfg.use_analog_info},
                         {"trials", sim_trials}};
      return run_surface_sim(cfg, sim_trials, dir, manifest);
    }
    if (thr_cmd->parsed()) {
      int cid = case_id_from_string(thr_case);
      std::vector<double> grid = parse_grid(thr_grid);
      manifest.subcommand = "threshold";
      manifest.config = {{"case", thr_case}, {"distances", thr_d},          {"grid", thr_grid},
                         {"trials", thr_trials}, {"analog", !thr_no_analog}};
      return run_threshold(cid, thr_d, grid, thr_trials, seed, !thr_no_analog, dir, manifest);
    }
    if (gkp_cmd->parsed()) {
      manifest.subcommand = "gkp-single";
      manifest.config = {{"sigma_grid", gkp_grid}, {"gamma", gkp_gamma}};
      return run_gkp_single(parse_grid(gkp_grid), gkp_gamma, dir, manifest);
    }
    if (cap_cmd->parsed()) {
      manifest.subcommand = "capacity";
      double nbar = cap_unconstrained ? std::numeric_limits<double>::infinity() : cap_nbar;
      manifest.config = {{"eta", cap_eta}, {"n_th", cap_nth}, {"n_bar", nbar}};
      return run_capacity(parse_grid(cap_eta), cap_nth, nbar, dir, manifest);
    }
    if (tms_cmd->parsed()) {
      manifest.subcommand = "tms";
      manifest.config = {{"sigma_grid", tms_grid}, {"sigma_gkp_db", tms_db}};
      return run_tms(parse_grid(tms_grid), tms_db, dir, manifest);
    }
    if (dis_cmd->parsed()) {
      return run_distill(dis_matrix);
    }
    if (rep_cmd->parsed()) {
      manifest.subcommand = "reproduce";
      manifest.config = {{"figure", rep_fig}, {"trials", rep_trials}};
      return run_reproduce(rep_fig, rep_trials, seed, dir, manifest);
    }
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 3;
  }
  return 0;
}
