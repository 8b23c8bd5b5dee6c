#pragma once

#include "coorbit/embedding.hpp"
#include "coorbit/frame.hpp"
#include "coorbit/io.hpp"

namespace coorbit {

/// Process exit codes shared by the CLI and the experiment reports.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitNumeric = 3,
  kExitAdmissibility = 10,
  kExitEmbeddedness = 11,
  kExitDecay = 12,
  kExitFrame = 13,
  kExitCounterexample = 14,
};

struct ExperimentResult {
  Json report;
  bool pass = false;
  int code = kExitOk; ///< category of the first failing check, kExitOk on pass
};

struct CalderonConfig {
  GroupFamily family = GroupFamily::shearlet(0.5);
  WaveletSpec wavelet;  ///< center and radius are replaced by the family default for bump wavelets
  bool default_center = true;
  FrequencyGrid grid{256, 8.0, false};
  HGridSpec hgrid;
  double r_lo = 0.5, r_hi = 2.0;
  int n_radial = 8, n_angular = 32;
  double min_rel_dist = 0.5;
  int tests = 10;
  double rel_std_tol = kAdmissibleRelStd;
  double parseval_tol = 0.03;
  std::uint64_t seed = 1;
};

/// Calderon constancy over annulus probes and Parseval ratios of random test functions.
ExperimentResult run_calderon(const CalderonConfig& cfg, const SampledField* psi = nullptr);

struct EmbeddednessConfig {
  GroupFamily family = GroupFamily::shearlet(0.5);
  double q = 2.0;
  WeightSpec weight;
  int ell_min = 0, ell_max = 16;
  int levels = 6;
};

ExperimentResult run_embeddedness(const EmbeddednessConfig& cfg);

struct DecayConfig {
  GroupFamily family = GroupFamily::shearlet(0.5);
  WaveletSpec wavelet{WaveletKind::Moment, Vec2(1.0, 0.0), 0.5, 2, 1.0};
  FrequencyGrid grid{256, 8.0, false};
  HGridSpec hgrid;
  MixedNormParams params;      ///< unit weight unless set otherwise
  int t = 6;
  int instances = 20;
  double max_log_scale = 0.25;  ///< chart offsets of the dilations
  double max_shear = 0.25;
  int max_shift_cells = 4;      ///< translations are whole x-grid cells
  double cap = 10.0;
  bool contrast = true;         ///< plain Gaussian against moment wavelets (diagonal group)
  int contrast_instances = 5;
  WeightSpec contrast_weight;
  std::uint64_t seed = 1;

  DecayConfig();
};

/// Spread of mixed_norm / (|f|_{t,t} |psi|_{t,t}) over dilated and translated copies of psi.
ExperimentResult run_decay_suite(const DecayConfig& cfg, const SampledField* psi = nullptr);

struct FrameConfig {
  GroupFamily family = GroupFamily::shearlet(0.5);
  FrequencyGrid grid{128, 4.0, false};
  SamplingSetSpec sampling;     ///< defaults to the twice-refined set on the window below
  double p = 2.0, q = 2.0;
  WeightSpec weight;
  NeighborhoodU u_start;
  double osc_threshold = 0.5;   ///< safety factor 2 below the target 1
  int osc_max_steps = 16;
  HGridSpec hgrid;              ///< transform grid of the continuous norms
  double mask_r_lo = 0.4, mask_r_hi = 2.5, mask_min_rel_dist = 0.5;
  int tests = 10;
  double spread_cap = 10.0;
  int bound_iterations = 20;
  int max_iter = 200;
  double tol = 1e-4;
  double target_error = 1e-3;
  int probes = 2000;
  std::uint64_t seed = 1;

  FrameConfig();
};

/// Density report, U search, norm equivalence and Richardson reconstruction on one sampling set.
ExperimentResult run_frame(const FrameConfig& cfg, const SampledField* psi = nullptr);

struct CounterexampleConfig {
  double xi_max = 4.0;
  double r1 = 0.5, r2 = 2.0;
  std::vector<int> sizes{128, 256, 512};
  std::vector<double> scales{0.5, 1.0};
  HGridSpec hgrid;              ///< Parseval grid for the scalar group
  double identity_tol = 1e-10;
  double parseval_tol = 0.01;
  double cauchy_tol = 0.01;    ///< last increment of N_ff on the largest grid, increments non-increasing
  double min_growth = 0.1;      ///< c2 relative to the converged L1 norm of W_f f
  double consistency = 0.25;    ///< max/min of c2 across sizes at most 1 + consistency

  CounterexampleConfig();
};

/// Truncated L1 norms N(R) of a space slice over the disks |x| <= R.
std::vector<double> truncated_l1(const cplx* slice, const FrequencyGrid& grid, const std::vector<double>& radii);

/// Least-squares fit N(R) = c1 + c2 log R.
std::pair<double, double> log_fit(const std::vector<double>& radii, const std::vector<double>& values);

/// Scalar group with f^ radial and g^ = sign(xi_1) f^: W_g g = W_f f, W_f f in L1, W_f g not.
ExperimentResult run_counterexample(const CounterexampleConfig& cfg);

} // namespace coorbit
