#include "coorbit/experiments.hpp"

#include "coorbit/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace coorbit {

namespace {

Json verdict_json(const TruncationVerdict& v) {
  return {{"verdict", v.verdict == Verdict::Converged ? "converged" : "diverged"},
          {"estimate", v.estimate},
          {"growth_exponent", v.growth_exponent}};
}

Json sampling_json(const SamplingSetSpec& s) {
  return {{"a_ratio", s.a_ratio},
          {"b_step", s.b_step},
          {"beta", s.beta},
          {"window",
           {{"a_min", s.window.a_min},
            {"a_max", s.window.a_max},
            {"shear_max", s.window.shear_max},
            {"x_half_width", s.window.x_half_width}}}};
}

Json u_json(const NeighborhoodU& U) { return {{"x_radius", U.x_radius}, {"d1", U.d1}, {"d2", U.d2}}; }

void fail(ExperimentResult& r, int code) {
  if (r.pass) r.code = code;
  r.pass = false;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// random element near the identity: chart offsets within `scale`, shear within `shear`
DilationParams near_identity(const GroupFamily& fam, double scale, double shear, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const double c1 = scale * U(rng);
  switch (fam.tag) {
  case FamilyTag::Similitude: return chart_element(fam, Vec2(c1, scale * U(rng)));
  case FamilyTag::Diagonal: return chart_element(fam, Vec2(c1, scale * U(rng)));
  case FamilyTag::Shearlet: return chart_element(fam, Vec2(c1, shear * U(rng)));
  case FamilyTag::ScalarReducible: return chart_element(fam, Vec2(c1, 0.0));
  }
  return identity(fam);
}

SampledField gaussian(const FrequencyGrid& grid) {
  return sample_frequency(grid, [](const Vec2& xi) { return cplx(std::exp(-M_PI * xi.squaredNorm())); });
}

} // namespace

ExperimentResult run_calderon(const CalderonConfig& cfg, const SampledField* given) {
  WaveletSpec ws = cfg.wavelet;
  if (ws.kind == WaveletKind::Bump && cfg.default_center) {
    const WaveletSpec d = default_bump(cfg.family);
    ws.center = d.center;
    ws.radius = d.radius;
  }
  const SampledField psi = given ? *given : make_wavelet(cfg.family, ws, cfg.grid);
  const HGrid hg = make_hgrid(cfg.family, cfg.hgrid);
  const auto probes = annulus_probes(cfg.family, cfg.r_lo, cfg.r_hi, cfg.n_radial, cfg.n_angular, cfg.min_rel_dist);
  const CalderonStats cs = calderon_constant(psi, hg, probes);

  std::mt19937_64 rng(cfg.seed);
  Json ratios = Json::array();
  double max_dev = 0.0;
  for (int i = 0; i < cfg.tests; ++i) {
    const SampledField f = random_test_function(cfg.family, psi, rng);
    const double r = parseval_ratio(f, psi, hg);
    ratios.push_back(r);
    max_dev = std::max(max_dev, std::abs(r / cs.mean - 1.0));
  }

  ExperimentResult res;
  res.pass = true;
  const bool admissible = cs.rel_std < cfg.rel_std_tol;
  if (!admissible || max_dev >= cfg.parseval_tol) fail(res, kExitAdmissibility);
  res.report = {
      {"command", "calderon"},
      {"config",
       {{"family", family_to_json(cfg.family)},
        {"wavelet", given ? Json("from file") : wavelet_spec_to_json(ws)},
        {"grid", grid_to_json(psi.grid)},
        {"hgrid", hgrid_spec_to_json(cfg.hgrid)},
        {"probes",
         {{"r_lo", cfg.r_lo},
          {"r_hi", cfg.r_hi},
          {"n_radial", cfg.n_radial},
          {"n_angular", cfg.n_angular},
          {"min_rel_dist", cfg.min_rel_dist}}},
        {"tests", cfg.tests},
        {"rel_std_tol", cfg.rel_std_tol},
        {"parseval_tol", cfg.parseval_tol},
        {"seed", cfg.seed}}},
      {"calderon", {{"mean", cs.mean}, {"rel_std", cs.rel_std}, {"min", cs.min}, {"max", cs.max}}},
      {"parseval_ratios", ratios},
      {"parseval_max_rel_dev", max_dev},
      {"verdict", admissible ? "admissible" : "not admissible"},
      {"pass", res.pass}};
  return res;
}

ExperimentResult run_embeddedness(const EmbeddednessConfig& cfg) {
  const EmbeddednessReport rep =
      embeddedness_verdict(cfg.family, cfg.q, cfg.weight, cfg.ell_min, cfg.ell_max, cfg.levels);
  Json per = Json::array();
  for (int e = 0; e <= cfg.ell_max - cfg.ell_min; ++e)
    per.push_back({{"ell", cfg.ell_min + e},
                   {"first", verdict_json(rep.first[e])},
                   {"second", verdict_json(rep.second[e])},
                   {"first_table", rep.table.first[e]},
                   {"second_table", rep.table.second[e]}});
  ExperimentResult res;
  res.pass = rep.minimal_ell.has_value();
  if (!res.pass) res.code = kExitEmbeddedness;
  res.report = {{"command", "check-embeddedness"},
                {"config",
                 {{"family", family_to_json(cfg.family)},
                  {"q", exponent_to_json(cfg.q)},
                  {"weight", weight_to_json(cfg.weight)},
                  {"ell_min", cfg.ell_min},
                  {"ell_max", cfg.ell_max},
                  {"levels", cfg.levels},
                  {"cauchy_tol", 0.01}}},
                {"per_ell", per},
                {"minimal_ell", rep.minimal_ell ? Json(*rep.minimal_ell) : Json(nullptr)},
                {"pass", res.pass}};
  return res;
}

DecayConfig::DecayConfig() {
  params.weight.unit = true;
  contrast_weight.t = 2.0;
  contrast_weight.u = 2.0;
}

ExperimentResult run_decay_suite(const DecayConfig& cfg, const SampledField* given) {
  if (cfg.instances < 2) throw InvalidArgument("decay suite: need at least two instances");
  const SampledField psi = given ? *given : make_wavelet(cfg.family, cfg.wavelet, cfg.grid);
  const HGrid hg = make_hgrid(cfg.family, cfg.hgrid);
  const double dx = psi.grid.x_spacing();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> cell(-cfg.max_shift_cells, cfg.max_shift_cells);
  Json inst = Json::array();
  double lo = INFINITY, hi = 0.0;
  for (int i = 0; i < cfg.instances; ++i) {
    const DilationParams h = near_identity(cfg.family, cfg.max_log_scale, cfg.max_shear, rng);
    const int k1 = cell(rng), k2 = cell(rng);
    const AffinePoint z{Vec2(k1 * dx, k2 * dx), h};
    const SampledField f = apply_representation(psi, z);
    const double r = decay_ratio(f, psi, hg, cfg.params, cfg.t);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    inst.push_back({{"x", {z.x(0), z.x(1)}}, {"a", h.a}, {"b", h.b}, {"ratio", r}});
  }
  const double spread = hi / lo;
  ExperimentResult res;
  res.pass = true;
  if (!(spread <= cfg.cap)) fail(res, kExitDecay);

  Json contrast = nullptr;
  if (cfg.contrast) {
    const GroupFamily diag = GroupFamily::diagonal();
    const SampledField dpsi = make_wavelet(diag, cfg.wavelet, cfg.grid);
    const HGrid dhg = make_hgrid(diag, cfg.hgrid);
    MixedNormParams P = cfg.params;
    P.weight = cfg.contrast_weight;
    std::vector<double> base;
    for (int i = 0; i < cfg.contrast_instances; ++i) {
      const DilationParams h = near_identity(diag, cfg.max_log_scale, cfg.max_shear, rng);
      const AffinePoint z{Vec2(cell(rng) * dx, cell(rng) * dx), h};
      base.push_back(decay_ratio(apply_representation(dpsi, z), dpsi, dhg, P, cfg.t));
    }
    const double g = decay_ratio(gaussian(cfg.grid), dpsi, dhg, P, cfg.t);
    const double rel = g / median(base);
    const bool flagged = rel > cfg.cap;
    if (!flagged) fail(res, kExitDecay);
    contrast = {{"family", family_to_json(diag)},
                {"weight", weight_to_json(cfg.contrast_weight)},
                {"baseline_ratios", base},
                {"gaussian_ratio", g},
                {"gaussian_over_baseline_median", rel},
                {"flagged", flagged}};
  }
  res.report = {{"command", "verify-decay"},
                {"config",
                 {{"family", family_to_json(cfg.family)},
                  {"wavelet", given ? Json("from file") : wavelet_spec_to_json(cfg.wavelet)},
                  {"grid", grid_to_json(psi.grid)},
                  {"hgrid", hgrid_spec_to_json(cfg.hgrid)},
                  {"p", exponent_to_json(cfg.params.p)},
                  {"q", exponent_to_json(cfg.params.q)},
                  {"weight", weight_to_json(cfg.params.weight)},
                  {"t", cfg.t},
                  {"instances", cfg.instances},
                  {"max_log_scale", cfg.max_log_scale},
                  {"max_shear", cfg.max_shear},
                  {"max_shift_cells", cfg.max_shift_cells},
                  {"cap", cfg.cap},
                  {"seed", cfg.seed}}},
                {"instances", inst},
                {"ratio_min", lo},
                {"ratio_max", hi},
                {"spread", spread},
                {"contrast", contrast},
                {"pass", res.pass}};
  return res;
}

FrameConfig::FrameConfig() {
  sampling.window = {0.2, 5.0, 4.0, 7.5};
  sampling = sampling.refined(2);
  hgrid.a_min = 0.2;
  hgrid.a_max = 5.0;
  hgrid.n_a = 17;
  hgrid.n_b = 17;
  hgrid.n_angle = 24;
}

ExperimentResult run_frame(const FrameConfig& cfg, const SampledField* given) {
  const SampledField psi = given ? *given : make_wavelet(cfg.family, default_bump(cfg.family), cfg.grid);
  const FrequencyGrid& grid = psi.grid;
  const SamplingSet Z = build_sampling_set(cfg.family, cfg.sampling, cfg.probes, cfg.seed);
  const HGrid hg = make_hgrid(cfg.family, cfg.hgrid);
  ExperimentResult res;
  res.pass = true;

  const USearch us =
      search_u(psi, hg, cfg.u_start, cfg.weight, cfg.p, cfg.q, cfg.osc_threshold, cfg.osc_max_steps);
  Json hist = Json::array();
  for (const auto& [U, v] : us.history) hist.push_back({{"u", u_json(U)}, {"value", v}});
  if (!us.found) fail(res, kExitFrame);

  std::mt19937_64 rng(cfg.seed);
  MixedNormParams P{cfg.p, cfg.q, cfg.weight};
  Json ratios = Json::array();
  double lo = INFINITY, hi = 0.0;
  for (int i = 0; i < cfg.tests; ++i) {
    const SampledField f = random_test_function(cfg.family, psi, rng);
    const double r = discrete_norm(analyze_at(f, psi, Z), Z, cfg.p, cfg.q, cfg.weight) / mixed_norm(f, psi, hg, P);
    ratios.push_back(r);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  const double spread = hi / lo;
  if (!(spread <= cfg.spread_cap)) fail(res, kExitFrame);

  const auto mask = orbit_mask(cfg.family, grid, cfg.mask_r_lo, cfg.mask_r_hi, cfg.mask_min_rel_dist);
  const FrameBounds fb = frame_bounds(psi, Z, mask, cfg.bound_iterations, cfg.seed);
  Json rec = nullptr;
  if (fb.A > 0.0) {
    SampledField f = random_test_function(cfg.family, psi, rng);
    apply_mask(f, mask);
    const Reconstruction r = frame_reconstruct(f, psi, Z, mask, cfg.max_iter, cfg.tol, fb);
    rec = {{"rel_error", r.rel_error},
           {"iterations", r.iterations},
           {"converged", r.converged},
           {"lambda", 2.0 / (fb.A + fb.B)},
           {"history", r.history}};
    if (!(r.rel_error < cfg.target_error)) fail(res, kExitFrame);
  }
  if (fb.ill_conditioned) fail(res, kExitFrame);

  res.report = {{"command", "frame-test"},
                {"config",
                 {{"family", family_to_json(cfg.family)},
                  {"wavelet", given ? Json("from file") : wavelet_spec_to_json(default_bump(cfg.family))},
                  {"grid", grid_to_json(grid)},
                  {"sampling", sampling_json(cfg.sampling)},
                  {"p", exponent_to_json(cfg.p)},
                  {"q", exponent_to_json(cfg.q)},
                  {"weight", weight_to_json(cfg.weight)},
                  {"u_start", u_json(cfg.u_start)},
                  {"osc_threshold", cfg.osc_threshold},
                  {"hgrid", hgrid_spec_to_json(cfg.hgrid)},
                  {"mask", {{"r_lo", cfg.mask_r_lo}, {"r_hi", cfg.mask_r_hi}, {"min_rel_dist", cfg.mask_min_rel_dist}}},
                  {"tests", cfg.tests},
                  {"max_iter", cfg.max_iter},
                  {"tol", cfg.tol},
                  {"target_error", cfg.target_error},
                  {"seed", cfg.seed}}},
                {"sampling_set",
                 {{"h_nodes", Z.h_nodes.size()},
                  {"points", Z.size()},
                  {"snap_offset", snap_offset(Z, grid)},
                  {"density",
                   {{"covered", Z.density.covered}, {"smallest_u", u_json(Z.density.smallest)}, {"probes", Z.density.probes}}}}},
                {"oscillation",
                 {{"found", us.found}, {"u", u_json(us.u)}, {"value", us.value}, {"history", hist},
                  {"dense_for_u", Z.dense_for(us.u)}}},
                {"equivalence", {{"ratios", ratios}, {"min", lo}, {"max", hi}, {"spread", spread}}},
                {"frame_bounds", {{"A", fb.A}, {"B", fb.B}, {"ill_conditioned", fb.ill_conditioned}}},
                {"reconstruction", rec},
                {"pass", res.pass}};
  return res;
}

CounterexampleConfig::CounterexampleConfig() {
  hgrid.a_min = 1.0 / 16.0;
  hgrid.a_max = 16.0;
  hgrid.n_a = 33;
}

std::vector<double> truncated_l1(const cplx* slice, const FrequencyGrid& grid, const std::vector<double>& radii) {
  std::vector<double> out(radii.size(), 0.0);
  const int n = grid.n;
  const double dx2 = grid.x_spacing() * grid.x_spacing();
  for (int m1 = 0; m1 < n; ++m1)
    for (int m2 = 0; m2 < n; ++m2) {
      const double r = grid.x_point(m1, m2).norm();
      const double v = std::abs(slice[std::size_t(m1) * n + m2]) * dx2;
      for (std::size_t i = 0; i < radii.size(); ++i)
        if (r <= radii[i]) out[i] += v;
    }
  return out;
}

std::pair<double, double> log_fit(const std::vector<double>& radii, const std::vector<double>& values) {
  if (radii.size() != values.size() || radii.size() < 2) throw InvalidArgument("log_fit: need two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double x = std::log(radii[i]);
    sx += x;
    sy += values[i];
    sxx += x * x;
    sxy += x * values[i];
  }
  const double c2 = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {(sy - c2 * sx) / n, c2};
}

ExperimentResult run_counterexample(const CounterexampleConfig& cfg) {
  if (cfg.sizes.empty() || cfg.scales.empty()) throw InvalidArgument("counterexample: empty size or scale list");
  for (int n : cfg.sizes)
    if (n < 128) throw InvalidArgument("counterexample: n < 128 cannot resolve the sign discontinuity");
  for (double a : cfg.scales)
    if (!(a > 0.0)) throw InvalidArgument("counterexample: scales must be positive");
  const GroupFamily fam = GroupFamily::scalar();
  const AnalyzeOptions exact{Resampling::Exact};
  std::vector<DilationParams> nodes;
  for (double a : cfg.scales) nodes.push_back({fam, a, 0.0});
  const HGrid slices = custom_hgrid(fam, nodes, std::vector<double>(nodes.size(), 1.0));
  const HGrid pgrid = make_hgrid(fam, cfg.hgrid);

  ExperimentResult res;
  res.pass = true;
  Json per_size = Json::array();
  // c2 of W_f g per scale, across sizes
  std::vector<std::vector<double>> growth(cfg.scales.size());
  const int largest = *std::max_element(cfg.sizes.begin(), cfg.sizes.end());
  for (int n : cfg.sizes) {
    const FrequencyGrid grid{n, cfg.xi_max, true};
    const auto [f, g] = counterexample_pair(grid, cfg.r1, cfg.r2);
    const TransformArray Tff = analyze(f, f, slices, exact);
    const TransformArray Tgg = analyze(g, g, slices, exact);
    const TransformArray Tfg = analyze(g, f, slices, exact);
    double diff = 0.0;
    for (std::size_t k = 0; k < Tff.values.size(); ++k) diff = std::max(diff, std::abs(Tgg.values[k] - Tff.values[k]));
    if (!(diff < cfg.identity_tol)) fail(res, kExitCounterexample);
    const double pf = parseval_ratio(f, f, pgrid, exact), pg = parseval_ratio(g, g, pgrid, exact);
    const double pdev = std::abs(pg / pf - 1.0);
    if (!(pdev < cfg.parseval_tol)) fail(res, kExitCounterexample);

    std::vector<double> radii;
    const double half = 0.5 * n * grid.x_spacing();
    for (double R = 1.0; R <= half * (1 + 1e-12); R *= 2.0) radii.push_back(R);
    Json per_scale = Json::array();
    for (std::size_t j = 0; j < cfg.scales.size(); ++j) {
      const auto nff = truncated_l1(Tff.slice(j), grid, radii);
      const auto nfg = truncated_l1(Tfg.slice(j), grid, radii);
      // fit beyond the core R = 1
      const std::vector<double> rr(radii.begin() + 1, radii.end());
      const auto [a_ff, c_ff] = log_fit(rr, std::vector<double>(nff.begin() + 1, nff.end()));
      const auto [a_fg, c_fg] = log_fit(rr, std::vector<double>(nfg.begin() + 1, nfg.end()));
      const std::size_t L = nff.size();
      const double inc_ff = (nff[L - 1] - nff[L - 2]) / nff[L - 1];
      const double inc_fg = (nfg[L - 1] - nfg[L - 2]) / nfg[L - 1];
      const bool shrinking = L < 3 || (nff[L - 1] - nff[L - 2] <= nff[L - 2] - nff[L - 3]);
      const bool cauchy = std::abs(inc_ff) < cfg.cauchy_tol && shrinking;
      const double rel_growth = c_fg / nff.back();
      growth[j].push_back(c_fg);
      if (!(rel_growth > cfg.min_growth)) fail(res, kExitCounterexample);
      if (n == largest && !cauchy) fail(res, kExitCounterexample);
      per_scale.push_back({{"scale", cfg.scales[j]},
                           {"radii", radii},
                           {"N_ff", nff},
                           {"N_fg", nfg},
                           {"fit_ff", {{"c1", a_ff}, {"c2", c_ff}}},
                           {"fit_fg", {{"c1", a_fg}, {"c2", c_fg}}},
                           {"fg_growth_relative", rel_growth},
                           {"ff_last_increment", inc_ff},
                           {"fg_last_increment", inc_fg},
                           {"ff_increments_shrinking", shrinking},
                           {"ff_cauchy", cauchy}});
    }
    per_size.push_back({{"n", n},
                        {"max_identity_diff", diff},
                        {"parseval_f", pf},
                        {"parseval_g", pg},
                        {"parseval_rel_diff", pdev},
                        {"scales", per_scale}});
  }
  Json consistency = Json::array();
  for (std::size_t j = 0; j < cfg.scales.size(); ++j) {
    const auto [mn, mx] = std::minmax_element(growth[j].begin(), growth[j].end());
    const double ratio = *mn > 0.0 ? *mx / *mn : INFINITY;
    if (!(ratio <= 1.0 + cfg.consistency)) fail(res, kExitCounterexample);
    consistency.push_back({{"scale", cfg.scales[j]}, {"c2", growth[j]}, {"max_over_min", ratio}});
  }
  res.report = {{"command", "counterexample"},
                {"config",
                 {{"family", family_to_json(fam)},
                  {"xi_max", cfg.xi_max},
                  {"cell_centered", true},
                  {"r1", cfg.r1},
                  {"r2", cfg.r2},
                  {"sizes", cfg.sizes},
                  {"scales", cfg.scales},
                  {"hgrid", hgrid_spec_to_json(cfg.hgrid)},
                  {"resampling", "exact"},
                  {"identity_tol", cfg.identity_tol},
                  {"parseval_tol", cfg.parseval_tol},
                  {"cauchy_tol", cfg.cauchy_tol},
                  {"min_growth", cfg.min_growth},
                  {"consistency", cfg.consistency}}},
                {"sizes", per_size},
                {"growth_consistency", consistency},
                {"pass", res.pass}};
  return res;
}

} // namespace coorbit
