#include "coorbit/experiments.hpp"
#include "oracles.hpp"

#include "CLI11.hpp"

#include <Eigen/LU>

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>

using namespace coorbit;
using testsupport::uniform;

namespace {

// criterion 1
constexpr int kGroupChecks = 1000;
constexpr double kGroupTol = 1e-12;
constexpr double kHaarTol = 1e-3;
// criterion 2
constexpr int kDistPoints = 1000;
constexpr double kDistTol = 1e-6;
constexpr int kAPoints = 10000;
// criterion 4
constexpr double kEnvelopeChange = 0.2;
constexpr double kSlopeTol = 0.2;
// criterion 9
constexpr int kWeightPoints = 1000;
constexpr double kWeightTol = 1e-10;
constexpr int kTranslationTrials = 10;
constexpr double kQuadratureSlack = 1e-3;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void add(Outcome& o, const std::string& s) { o.detail += (o.detail.empty() ? "" : " ") + s; }

std::vector<GroupFamily> criterion_families() {
  return {GroupFamily::similitude(), GroupFamily::diagonal(), GroupFamily::shearlet(0.5)};
}

Outcome group_algebra() {
  Outcome o;
  int bad = 0;
  double worst = 0.0;
  for (const auto& fam : testsupport::all_families()) {
    for (int i = 0; i < kGroupChecks; ++i) {
      const auto h1 = testsupport::random_element(fam), h2 = testsupport::random_element(fam),
                 h3 = testsupport::random_element(fam);
      const double e = std::max({testsupport::mat_err(to_matrix(h1), testsupport::oracle_matrix(h1)),
                                 testsupport::mat_err(to_matrix(compose(h1, h2)),
                                                      testsupport::oracle_matrix(h1) * testsupport::oracle_matrix(h2)),
                                 testsupport::mat_err(to_matrix(invert(h1)), testsupport::oracle_matrix(h1).inverse()),
                                 testsupport::mat_err(to_matrix(compose(h1, invert(h1))), Mat2::Identity()),
                                 testsupport::mat_err(to_matrix(compose(compose(h1, h2), h3)),
                                                      to_matrix(compose(h1, compose(h2, h3)))),
                                 testsupport::rel_diff(determinant(h1), testsupport::oracle_matrix(h1).determinant())});
      worst = std::max(worst, e);
      if (!(e < kGroupTol)) ++bad;
    }
  }
  add(o, "matrix_checks=" + std::to_string(4 * kGroupChecks * 5) + " failures=" + std::to_string(bad) +
             fmt(" worst=%.2e", worst));
  if (bad) o.pass = false;

  double haar_worst = 0.0;
  for (const auto& fam : testsupport::all_families()) {
    const bool scalar = fam.tag == FamilyTag::ScalarReducible, diag = fam.tag == FamilyTag::Diagonal;
    const double b0 = scalar ? 0.0 : (diag ? 1.0 : 0.5);
    auto F = [&](const DilationParams& h) { return testsupport::chart_bump(h, 1.0, b0, 0.6, scalar ? 1.0 : 0.5); };
    const ChartBox box{std::exp(-3.0), std::exp(3.0), -10.0, 10.0};
    const int na = 600, nb = scalar ? 1 : 1500;
    const double ref = integrate_haar(fam, F, box, na, nb);
    for (int k = 0; k < 3; ++k) {
      DilationParams h0{fam, std::exp(uniform(-0.5, 0.5)), 0.0};
      if (fam.tag == FamilyTag::Similitude) h0 = {fam, uniform(0.7, 1.4), uniform(-0.3, 0.3)};
      else if (diag) h0.b = std::exp(uniform(-0.3, 0.3));
      else if (!scalar) h0.b = uniform(-0.3, 0.3);
      auto G = [&](const DilationParams& h) { return F(compose(h0, h)); };
      haar_worst = std::max(haar_worst, testsupport::rel_diff(integrate_haar(fam, G, box, na, nb), ref));
    }
  }
  add(o, fmt("haar_rel_dev=%.2e", haar_worst));
  if (!(haar_worst < kHaarTol)) o.pass = false;
  return o;
}

Outcome orbit_geometry() {
  Outcome o;
  double dist_worst = 0.0, a_min = INFINITY, a_max = 0.0, r_min = INFINITY, r_max = 0.0;
  for (const auto& fam : testsupport::orbit_families()) {
    for (int i = 0; i < kDistPoints; ++i) {
      const Vec2 xi(uniform(-1, 1), uniform(-1, 1));
      dist_worst = std::max(dist_worst, std::abs(dist_complement(fam, xi) - testsupport::brute_force_dist(fam, xi)));
    }
    for (int i = 0; i < kAPoints; ++i) {
      const Vec2 xi = testsupport::random_orbit_point(fam) * std::exp2(uniform(-6, 6));
      const double A = aux_A(fam, xi), r = aux_A_closed(fam, xi) / A;
      a_min = std::min(a_min, A);
      a_max = std::max(a_max, A);
      r_min = std::min(r_min, r);
      r_max = std::max(r_max, r);
    }
  }
  add(o, fmt("dist_max_err=%.2e", dist_worst) + fmt(" A_range=[%.3e,", a_min) + fmt("%.6f]", a_max) +
             fmt(" closed_ratio=[%.3f,", r_min) + fmt("%.3f]", r_max));
  o.pass = dist_worst < kDistTol && a_min > 0.0 && a_max <= 1.0 && r_min >= 0.5 && r_max <= 2.0;
  return o;
}

Outcome admissibility() {
  Outcome o;
  double worst_std = 0.0, worst_dev = 0.0;
  for (const auto& fam : criterion_families()) {
    for (bool moment : {false, true}) {
      CalderonConfig cfg;
      cfg.family = fam;
      if (moment) cfg.wavelet = {WaveletKind::Moment, Vec2(1.0, 0.0), 0.5, 2, 1.0};
      const ExperimentResult r = run_calderon(cfg);
      worst_std = std::max(worst_std, r.report["calderon"]["rel_std"].get<double>());
      worst_dev = std::max(worst_dev, r.report["parseval_max_rel_dev"].get<double>());
      if (!r.pass) {
        o.pass = false;
        add(o, fam.name() + (moment ? "/moment" : "/bump") + ":fail");
      }
    }
  }
  add(o, fmt("max_rel_std=%.4f", worst_std) + fmt(" max_parseval_dev=%.4f", worst_dev));
  return o;
}

Outcome envelope() {
  Outcome o;
  double worst_change = 0.0, worst_slope = 0.0;
  for (const auto& fam : criterion_families()) {
    // vanishing order of the orbit polynomial at the complement
    const int k = fam.tag == FamilyTag::Similitude ? 2 : 1;
    for (int s = 1; s <= 3; ++s) {
      const WaveletSpec ws{WaveletKind::Moment, Vec2(1.0, 0.0), 0.5, s, 1.0};
      const double c1 = envelope_constant(moment_wavelet(fam, ws, {128, 6.0, false}), fam, s);
      const double c2 = envelope_constant(moment_wavelet(fam, ws, {256, 6.0, false}), fam, s);
      const double change = std::isfinite(c1) && std::isfinite(c2) ? std::abs(c2 / c1 - 1.0) : INFINITY;
      const MomentSlope m = moment_slope(moment_wavelet(fam, ws, {128, 4.0, false}), fam);
      const double dev = std::abs(m.slope - double(k * s));
      worst_change = std::max(worst_change, change);
      worst_slope = std::max(worst_slope, dev);
    }
  }
  add(o, fmt("max_refinement_change=%.4f", worst_change) + fmt(" max_slope_dev=%.4f", worst_slope));
  o.pass = worst_change < kEnvelopeChange && worst_slope <= kSlopeTol;
  return o;
}

Outcome decay() {
  DecayConfig cfg;
  cfg.contrast = false;
  const ExperimentResult r = run_decay_suite(cfg);
  Outcome o;
  o.pass = r.pass;
  add(o, "instances=" + std::to_string(cfg.instances) + fmt(" spread=%.3f", r.report["spread"].get<double>()) +
             fmt(" cap=%.0f", cfg.cap));
  return o;
}

Outcome embeddedness() {
  Outcome o;
  for (const auto& fam : testsupport::orbit_families()) {
    for (double q : {1.0, 2.0}) {
      const EmbeddednessReport rep = embeddedness_verdict(fam, q, WeightSpec{}, 0, 16, 6);
      add(o, fam.name() + "/q" + std::to_string(int(q)) + ":ell=" +
                 (rep.minimal_ell ? std::to_string(*rep.minimal_ell) : std::string("none")));
      if (!rep.minimal_ell) o.pass = false;
      if (fam.tag == FamilyTag::Similitude) {
        const bool diverged = rep.second[0].verdict == Verdict::Diverged;
        add(o, std::string("(ii)@0:") + (diverged ? "diverged" : "converged"));
        if (!diverged) o.pass = false;
      }
    }
  }
  return o;
}

Outcome frame() {
  const ExperimentResult r = run_frame(FrameConfig{});
  const Json& j = r.report;
  Outcome o;
  o.pass = r.pass;
  add(o, fmt("osc=%.3f", j["oscillation"]["value"].get<double>()) +
             fmt(" equivalence_spread=%.3f", j["equivalence"]["spread"].get<double>()) +
             fmt(" A=%.2f", j["frame_bounds"]["A"].get<double>()) + fmt(" B=%.2f", j["frame_bounds"]["B"].get<double>()));
  double worst = 0.0;
  int iters = 0;
  for (const auto& rec : j["reconstruction"].is_array() ? j["reconstruction"] : Json::array({j["reconstruction"]})) {
    worst = std::max(worst, rec["rel_error"].get<double>());
    iters = std::max(iters, rec["iterations"].get<int>());
  }
  add(o, fmt("rel_error=%.2e", worst) + " iterations=" + std::to_string(iters));
  return o;
}

Outcome counterexample() {
  const ExperimentResult r = run_counterexample(CounterexampleConfig{});
  Outcome o;
  o.pass = r.pass;
  double diff = 0.0;
  for (const auto& s : r.report["sizes"]) diff = std::max(diff, s["max_identity_diff"].get<double>());
  add(o, fmt("identity_diff=%.1e", diff));
  const Json& last = r.report["sizes"].back();
  for (const auto& sc : last["scales"])
    add(o, fmt("a=%.2g:", sc["scale"].get<double>()) + fmt("ff_inc=%.1e", sc["ff_last_increment"].get<double>()) +
               fmt(",fg_c2=%.3f", sc["fit_fg"]["c2"].get<double>()));
  for (const auto& c : r.report["growth_consistency"])
    add(o, fmt("c2_max/min(a=%.2g)=", c["scale"].get<double>()) + fmt("%.3f", c["max_over_min"].get<double>()));
  return o;
}

WeightSpec random_weight(const GroupFamily& fam) {
  WeightSpec w;
  w.s = uniform(0, 2);
  w.u = uniform(0, 2);
  w.t = uniform(0, 2);
  if (fam.tag == FamilyTag::Shearlet && uniform(0, 1) < 0.5) {
    w.shearlet_literature = true;
    w.r1 = uniform(0, 2);
    w.r2 = uniform(0, 2);
  }
  return w;
}

Outcome control_weights() {
  Outcome o;
  double worst = 0.0, vmin = INFINITY;
  for (const auto& fam : testsupport::all_families()) {
    for (int i = 0; i < kWeightPoints; ++i) {
      const WeightSpec w = random_weight(fam);
      const double p = uniform(1, 4), q = uniform(1, 4);
      const AffinePoint z{Vec2(uniform(-4, 4), uniform(-4, 4)), testsupport::random_element(fam)};
      const AffinePoint zi = affine_invert(z);
      const double v = symmetric_control_weight(w, p, q, z.x, z.h);
      const double vi = symmetric_control_weight(w, p, q, zi.x, zi.h);
      worst = std::max(worst, testsupport::rel_diff(v, vi / modular_G(z.x, z.h)));
      vmin = std::min(vmin, v);
    }
  }
  add(o, fmt("symmetry_rel_err=%.2e", worst) + fmt(" v_min=%.4f", vmin));
  if (!(worst < kWeightTol && vmin >= 1.0)) o.pass = false;

  const auto fams = criterion_families();
  double worst_ratio = 0.0;
  WeightSpec w;
  w.s = 1;
  w.u = 1;
  for (int trial = 0; trial < kTranslationTrials; ++trial) {
    const GroupFamily fam = fams[trial % fams.size()];
    HGridSpec spec;
    spec.n_a = 25;
    spec.n_b = 25;
    spec.n_angle = 32;
    const HGrid hg = make_hgrid(fam, spec);
    const XQuadrature xq{6.0, 49};
    GroupWeight v = [&](const AffinePoint& z) { return symmetric_weight_eval(w, z.x, z.h); };
    const GroupFunction F = testsupport::random_group_gaussian();
    DilationParams h{fam, testsupport::random_sign() * std::exp(uniform(-0.5, 0.5)), uniform(-0.5, 0.5)};
    if (fam.tag == FamilyTag::Diagonal) h.b = testsupport::random_sign() * std::exp(uniform(-0.5, 0.5));
    const AffinePoint z{Vec2(uniform(-1, 1), uniform(-1, 1)), h};
    const double nF = function_mixed_norm(F, v, 2, 2, hg, xq);
    const double nR = function_mixed_norm(right_translate(F, z), v, 2, 2, hg, xq);
    const double bound = std::pow(modular_G(Vec2::Zero(), z.h), -0.5) * v(z) * nF;
    worst_ratio = std::max(worst_ratio, nR / bound);
  }
  add(o, "translation_trials=" + std::to_string(kTranslationTrials) + fmt(" max_norm_over_bound=%.4f", worst_ratio));
  if (!(worst_ratio <= 1.0 + kQuadratureSlack)) o.pass = false;
  return o;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "criterion number (repeatable); all when omitted")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);
  const std::vector<std::pair<int, std::function<Outcome()>>> all{
      {1, group_algebra}, {2, orbit_geometry}, {3, admissibility}, {4, envelope},       {5, decay},
      {6, embeddedness},  {7, frame},          {8, counterexample}, {9, control_weights}};
  const std::set<int> want(selected.begin(), selected.end());
  bool ok = true;
  for (const auto& [id, run] : all) {
    if (!want.empty() && !want.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d: %s  %s  (%.1f s)\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}
