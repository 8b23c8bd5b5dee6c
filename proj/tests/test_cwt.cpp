#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coorbit/cwt.hpp"
#include "coorbit/error.hpp"
#include "coorbit/wavelet.hpp"
#include "support.hpp"

using namespace coorbit;

namespace {

HGridSpec small_spec() {
  HGridSpec s;
  s.a_min = 0.25;
  s.a_max = 4.0;
  s.n_a = 9;
  s.n_b = 9;
  s.b_max = 2.0;
  s.n_angle = 16;
  return s;
}

std::size_t find_node(const HGrid& g, const DilationParams& h) {
  for (std::size_t j = 0; j < g.size(); ++j)
    if (std::abs(g.nodes[j].a - h.a) < 1e-9 && std::abs(g.nodes[j].b - h.b) < 1e-9) return j;
  return g.size();
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0;
  for (auto x : v) m = std::max(m, std::abs(x));
  return m;
}

SampledField random_dense(const FrequencyGrid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> N;
  SampledField f(g, Domain::Frequency);
  for (auto& v : f.values) v = cplx(N(rng), N(rng));
  return f;
}

} // namespace

TEST_CASE("hgrid layout and weights") {
  auto sim = make_hgrid(GroupFamily::similitude());
  CHECK(sim.size() == 33 * 64);
  double tot = 0;
  for (double w : sim.weights) tot += w;
  CHECK(tot == doctest::Approx(2 * M_PI * std::log(256.0)).epsilon(1e-12));
  CHECK(make_hgrid(GroupFamily::diagonal()).size() == 66 * 66);
  auto sh = make_hgrid(GroupFamily::shearlet(0.5));
  CHECK(sh.size() == 2 * 33 * 33);
  for (double w : sh.weights) CHECK(w > 0);
  CHECK(make_hgrid(GroupFamily::scalar()).size() == 33);
  HGridSpec bad;
  bad.a_min = -1;
  CHECK_THROWS_AS(make_hgrid(GroupFamily::diagonal(), bad), InvalidArgument);
}

TEST_CASE("hgrid weights integrate Haar measure") {
  // smooth function of (log|a|, b/a) so it is resolved by every chart
  for (const auto& fam : testsupport::all_families()) {
    CAPTURE(fam.name());
    auto F = [&](const DilationParams& h) {
      const double l = std::log(std::abs(h.a)) / 2.0;
      double v = std::exp(-l * l);
      if (fam.tag == FamilyTag::Similitude) v = std::exp(-std::log(std::hypot(h.a, h.b)) * std::log(std::hypot(h.a, h.b)) / 4.0);
      if (fam.tag == FamilyTag::Shearlet) v *= std::exp(-(h.b / h.a) * (h.b / h.a));
      if (fam.tag == FamilyTag::Diagonal) v *= std::exp(-std::pow(std::log(std::abs(h.b)) / 2.0, 2));
      return v;
    };
    HGridSpec spec;
    spec.a_min = std::exp(-12.0);
    spec.a_max = std::exp(12.0);
    spec.n_a = 121;
    spec.b_max = 6;
    spec.n_b = 121;
    auto g = make_hgrid(fam, spec);
    double s = 0;
    for (std::size_t j = 0; j < g.size(); ++j) s += g.weights[j] * F(g.nodes[j]);
    // analytic values: int exp(-l^2/4) dl = 2 sqrt(pi), int exp(-beta^2) dbeta = sqrt(pi)
    const double gl = 2 * std::sqrt(M_PI);
    double expect = 0;
    switch (fam.tag) {
    case FamilyTag::Similitude: expect = gl * 2 * M_PI; break;
    case FamilyTag::Diagonal: expect = 4 * gl * gl; break;
    case FamilyTag::Shearlet: expect = 2 * gl * std::sqrt(M_PI); break;
    case FamilyTag::ScalarReducible: expect = gl; break;
    }
    CHECK(testsupport::rel_diff(s, expect) < 1e-6);
  }
}

TEST_CASE("identity slice reproduces the norm") {
  FrequencyGrid g{64, 4.0};
  auto fam = GroupFamily::shearlet(0.5);
  SampledField psi = bump_wavelet(fam, default_bump(fam), g);
  HGrid one = custom_hgrid(fam, {identity(fam)}, {1.0});
  TransformArray T = analyze(psi, psi, one);
  CHECK(std::abs(T.slice(0)[(g.n / 2) * g.n + g.n / 2] - 1.0) < 1e-12);
  CHECK_THROWS_AS(analyze(psi, bump_wavelet(fam, default_bump(fam), FrequencyGrid{32, 4.0}), one), GridMismatch);
}

TEST_CASE("covariance under grid-permuting group elements") {
  FrequencyGrid g{64, 4.0, true};
  const int n = g.n;
  struct Case {
    GroupFamily fam;
    DilationParams gel;
    Mat2 ginv_int; // integer matrix of g^{-1} acting on x indices
  };
  auto sim = GroupFamily::similitude(), dia = GroupFamily::diagonal(), sh = GroupFamily::shearlet(0.5);
  Mat2 rot_inv, flip, neg;
  rot_inv << 0, -1, 1, 0;
  flip << -1, 0, 0, 1;
  neg << -1, 0, 0, -1;
  std::vector<Case> cases = {{sim, {sim, 0, 1}, rot_inv}, {dia, {dia, -1, 1}, flip}, {sh, {sh, -1, 0}, neg}};
  for (const auto& c : cases) {
    CAPTURE(c.fam.name());
    auto spec = small_spec();
    HGrid hg = make_hgrid(c.fam, spec);
    SampledField psi = bump_wavelet(c.fam, default_bump(c.fam), g);
    std::mt19937_64 rng(7);
    SampledField f = random_test_function(c.fam, psi, rng, 2, 1.0);
    const int q1 = 3, q2 = -5;
    const AffinePoint z{Vec2(q1 * g.x_spacing(), q2 * g.x_spacing()), c.gel};
    SampledField pf = apply_representation(f, z);
    TransformArray Tf = analyze(f, psi, hg), Tp = analyze(pf, psi, hg);
    const double scale = max_abs(Tf.values);
    REQUIRE(scale > 0);
    double err = 0;
    for (std::size_t j = 0; j < hg.size(); ++j) {
      const DilationParams hj2 = compose(invert(c.gel), hg.nodes[j]);
      const std::size_t j2 = find_node(hg, hj2);
      REQUIRE(j2 < hg.size());
      for (int m1 = 0; m1 < n; ++m1)
        for (int m2 = 0; m2 < n; ++m2) {
          const Vec2 d(m1 - n / 2 - q1, m2 - n / 2 - q2);
          const Vec2 e = c.ginv_int * d;
          // slices on a cell-centered grid are antiperiodic in x
          const long r1 = std::lround(e(0)) + n / 2, r2 = std::lround(e(1)) + n / 2;
          const long w1 = (r1 >= 0 ? r1 / n : -((n - 1 - r1) / n)), w2 = (r2 >= 0 ? r2 / n : -((n - 1 - r2) / n));
          const int k1 = int(r1 - w1 * n), k2 = int(r2 - w2 * n);
          const double sg = ((w1 + w2) % 2 == 0) ? 1.0 : -1.0;
          err = std::max(err, std::abs(Tp.slice(j)[m1 * n + m2] - sg * Tf.slice(j2)[k1 * n + k2]));
        }
    }
    CHECK(err / scale < 1e-6);
  }
}

TEST_CASE("radial wavelet and radial signal give rotation invariant moduli") {
  FrequencyGrid g{64, 4.0, true};
  const int n = g.n;
  auto sim = GroupFamily::similitude();
  auto [f, unused] = counterexample_pair(g, 0.5, 2.0);
  SampledField psi = sample_frequency(g, [](const Vec2& xi) -> cplx {
    const double r = xi.norm();
    return bump_profile((r - 1.2) / 0.6);
  });
  HGrid hg = make_hgrid(sim, small_spec());
  TransformArray T = analyze(f, psi, hg, {Resampling::Exact});
  const int na = hg.spec.n_angle;
  double err = 0, scale = max_abs(T.values);
  for (int i = 0; i < hg.spec.n_a; ++i)
    for (int k = 1; k < na; ++k) {
      const cplx* a = T.slice(i * na);
      const cplx* b = T.slice(i * na + k);
      for (int m1 = 1; m1 < n; ++m1)
        for (int m2 = 1; m2 < n; ++m2) {
          err = std::max(err, std::abs(std::abs(a[m1 * n + m2]) - std::abs(b[m1 * n + m2])));
          // rotate x by 90 degrees about the origin node
          const int r1 = n - m2, r2 = m1;
          err = std::max(err, std::abs(std::abs(a[m1 * n + m2]) - std::abs(a[r1 * n + r2])));
        }
    }
  CHECK(err / scale < 1e-10);
}

TEST_CASE("linearity and conjugate linearity") {
  FrequencyGrid g{32, 4.0};
  auto fam = GroupFamily::diagonal();
  auto spec = small_spec();
  spec.n_a = 5;
  HGrid hg = make_hgrid(fam, spec);
  SampledField psi = bump_wavelet(fam, default_bump(fam), g);
  std::mt19937_64 rng(3);
  SampledField f1 = random_dense(g, rng), f2 = random_dense(g, rng), comb(g, Domain::Frequency);
  const cplx al(0.3, -1.1), be(-0.7, 0.2);
  for (std::size_t k = 0; k < comb.values.size(); ++k) comb.values[k] = al * f1.values[k] + be * f2.values[k];
  TransformArray A = analyze(f1, psi, hg), B = analyze(f2, psi, hg), C = analyze(comb, psi, hg);
  double err = 0;
  for (std::size_t k = 0; k < C.values.size(); ++k) err = std::max(err, std::abs(C.values[k] - al * A.values[k] - be * B.values[k]));
  CHECK(err < 1e-12 * max_abs(C.values));
  SampledField lpsi = psi;
  for (auto& v : lpsi.values) v *= al;
  TransformArray D = analyze(f1, lpsi, hg);
  err = 0;
  for (std::size_t k = 0; k < D.values.size(); ++k) err = std::max(err, std::abs(D.values[k] - std::conj(al) * A.values[k]));
  CHECK(err < 1e-12 * max_abs(D.values));
}

TEST_CASE("synthesis is the quadrature adjoint of analysis") {
  FrequencyGrid g{32, 4.0, true};
  for (const auto& fam : testsupport::all_families()) {
    CAPTURE(fam.name());
    auto spec = small_spec();
    spec.n_a = 5;
    spec.n_b = 5;
    spec.n_angle = 8;
    HGrid hg = make_hgrid(fam, spec);
    SampledField psi = fam.admissible() ? moment_wavelet(fam, {WaveletKind::Moment, {}, 0, 1, 1.5}, g)
                                        : counterexample_pair(g, 0.5, 2.0).first;
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 3; ++trial) {
      SampledField f = random_dense(g, rng);
      TransformArray T;
      T.grid = g;
      T.hgrid = hg;
      T.values.resize(T.slice_size() * hg.size());
      std::normal_distribution<double> N;
      for (auto& v : T.values) v = cplx(N(rng), N(rng));
      const cplx lhs = transform_inner(analyze(f, psi, hg), T);
      const cplx rhs = inner(f, synthesize(T, psi));
      CHECK(std::abs(lhs - rhs) <= 1e-8 * std::abs(lhs));
    }
  }
}

TEST_CASE("synthesis atoms and zero data") {
  FrequencyGrid g{32, 4.0};
  auto fam = GroupFamily::shearlet(0.5);
  SampledField psi = bump_wavelet(fam, default_bump(fam), g);
  HGrid hg = custom_hgrid(fam, {identity(fam), {fam, 2, 0.5}}, {0.7, 0.3});
  TransformArray T;
  T.grid = g;
  T.hgrid = hg;
  T.values.assign(T.slice_size() * 2, cplx(0));
  CHECK(max_abs(synthesize(T, psi).values) == 0.0);
  const int m1 = 20, m2 = 13;
  const cplx c(2.0, -1.0);
  T.slice(0)[m1 * g.n + m2] = c;
  SampledField out = synthesize(T, psi);
  const Vec2 x0 = g.x_point(m1, m2);
  const double dx2 = g.x_spacing() * g.x_spacing();
  double err = 0;
  for (int i = 0; i < g.n; ++i)
    for (int k = 0; k < g.n; ++k) {
      const cplx expect = c * 0.7 * dx2 * psi.at(i, k) * std::polar(1.0, -2 * M_PI * x0.dot(g.point(i, k)));
      err = std::max(err, std::abs(out.at(i, k) - expect));
    }
  CHECK(err < 1e-14);
}

TEST_CASE("Parseval ratio is the spectral average of the Calderon function") {
  FrequencyGrid g{64, 4.0, true};
  for (const auto& fam : testsupport::orbit_families()) {
    CAPTURE(fam.name());
    HGrid hg = make_hgrid(fam, small_spec());
    SampledField psi = bump_wavelet(fam, default_bump(fam), g);
    std::mt19937_64 rng(5);
    SampledField f = random_test_function(fam, psi, rng);
    double num = 0, den = 0;
    for (int i = 0; i < g.n; ++i)
      for (int k = 0; k < g.n; ++k) {
        const double e = std::norm(f.at(i, k));
        if (e == 0) continue;
        num += e * calderon_function(psi, g.point(i, k), hg);
        den += e;
      }
    CHECK(testsupport::rel_diff(parseval_ratio(f, psi, hg), num / den) < 1e-10);
  }
}

TEST_CASE("reconstruction recovers a multiple of the signal") {
  FrequencyGrid g{64, 4.0, true};
  auto fam = GroupFamily::shearlet(0.5);
  HGridSpec spec;
  spec.a_min = 1.0 / 8;
  spec.a_max = 8;
  spec.n_a = 25;
  spec.n_b = 33;
  HGrid hg = make_hgrid(fam, spec);
  SampledField psi = bump_wavelet(fam, default_bump(fam), g);
  std::mt19937_64 rng(9);
  SampledField f = random_test_function(fam, psi, rng);
  const auto probes = annulus_probes(fam, 0.5, 2.0, 6, 24, 0.5);
  const double c = calderon_constant(psi, hg, probes).mean;
  SampledField rec = synthesize(analyze(f, psi, hg), psi);
  double num = 0, den = 0;
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    num += std::norm(rec.values[k] - c * f.values[k]);
    den += std::norm(c * f.values[k]);
  }
  CHECK(std::sqrt(num / den) < 0.02);
}

TEST_CASE("Calderon function examples") {
  FrequencyGrid g{128, 4.0, true};
  auto sim = GroupFamily::similitude();
  auto [f, unused] = counterexample_pair(g, 0.5, 2.0);
  HGridSpec spec;
  spec.n_angle = 64;
  spec.n_a = 129;
  HGrid hg = make_hgrid(sim, spec);
  // unit radial normalization gives 2 pi
  for (const Vec2& xi : {Vec2(1, 0), Vec2(0.3, -0.8), Vec2(-1.7, 0.4)})
    CHECK(calderon_function(f, xi, hg, Resampling::Exact) == doctest::Approx(2 * M_PI).epsilon(1e-4));
  CHECK(calderon_function(f, Vec2(1, 0), hg) == doctest::Approx(2 * M_PI).epsilon(2e-2));
  const Vec2 xi(0.9, 0.2);
  const DilationParams node = hg.nodes[68 * 64 + 5];
  CHECK(calderon_function(f, xi, hg, Resampling::Exact) ==
        doctest::Approx(calderon_function(f, dual_action(node, xi), hg, Resampling::Exact)).epsilon(1e-3));
  CHECK_THROWS_AS(calderon_function(f, Vec2(0, 0), hg), DomainError);

  SampledField zero(g, Domain::Frequency);
  CHECK(calderon_function(zero, xi, hg) == 0.0);

  auto sh = GroupFamily::shearlet(0.5);
  SampledField psi = bump_wavelet(sh, default_bump(sh), g);
  const auto probes = annulus_probes(sh, 0.5, 2.0, 5, 16, 0.5);
  REQUIRE(!probes.empty());
  auto base = calderon_constant(psi, make_hgrid(sh), probes);
  CHECK(base.rel_std < kAdmissibleRelStd);
  SampledField lpsi = psi;
  for (auto& v : lpsi.values) v *= 3.0;
  CHECK(calderon_constant(lpsi, make_hgrid(sh), probes).mean == doctest::Approx(9 * base.mean).epsilon(1e-13));
  HGridSpec tiny;
  tiny.a_min = 0.5;
  tiny.a_max = 1.5;
  tiny.n_a = 5;
  CHECK(calderon_constant(psi, make_hgrid(sh, tiny), probes).rel_std > kAdmissibleRelStd);
  CHECK_THROWS_AS(calderon_constant(psi, make_hgrid(sh), {}), InvalidArgument);
}
