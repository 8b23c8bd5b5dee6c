#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coorbit/error.hpp"
#include "coorbit/grid.hpp"
#include "support.hpp"

using namespace coorbit;

namespace {

double max_abs_diff(const SampledField& a, const SampledField& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

cplx gauss(const Vec2& p) { return std::exp(-M_PI * p.squaredNorm()); }

} // namespace

TEST_CASE("grid geometry") {
  FrequencyGrid g{256, 8.0};
  CHECK(g.spacing() == 0.0625);
  CHECK(g.coord(0) == -8.0);
  CHECK(g.coord(128) == 0.0);
  CHECK(g.x_spacing() == 1.0 / 16);
  CHECK(g.x_coord(0) == -8.0);
  CHECK(g.x_coord(128) == 0.0);
  FrequencyGrid c{256, 8.0, true};
  CHECK(c.coord(128) == 0.03125);
  CHECK(c.frac_index(c.coord(17)) == doctest::Approx(17));
  CHECK_THROWS_AS((FrequencyGrid{100, 8.0}).validate(), InvalidArgument);
  CHECK_THROWS_AS((FrequencyGrid{8, 8.0}).validate(), InvalidArgument);
  CHECK_THROWS_AS((FrequencyGrid{64, 0.0}).validate(), InvalidArgument);
}

TEST_CASE("Gaussian is its own Fourier transform on both grid layouts") {
  for (bool cc : {false, true}) {
    FrequencyGrid g{128, 6.0, cc};
    SampledField fhat = sample_frequency(g, gauss);
    SampledField f = to_space(fhat);
    SampledField expect = sample_space(g, gauss);
    CHECK(max_abs_diff(f, expect) < 1e-12);
    SampledField back = to_frequency(f);
    CHECK(max_abs_diff(back, fhat) < 1e-13);
  }
}

TEST_CASE("modulation in frequency is translation in space") {
  for (bool cc : {false, true}) {
    FrequencyGrid g{128, 6.0, cc};
    const Vec2 y(0.75, -0.5);
    SampledField fhat = sample_frequency(g, [&](const Vec2& xi) {
      return gauss(xi) * std::exp(cplx(0, -2 * M_PI * xi.dot(y)));
    });
    SampledField f = to_space(fhat);
    SampledField expect = sample_space(g, [&](const Vec2& x) { return gauss(x - y); });
    CHECK(max_abs_diff(f, expect) < 1e-12);
  }
}

TEST_CASE("discrete Plancherel and round trip on random data") {
  FrequencyGrid g{64, 4.0, true};
  SampledField a(g, Domain::Frequency), b(g, Domain::Frequency);
  for (auto& v : a.values) v = cplx(testsupport::uniform(-1, 1), testsupport::uniform(-1, 1));
  for (auto& v : b.values) v = cplx(testsupport::uniform(-1, 1), testsupport::uniform(-1, 1));
  SampledField sa = to_space(a), sb = to_space(b);
  CHECK(std::abs(inner(sa, sb) - inner(a, b)) < 1e-12 * std::abs(inner(a, b)) + 1e-12);
  CHECK(l2_norm(sa) == doctest::Approx(l2_norm(a)).epsilon(1e-13));
  CHECK(max_abs_diff(to_frequency(sa), a) < 1e-13);
  CHECK_THROWS_AS(to_frequency(a), InvalidArgument);
  CHECK_THROWS_AS(inner(a, sa), GridMismatch);
}

TEST_CASE("bilinear interpolation") {
  FrequencyGrid g{32, 4.0, true};
  auto lin = [](const Vec2& p) -> cplx { return cplx(1 + 2 * p(0) - 3 * p(1), p(0) * 0.5); };
  SampledField f = sample_frequency(g, lin);
  for (int i = 0; i < 200; ++i) {
    Vec2 p(testsupport::uniform(-3.5, 3.5), testsupport::uniform(-3.5, 3.5));
    CHECK(std::abs(interpolate(f, p) - lin(p)) < 1e-12);
  }
  CHECK(interpolate(f, g.point(3, 7)) == f.at(3, 7));
  CHECK(interpolate(f, Vec2(100, 0)) == cplx(0));
  // zero extension: half a cell beyond the last node blends with zero
  const double past = g.coord(g.n - 1) + 0.5 * g.spacing();
  CHECK(std::abs(interpolate(f, Vec2(past, g.coord(5))) - 0.5 * f.at(g.n - 1, 5)) < 1e-12);
}

TEST_CASE("boundary mass fraction") {
  FrequencyGrid g{64, 2.0};
  SampledField f = sample_space(g, gauss);
  CHECK(boundary_mass_fraction(f, 4) < 1e-10);
  SampledField flat = sample_space(g, [](const Vec2&) { return cplx(1); });
  CHECK(boundary_mass_fraction(flat, 4) > 0.2);
}
