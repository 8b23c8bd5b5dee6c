#include "coorbit/wavelet.hpp"

#include "coorbit/error.hpp"

#include <Eigen/QR>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace coorbit {

namespace {

// Fornberg's recursion for finite-difference weights at x0 = 0 on integer offsets -p..p.
std::vector<double> fd_weights(int order, int half_width) {
  const int npts = 2 * half_width + 1;
  std::vector<double> x(npts);
  for (int i = 0; i < npts; ++i) x[i] = i - half_width;
  std::vector<std::vector<double>> c(npts, std::vector<double>(order + 1, 0.0));
  double c1 = 1.0, c4 = x[0];
  c[0][0] = 1.0;
  for (int i = 1; i < npts; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i];
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(npts);
  for (int i = 0; i < npts; ++i) w[i] = c[i][order];
  return w;
}

int stencil_half_width(int order) { return order == 0 ? 0 : (order + 1) / 2 + 1; }

constexpr int kMaxDerivative = 6;
constexpr int kSeminormMargin = 4;

void normalize(SampledField& f, double& scale_out) {
  const double nrm = l2_norm(f);
  if (!(nrm > 0.0)) throw DomainError("wavelet has no samples on the grid; enlarge the grid");
  for (cplx& v : f.values) v /= nrm;
  scale_out = 1.0 / nrm;
}

} // namespace

double bump_profile(double t) {
  const double t2 = t * t;
  return t2 < 1.0 ? std::exp(-1.0 / (1.0 - t2)) : 0.0;
}

WaveletSpec default_bump(const GroupFamily& family) {
  WaveletSpec s;
  s.kind = WaveletKind::Bump;
  s.center = orbit_data(family).base_point;
  s.radius = 0.5;
  return s;
}

SampledField bump_wavelet(const GroupFamily& family, const WaveletSpec& spec, const FrequencyGrid& grid) {
  if (spec.kind != WaveletKind::Bump) throw InvalidArgument("bump_wavelet: spec is not a bump");
  if (!(spec.radius > 0.0)) throw InvalidArgument("bump_wavelet: radius must be positive");
  const double margin = dist_complement(family, spec.center) - spec.radius;
  if (!(margin > 0.0)) {
    std::ostringstream os;
    os << "bump ball (center (" << spec.center(0) << ", " << spec.center(1) << "), radius " << spec.radius
       << ") is not inside the dual orbit of " << family.name() << "; margin " << margin;
    throw DomainError(os.str());
  }
  const Vec2 c = spec.center;
  const double r = spec.radius;
  auto raw = [c, r](const Vec2& xi) -> cplx { return bump_profile((xi - c).norm() / r); };
  SampledField f = sample_frequency(grid, raw);
  double scale;
  normalize(f, scale);
  f.generator = std::make_shared<const Generator>([raw, scale](const Vec2& xi) { return raw(xi) * scale; });
  return f;
}

SampledField moment_wavelet(const GroupFamily& family, const WaveletSpec& spec, const FrequencyGrid& grid) {
  if (spec.kind != WaveletKind::Moment) throw InvalidArgument("moment_wavelet: spec is not a moment wavelet");
  if (spec.order < 0) throw InvalidArgument("moment_wavelet: order must be nonnegative");
  if (!(spec.envelope_sigma > 0.0)) throw InvalidArgument("moment_wavelet: envelope sigma must be positive");
  require_admissible(family, "moment_wavelet");
  const int s = spec.order;
  const double inv_s2 = 1.0 / (spec.envelope_sigma * spec.envelope_sigma);
  auto raw = [family, s, inv_s2](const Vec2& xi) -> cplx {
    return std::pow(orbit_polynomial(family, xi), s) * std::exp(-M_PI * xi.squaredNorm() * inv_s2);
  };
  SampledField f = sample_frequency(grid, raw);
  double scale;
  normalize(f, scale);
  f.generator = std::make_shared<const Generator>([raw, scale](const Vec2& xi) { return raw(xi) * scale; });
  return f;
}

SampledField make_wavelet(const GroupFamily& family, const WaveletSpec& spec, const FrequencyGrid& grid) {
  return spec.kind == WaveletKind::Bump ? bump_wavelet(family, spec, grid) : moment_wavelet(family, spec, grid);
}

double RadialBump::operator()(double s) const {
  return scale * bump_profile((2.0 * s - r1 - r2) / (r2 - r1));
}

RadialBump make_radial_bump(double r1, double r2) {
  if (!(r1 > 0.0 && r2 > r1)) throw InvalidArgument("radial bump needs 0 < r1 < r2");
  RadialBump b{r1, r2, 1.0};
  auto integrand = [&](double s) {
    const double v = b(s);
    return v * v / s;
  };
  const double I = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, r1, r2, 15, 1e-14);
  b.scale = 1.0 / std::sqrt(I);
  return b;
}

std::pair<SampledField, SampledField> counterexample_pair(const FrequencyGrid& grid, double r1, double r2) {
  if (!(r1 > 0.0 && r1 < r2 && r2 <= grid.xi_max / 2)) {
    std::ostringstream os;
    os << "counterexample radii must satisfy 0 < r1 < r2 <= xi_max/2 (got r1=" << r1 << ", r2=" << r2
       << ", xi_max=" << grid.xi_max << ")";
    throw InvalidArgument(os.str());
  }
  const RadialBump psi0 = make_radial_bump(r1, r2);
  auto fgen = [psi0](const Vec2& xi) -> cplx { return psi0(xi.norm()); };
  auto ggen = [psi0](const Vec2& xi) -> cplx {
    const double sg = xi(0) > 0 ? 1.0 : (xi(0) < 0 ? -1.0 : 0.0);
    return sg * psi0(xi.norm());
  };
  return {sample_frequency(grid, fgen), sample_frequency(grid, ggen)};
}

SampledField partial_derivative(const SampledField& field, int a1, int a2) {
  if (a1 < 0 || a2 < 0 || a1 > kMaxDerivative || a2 > kMaxDerivative)
    throw InvalidArgument("partial_derivative: orders must lie in [0, 6]");
  const int n = field.n();
  const double h = field.domain == Domain::Frequency ? field.grid.spacing() : field.grid.x_spacing();
  SampledField tmp = field, out = field;
  auto apply_axis = [&](const SampledField& in, SampledField& dst, int order, int axis) {
    if (order == 0) {
      dst.values = in.values;
      return;
    }
    const int p = stencil_half_width(order);
    const std::vector<double> w = fd_weights(order, p);
    const double hs = std::pow(h, -order);
    std::fill(dst.values.begin(), dst.values.end(), cplx(0.0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const int c = axis == 0 ? i : j;
        if (c < p || c >= n - p) continue;
        cplx acc = 0.0;
        for (int q = -p; q <= p; ++q) acc += w[q + p] * (axis == 0 ? in.at(i + q, j) : in.at(i, j + q));
        dst.at(i, j) = acc * hs;
      }
  };
  apply_axis(field, tmp, a1, 0);
  apply_axis(tmp, out, a2, 1);
  out.generator.reset();
  return out;
}

double schwartz_seminorm(const SampledField& field, int r, double m) {
  if (r < 0 || r > kMaxDerivative) throw InvalidArgument("schwartz_seminorm: derivative order must lie in [0, 6]");
  const int n = field.n();
  double sup = 0.0;
  for (int a1 = 0; a1 <= r; ++a1)
    for (int a2 = 0; a1 + a2 <= r; ++a2) {
      const SampledField d = (a1 == 0 && a2 == 0) ? field : partial_derivative(field, a1, a2);
      for (int i = kSeminormMargin; i < n - kSeminormMargin; ++i)
        for (int j = kSeminormMargin; j < n - kSeminormMargin; ++j) {
          const double w = std::pow(1.0 + field.point(i, j).norm(), m);
          sup = std::max(sup, w * std::abs(d.at(i, j)));
        }
    }
  return sup;
}

MomentSlope moment_slope(const SampledField& field, const GroupFamily& family) {
  if (field.domain != Domain::Frequency) throw InvalidArgument("moment_slope expects a frequency-domain field");
  require_admissible(family, "moment_slope");
  const FrequencyGrid& g = field.grid;
  const int n = g.n;
  double dmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double d = dist_complement(family, g.point(i, j));
      if (d > 0.0) dmin = std::min(dmin, d);
    }
  std::vector<double> slopes;
  int zero_seeds = 0;
  const int kmax = 10;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec2 seed = g.point(i, j);
      const double d = dist_complement(family, seed);
      if (!(d > 0.0) || std::abs(d - dmin) > 1e-9 * dmin) continue;
      const Vec2 foot = nearest_complement_point(family, seed);
      std::vector<double> logd, logv;
      bool any_zero = false, all_zero = true;
      for (int k = 1; k <= kmax; ++k) {
        const Vec2 p = foot + k * (seed - foot);
        const double u = g.frac_index(p(0)), v = g.frac_index(p(1));
        const double ur = std::round(u), vr = std::round(v);
        if (std::abs(u - ur) > 1e-6 || std::abs(v - vr) > 1e-6) continue;
        if (ur < 0 || ur >= n || vr < 0 || vr >= n) continue;
        const double mag = std::abs(field.at(int(ur), int(vr)));
        if (mag == 0.0) {
          any_zero = true;
          continue;
        }
        all_zero = false;
        logd.push_back(std::log(k * d));
        logv.push_back(std::log(mag));
      }
      if (all_zero && any_zero) {
        ++zero_seeds;
        continue;
      }
      if (any_zero || logd.size() < 5) continue;
      const int m = static_cast<int>(logd.size());
      Eigen::MatrixXd X(m, 4);
      Eigen::VectorXd y(m);
      for (int r = 0; r < m; ++r) {
        const double dd = std::exp(logd[r]);
        X(r, 0) = 1.0;
        X(r, 1) = logd[r];
        X(r, 2) = dd;
        X(r, 3) = dd * dd;
        y(r) = logv[r];
      }
      const Eigen::VectorXd beta = X.colPivHouseholderQr().solve(y);
      slopes.push_back(beta(1));
    }
  MomentSlope out;
  if (slopes.empty()) {
    if (zero_seeds > 0) {
      out.slope = std::numeric_limits<double>::infinity();
      out.compactly_supported = true;
      return out;
    }
    throw DomainError("moment_slope: insufficient nonzero samples near the orbit complement");
  }
  std::sort(slopes.begin(), slopes.end());
  const std::size_t k = slopes.size();
  out.slope = (k % 2 == 1) ? slopes[k / 2] : 0.5 * (slopes[k / 2 - 1] + slopes[k / 2]);
  out.seeds_used = static_cast<int>(k);
  return out;
}

double envelope_constant(const SampledField& field, const GroupFamily& family, double exponent) {
  if (field.domain != Domain::Frequency) throw InvalidArgument("envelope_constant expects a frequency-domain field");
  double sup = 0.0;
  for (int i = 0; i < field.n(); ++i)
    for (int j = 0; j < field.n(); ++j) {
      const Vec2 xi = field.grid.point(i, j);
      if (!in_orbit(family, xi)) continue;
      const double v = std::abs(field.at(i, j));
      if (v == 0.0) continue;
      sup = std::max(sup, v / std::pow(aux_A(family, xi), exponent));
    }
  return sup;
}

} // namespace coorbit
