#include "coorbit/frame.hpp"

#include "coorbit/error.hpp"
#include "coorbit/orbit.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace coorbit {

namespace {

bool in_identity_component(const DilationParams& g) {
  switch (g.family.tag) {
  case FamilyTag::Diagonal: return g.a > 0.0 && g.b > 0.0;
  case FamilyTag::Shearlet: return g.a > 0.0;
  default: return true;
  }
}

double wrap_angle(double t) { return std::remainder(t, 2.0 * M_PI); }

struct SnappedPoint {
  int m1, m2;
};

std::vector<SnappedPoint> snap(const SamplingSet& Z, const FrequencyGrid& grid) {
  std::vector<SnappedPoint> out(Z.size());
  const double dx = grid.x_spacing();
  for (std::size_t i = 0; i < Z.size(); ++i) {
    const Vec2& x = Z.points[i].x;
    const long m1 = std::lround(x(0) / dx) + grid.n / 2, m2 = std::lround(x(1) / dx) + grid.n / 2;
    if (m1 < 0 || m1 >= grid.n || m2 < 0 || m2 >= grid.n)
      throw DomainError("sampling point outside the grid coverage");
    out[i] = {int(m1), int(m2)};
  }
  return out;
}

HGrid node_grid(const SamplingSet& Z, const std::vector<double>& weights) {
  return custom_hgrid(Z.family, Z.h_nodes, weights);
}

// First point index of every node (points are stored node by node).
std::vector<std::size_t> node_offsets(const SamplingSet& Z) {
  std::vector<std::size_t> off(Z.h_nodes.size() + 1, 0);
  for (std::size_t i = 0; i < Z.size(); ++i) off[Z.node_of[i] + 1]++;
  for (std::size_t j = 0; j < Z.h_nodes.size(); ++j) off[j + 1] += off[j];
  return off;
}

double p_norm_accumulate(double acc, double v, double p) { return std::isfinite(p) ? acc + std::pow(v, p) : std::max(acc, v); }
double p_norm_finish(double acc, double p) { return std::isfinite(p) ? std::pow(acc, 1.0 / p) : acc; }

} // namespace

Vec2 chart_coordinates(const DilationParams& h) {
  validate(h);
  switch (h.family.tag) {
  case FamilyTag::Similitude: return {0.5 * std::log(h.a * h.a + h.b * h.b), std::atan2(h.b, h.a)};
  case FamilyTag::Diagonal: return {std::log(std::abs(h.a)), std::log(std::abs(h.b))};
  case FamilyTag::Shearlet: return {std::log(std::abs(h.a)), h.b / h.a};
  case FamilyTag::ScalarReducible: return {std::log(h.a), 0.0};
  }
  return Vec2::Zero();
}

DilationParams chart_element(const GroupFamily& family, const Vec2& c) {
  const double r = std::exp(c(0));
  switch (family.tag) {
  case FamilyTag::Similitude: return {family, r * std::cos(c(1)), r * std::sin(c(1))};
  case FamilyTag::Diagonal: return {family, r, std::exp(c(1))};
  case FamilyTag::Shearlet: return {family, r, r * c(1)};
  case FamilyTag::ScalarReducible: return {family, r, 0.0};
  }
  return identity(family);
}

void SamplingSetSpec::validate() const {
  if (!(a_ratio > 1.0)) throw InvalidArgument("sampling set: a_ratio must exceed 1");
  if (!(b_step > 0.0) || !(beta > 0.0)) throw InvalidArgument("sampling set: b_step and beta must be positive");
  if (!(window.a_min > 0.0 && window.a_max >= window.a_min) || !(window.x_half_width > 0.0) || !(window.shear_max >= 0.0))
    throw InvalidArgument("sampling set: empty window");
}

SamplingSetSpec SamplingSetSpec::refined(int times) const {
  SamplingSetSpec s = *this;
  for (int i = 0; i < times; ++i) {
    s.a_ratio = std::sqrt(s.a_ratio);
    s.b_step *= 0.5;
    s.beta *= 0.5;
  }
  return s;
}

bool SamplingSet::dense_for(const NeighborhoodU& U) const {
  return density.covered && U.x_radius >= density.smallest.x_radius && U.d1 >= density.smallest.d1 &&
         U.d2 >= density.smallest.d2;
}

SamplingSet build_sampling_set(const GroupFamily& family, const SamplingSetSpec& spec, int probes, std::uint64_t seed) {
  spec.validate();
  const SamplingWindow& W = spec.window;
  const double lr = std::log(spec.a_ratio);
  const int j0 = int(std::ceil(std::log(W.a_min) / lr - 1e-9)), j1 = int(std::floor(std::log(W.a_max) / lr + 1e-9));
  if (j1 < j0) throw InvalidArgument("sampling set: empty window");
  SamplingSet Z;
  Z.family = family;
  Z.spec = spec;
  const std::vector<double> signs{1.0, -1.0};
  switch (family.tag) {
  case FamilyTag::Similitude: {
    const int M = std::max(1, int(std::lround(2.0 * M_PI / spec.b_step)));
    for (int j = j0; j <= j1; ++j)
      for (int m = 0; m < M; ++m) Z.h_nodes.push_back(chart_element(family, Vec2(j * lr, 2.0 * M_PI * m / M)));
    break;
  }
  case FamilyTag::Diagonal:
    for (double sa : signs)
      for (double sb : signs)
        for (int j = j0; j <= j1; ++j)
          for (int m = j0; m <= j1; ++m)
            Z.h_nodes.push_back({family, sa * std::exp(j * lr), sb * std::exp(m * lr)});
    break;
  case FamilyTag::Shearlet: {
    const int mmax = int(std::floor(W.shear_max / spec.b_step + 1e-9));
    for (double sa : signs)
      for (int j = j0; j <= j1; ++j)
        for (int m = -mmax; m <= mmax; ++m) {
          const double a = sa * std::exp(j * lr);
          Z.h_nodes.push_back({family, a, a * m * spec.b_step});
        }
    break;
  }
  case FamilyTag::ScalarReducible:
    for (int j = j0; j <= j1; ++j) Z.h_nodes.push_back({family, std::exp(j * lr), 0.0});
    break;
  }

  const double X = W.x_half_width;
  for (std::size_t j = 0; j < Z.h_nodes.size(); ++j) {
    const Mat2 h = to_matrix(Z.h_nodes[j]);
    const int kmax = int(std::ceil(operator_norm(invert(Z.h_nodes[j])) * X * std::sqrt(2.0) / spec.beta)) + 1;
    for (int k1 = -kmax; k1 <= kmax; ++k1)
      for (int k2 = -kmax; k2 <= kmax; ++k2) {
        const Vec2 x = h * Vec2(spec.beta * k1, spec.beta * k2);
        if (x.cwiseAbs().maxCoeff() > X) continue;
        Z.points.push_back({x, Z.h_nodes[j]});
        Z.node_of.push_back(j);
      }
  }

  // covering check on random probes inside the window, one mesh step away from its edges
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U01(0.0, 1.0);
  double u_lo = std::log(W.a_min) + lr, u_hi = std::log(W.a_max) - lr;
  if (u_hi < u_lo) u_lo = u_hi = 0.5 * (std::log(W.a_min) + std::log(W.a_max));
  const double d1 = 0.5 * lr * (1.0 + 1e-9);
  std::vector<Vec2> chart_probe;
  std::vector<AffinePoint> probe;
  for (int i = 0; i < probes; ++i) {
    const double c1 = u_lo + (u_hi - u_lo) * U01(rng);
    DilationParams h;
    switch (family.tag) {
    case FamilyTag::Similitude: h = chart_element(family, Vec2(c1, 2.0 * M_PI * U01(rng))); break;
    case FamilyTag::Diagonal:
      h = chart_element(family, Vec2(c1, u_lo + (u_hi - u_lo) * U01(rng)));
      h.a *= U01(rng) < 0.5 ? -1.0 : 1.0;
      h.b *= U01(rng) < 0.5 ? -1.0 : 1.0;
      break;
    case FamilyTag::Shearlet: {
      const double bm = std::max(0.0, W.shear_max - spec.b_step);
      h = chart_element(family, Vec2(c1, -bm + 2.0 * bm * U01(rng)));
      if (U01(rng) < 0.5) h = {family, -h.a, -h.b};
      break;
    }
    case FamilyTag::ScalarReducible: h = chart_element(family, Vec2(c1, 0.0)); break;
    }
    probe.push_back({Vec2((U01(rng) - 0.5) * X, (U01(rng) - 0.5) * X), h});
  }
  DensityReport& rep = Z.density;
  rep.probes = int(probe.size());
  rep.covered = !probe.empty();
  rep.smallest = {0.0, d1, 0.0};
  // chart offsets of h_i^-1 h for every probe and node
  std::vector<std::vector<Vec2>> offs(probe.size());
  for (std::size_t i = 0; i < probe.size(); ++i) {
    double best2 = INFINITY;
    offs[i].resize(Z.h_nodes.size(), Vec2::Constant(INFINITY));
    for (std::size_t j = 0; j < Z.h_nodes.size(); ++j) {
      const DilationParams g = compose(invert(Z.h_nodes[j]), probe[i].h);
      if (!in_identity_component(g)) continue;
      Vec2 c = chart_coordinates(g);
      if (family.tag == FamilyTag::Similitude) c(1) = wrap_angle(c(1));
      offs[i][j] = c.cwiseAbs();
      if (offs[i][j](0) > d1) continue;
      if (family.tag == FamilyTag::Diagonal && offs[i][j](1) > d1) continue;
      best2 = std::min(best2, offs[i][j](1));
    }
    if (!std::isfinite(best2)) rep.covered = false;
    else rep.smallest.d2 = std::max(rep.smallest.d2, best2);
  }
  if (family.tag == FamilyTag::Diagonal) rep.smallest.d2 = d1;
  if (family.tag == FamilyTag::ScalarReducible) rep.smallest.d2 = 0.0;
  const double d2 = rep.smallest.d2 * (1.0 + 1e-9);
  // x-ball radius; probes without a node in the chart box use the chart-nearest node
  for (std::size_t i = 0; i < probe.size(); ++i) {
    std::vector<std::size_t> cand;
    for (std::size_t j = 0; j < Z.h_nodes.size(); ++j)
      if (offs[i][j](0) <= d1 && offs[i][j](1) <= d2) cand.push_back(j);
    if (cand.empty()) {
      std::size_t jb = 0;
      for (std::size_t j = 1; j < Z.h_nodes.size(); ++j)
        if (offs[i][j].maxCoeff() < offs[i][jb].maxCoeff()) jb = j;
      cand.push_back(jb);
    }
    double best = INFINITY;
    for (std::size_t j : cand) {
      const DilationParams& hj = Z.h_nodes[j];
      const Vec2 y = to_matrix(invert(hj)) * probe[i].x / spec.beta;
      const Vec2 k(std::round(y(0)), std::round(y(1)));
      if ((to_matrix(hj) * (spec.beta * k)).cwiseAbs().maxCoeff() > X) continue;
      best = std::min(best, spec.beta * (y - k).norm());
    }
    if (!std::isfinite(best)) rep.covered = false;
    else rep.smallest.x_radius = std::max(rep.smallest.x_radius, best);
  }
  return Z;
}

double discrete_norm(const CoeffArray& c, const SamplingSet& Z, double p, double q, const WeightSpec& weight) {
  if (c.values.size() != Z.size()) throw InvalidArgument("discrete_norm: coefficient count does not match the sampling set");
  if (!(p >= 1.0) || !(q >= 1.0)) throw InvalidArgument("discrete_norm: exponents must be >= 1");
  const double ip = std::isfinite(p) ? 1.0 / p : 0.0, iq = std::isfinite(q) ? 1.0 / q : 0.0;
  const auto off = node_offsets(Z);
  double outer = 0.0;
  for (std::size_t j = 0; j < Z.h_nodes.size(); ++j) {
    const double det = std::abs(determinant(Z.h_nodes[j]));
    const double scale = std::pow(det, ip - iq);
    double inner = 0.0;
    for (std::size_t i = off[j]; i < off[j + 1]; ++i)
      inner = p_norm_accumulate(inner, std::abs(c.values[i]) * weight_eval(weight, Z.points[i]) * scale, p);
    inner = p_norm_finish(inner, p);
    // |det|^(q/p - 1) outside the q-th power equals |det|^(1/p - 1/q) inside it
    if (std::isfinite(q)) outer += std::pow(det, q * ip - 1.0) * std::pow(inner, q);
    else outer = std::max(outer, inner * std::pow(det, ip));
  }
  return std::isfinite(q) ? std::pow(outer, 1.0 / q) : outer;
}

double snap_offset(const SamplingSet& Z, const FrequencyGrid& grid) {
  const auto s = snap(Z, grid);
  double m = 0.0;
  for (std::size_t i = 0; i < Z.size(); ++i) m = std::max(m, (Z.points[i].x - grid.x_point(s[i].m1, s[i].m2)).norm());
  return m;
}

CoeffArray analyze_at(const SampledField& f, const SampledField& psi, const SamplingSet& Z, const AnalyzeOptions& opts) {
  const auto s = snap(Z, f.grid);
  const auto off = node_offsets(Z);
  const int n = f.n();
  CoeffArray c;
  c.values.assign(Z.size(), cplx(0.0));
  analyze_stream(
      f, psi, node_grid(Z, std::vector<double>(Z.h_nodes.size(), 1.0)),
      [&](std::size_t j, const cplx* slice) {
        if (!slice) return;
        for (std::size_t i = off[j]; i < off[j + 1]; ++i) c.values[i] = slice[std::size_t(s[i].m1) * n + s[i].m2];
      },
      opts);
  return c;
}

SampledField synthesize_from(const CoeffArray& c, const SampledField& psi, const SamplingSet& Z,
                             const AnalyzeOptions& opts) {
  if (c.values.size() != Z.size()) throw InvalidArgument("synthesize_from: coefficient count does not match the sampling set");
  const auto s = snap(Z, psi.grid);
  const auto off = node_offsets(Z);
  const int n = psi.n();
  const double dx2 = psi.grid.x_spacing() * psi.grid.x_spacing();
  // weight |det h| / dx^2 turns a unit slice sample into the atom pi(x, h) psi
  std::vector<double> w(Z.h_nodes.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = std::abs(determinant(Z.h_nodes[j])) / dx2;
  return synthesize_stream(
      psi, node_grid(Z, w),
      [&](std::size_t j, cplx* buf) {
        std::fill(buf, buf + std::size_t(n) * n, cplx(0.0));
        bool any = false;
        for (std::size_t i = off[j]; i < off[j + 1]; ++i) {
          if (c.values[i] == cplx(0.0)) continue;
          buf[std::size_t(s[i].m1) * n + s[i].m2] += c.values[i];
          any = true;
        }
        return any;
      },
      opts);
}

std::vector<char> orbit_mask(const GroupFamily& family, const FrequencyGrid& grid, double r_lo, double r_hi,
                             double min_rel_dist) {
  std::vector<char> m(std::size_t(grid.n) * grid.n, 0);
  for (int i = 0; i < grid.n; ++i)
    for (int k = 0; k < grid.n; ++k) {
      const Vec2 xi = grid.point(i, k);
      const double r = xi.norm();
      if (r < r_lo || r > r_hi) continue;
      if (family.admissible() && dist_complement(family, xi) < min_rel_dist * r) continue;
      m[std::size_t(i) * grid.n + k] = 1;
    }
  return m;
}

void apply_mask(SampledField& f, const std::vector<char>& mask) {
  if (mask.size() != f.values.size()) throw GridMismatch("apply_mask: mask size differs from the field");
  for (std::size_t k = 0; k < mask.size(); ++k)
    if (!mask[k]) f.values[k] = 0.0;
}

double oscillation_norm(const SampledField& psi, const HGrid& hgrid, const NeighborhoodU& U, const WeightSpec& weight,
                        double p, double q, const AnalyzeOptions& opts) {
  if (psi.domain != Domain::Frequency) throw InvalidArgument("oscillation_norm: wavelet must be frequency samples");
  if (!(U.x_radius >= 0.0 && U.d1 >= 0.0 && U.d2 >= 0.0)) throw InvalidArgument("oscillation_norm: U sample empty");
  const FrequencyGrid& grid = psi.grid;
  const int n = grid.n;
  const std::size_t N = std::size_t(n) * n;
  const GroupFamily& fam = hgrid.family;

  std::vector<Vec2> ys{Vec2::Zero()};
  if (U.x_radius > 0.0)
    for (int k = 0; k < 8; ++k) ys.push_back(U.x_radius * Vec2(std::cos(k * M_PI / 4), std::sin(k * M_PI / 4)));
  std::vector<DilationParams> gs;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) gs.push_back(chart_element(fam, Vec2(a * U.d1, b * U.d2)));

  std::vector<std::size_t> supp;
  for (std::size_t k = 0; k < N; ++k)
    if (psi.values[k] != cplx(0.0)) supp.push_back(k);
  Vec2 lo = Vec2::Constant(INFINITY), hi = Vec2::Constant(-INFINITY);
  for (std::size_t k : supp) {
    const Vec2 xi = grid.point(int(k / n), int(k % n));
    lo = lo.cwiseMin(xi);
    hi = hi.cwiseMax(xi);
  }
  lo -= Vec2::Constant(grid.spacing());
  hi += Vec2::Constant(grid.spacing());
  const DilatedWavelet dw(psi, opts.resampling);
  const SpectralTransform st(grid);
  const double dx2 = grid.x_spacing() * grid.x_spacing();

  std::vector<double> partial(hgrid.size(), 0.0);
#pragma omp parallel
  {
    std::vector<cplx> base(N), work(N), prod(supp.size());
    std::vector<double> osc(N);
#pragma omp for schedule(dynamic, 1)
    for (std::size_t j = 0; j < hgrid.size(); ++j) {
      const DilationParams& h = hgrid.nodes[j];
      bool active = false;
      for (const auto& g : gs) active = active || dw.may_overlap(to_matrix(compose(h, g)).transpose(), lo, hi);
      if (!active || supp.empty()) continue;
      const Mat2 hm = to_matrix(h);
      // W(x, h)
      std::fill(base.begin(), base.end(), cplx(0.0));
      {
        const Mat2 hT = hm.transpose();
        const double s = std::sqrt(std::abs(determinant(h)));
        for (std::size_t k : supp) base[k] = s * psi.values[k] * std::conj(dw(hT, grid.point(int(k / n), int(k % n))));
        st.inverse(base.data());
      }
      std::fill(osc.begin(), osc.end(), 0.0);
      for (const auto& g : gs) {
        const DilationParams hg = compose(h, g);
        const Mat2 hgT = to_matrix(hg).transpose();
        const double s = std::sqrt(std::abs(determinant(hg)));
        bool any = false;
        for (std::size_t i = 0; i < supp.size(); ++i) {
          const std::size_t k = supp[i];
          prod[i] = s * psi.values[k] * std::conj(dw(hgT, grid.point(int(k / n), int(k % n))));
          any = any || prod[i] != cplx(0.0);
        }
        for (const Vec2& y : ys) {
          std::fill(work.begin(), work.end(), cplx(0.0));
          if (any) {
            // W(x + h y, hg): shift in x is a modulation in frequency
            const Vec2 t = hm * y;
            for (std::size_t i = 0; i < supp.size(); ++i) {
              const std::size_t k = supp[i];
              work[k] = prod[i] * std::polar(1.0, 2.0 * M_PI * t.dot(grid.point(int(k / n), int(k % n))));
            }
            st.inverse(work.data());
          }
          for (std::size_t k = 0; k < N; ++k) osc[k] = std::max(osc[k], std::abs(work[k] - base[k]));
        }
      }
      const double cm = hgrid.weights[j] * dx2 / std::abs(determinant(h));
      double acc = 0.0;
      if (weight.s == 0.0) {
        const double v = symmetric_control_weight(weight, p, q, Vec2::Zero(), h);
        for (std::size_t k = 0; k < N; ++k) acc += osc[k];
        acc *= v;
      } else {
        for (int m1 = 0; m1 < n; ++m1)
          for (int m2 = 0; m2 < n; ++m2)
            acc += osc[std::size_t(m1) * n + m2] * symmetric_control_weight(weight, p, q, grid.x_point(m1, m2), h);
      }
      partial[j] = acc * cm;
    }
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

USearch search_u(const SampledField& psi, const HGrid& hgrid, NeighborhoodU start, const WeightSpec& weight, double p,
                 double q, double threshold, int max_steps, const AnalyzeOptions& opts) {
  USearch r;
  NeighborhoodU U = start;
  for (int step = 0; step <= max_steps; ++step) {
    const double v = oscillation_norm(psi, hgrid, U, weight, p, q, opts);
    r.history.push_back({U, v});
    if (v < threshold) {
      r.found = true;
      r.u = U;
      r.value = v;
      return r;
    }
    U = U.scaled(0.5);
  }
  r.u = r.history.back().first;
  r.value = r.history.back().second;
  return r;
}

namespace {

SampledField frame_apply(const SampledField& v, const SampledField& psi, const SamplingSet& Z,
                         const std::vector<char>& mask, const AnalyzeOptions& opts) {
  SampledField out = synthesize_from(analyze_at(v, psi, Z, opts), psi, Z, opts);
  apply_mask(out, mask);
  return out;
}

double rayleigh(const SampledField& v, const SampledField& Sv) { return inner(Sv, v).real(); }

void normalize(SampledField& v) {
  const double nv = l2_norm(v);
  if (nv > 0.0)
    for (auto& x : v.values) x /= nv;
}

} // namespace

FrameBounds frame_bounds(const SampledField& psi, const SamplingSet& Z, const std::vector<char>& mask, int iterations,
                         std::uint64_t seed, const AnalyzeOptions& opts) {
  if (iterations < 1) throw InvalidArgument("frame_bounds: need at least one iteration");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N;
  SampledField v(psi.grid, Domain::Frequency);
  for (auto& x : v.values) x = cplx(N(rng), N(rng));
  apply_mask(v, mask);
  if (l2_norm(v) == 0.0) throw InvalidArgument("frame_bounds: empty mask");
  normalize(v);
  SampledField w = v;
  FrameBounds fb;
  for (int it = 0; it < iterations; ++it) {
    const SampledField Sv = frame_apply(v, psi, Z, mask, opts);
    fb.B = rayleigh(v, Sv);
    v = Sv;
    normalize(v);
  }
  // largest eigenvalue of B - S gives the smallest of S
  double mu = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const SampledField Sw = frame_apply(w, psi, Z, mask, opts);
    SampledField Tw = w;
    for (std::size_t k = 0; k < Tw.values.size(); ++k) Tw.values[k] = fb.B * w.values[k] - Sw.values[k];
    mu = rayleigh(w, Tw);
    w = Tw;
    normalize(w);
  }
  fb.A = fb.B - mu;
  fb.ill_conditioned = !(fb.A > 0.0) || fb.B / fb.A > 1e3;
  return fb;
}

Reconstruction frame_reconstruct(const SampledField& f, const SampledField& psi, const SamplingSet& Z,
                                 const std::vector<char>& mask, int max_iter, double tol, const FrameBounds& bounds,
                                 const AnalyzeOptions& opts) {
  if (!(bounds.A > 0.0 && bounds.B >= bounds.A)) throw DomainError("frame_reconstruct: invalid frame bounds");
  SampledField target = f;
  apply_mask(target, mask);
  const double nf = l2_norm(target);
  if (nf == 0.0) throw InvalidArgument("frame_reconstruct: signal vanishes on the mask");
  const double lambda = 2.0 / (bounds.A + bounds.B);
  const SampledField g = frame_apply(target, psi, Z, mask, opts);
  Reconstruction r;
  r.bounds = bounds;
  r.f_rec = SampledField(f.grid, Domain::Frequency);
  SampledField resid = g;
  for (int it = 1; it <= max_iter; ++it) {
    for (std::size_t k = 0; k < resid.values.size(); ++k) r.f_rec.values[k] += lambda * resid.values[k];
    const SampledField S = frame_apply(r.f_rec, psi, Z, mask, opts);
    for (std::size_t k = 0; k < resid.values.size(); ++k) resid.values[k] = g.values[k] - S.values[k];
    double e = 0.0;
    for (std::size_t k = 0; k < target.values.size(); ++k) e += std::norm(r.f_rec.values[k] - target.values[k]);
    r.rel_error = std::sqrt(e * r.f_rec.cell_area()) / nf;
    r.history.push_back(r.rel_error);
    r.iterations = it;
    if (l2_norm(resid) <= tol * bounds.A * l2_norm(r.f_rec)) {
      r.converged = true;
      break;
    }
  }
  return r;
}

} // namespace coorbit
