#include "coorbit/cwt.hpp"

#include "coorbit/error.hpp"
#include "coorbit/orbit.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace coorbit {

namespace {

// Nodes and trapezoid weights of an equispaced mesh on [lo, hi].
void trapezoid(double lo, double hi, int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, lo);
  w.assign(n, 1.0);
  if (n == 1) return;
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) {
    x[i] = lo + i * step;
    w[i] = (i == 0 || i == n - 1) ? 0.5 * step : step;
  }
}

void check_spec(const HGridSpec& s) {
  if (!(s.a_min > 0.0 && s.a_max >= s.a_min)) throw InvalidArgument("hgrid: need 0 < a_min <= a_max");
  if (s.n_a < 1 || s.n_b < 1 || s.n_angle < 1) throw InvalidArgument("hgrid: node counts must be positive");
  if (!(s.b_max >= 0.0)) throw InvalidArgument("hgrid: b_max must be nonnegative");
}

// Wavelet samples below this fraction of the peak are treated as zero when pruning nodes.
constexpr double kTailFloor = 1e-17;

int block_size() { return std::max(1, 2 * omp_get_max_threads()); }

// Bounding box (padded by one cell) of samples with modulus above rel_floor * max.
void support_box(const SampledField& f, Vec2& lo, Vec2& hi, bool& empty, double rel_floor = 0.0) {
  const int n = f.n();
  double peak = 0.0;
  for (const cplx& v : f.values) peak = std::max(peak, std::abs(v));
  const double floor = rel_floor * peak;
  int i0 = n, i1 = -1, j0 = n, j1 = -1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (f.at(i, j) != cplx(0.0) && std::abs(f.at(i, j)) > floor) {
        i0 = std::min(i0, i);
        i1 = std::max(i1, i);
        j0 = std::min(j0, j);
        j1 = std::max(j1, j);
      }
  empty = i1 < 0;
  if (empty) return;
  const double h = f.grid.spacing();
  lo = Vec2(f.grid.coord(i0) - h, f.grid.coord(j0) - h);
  hi = Vec2(f.grid.coord(i1) + h, f.grid.coord(j1) + h);
}

void require_frequency_pair(const SampledField& f, const SampledField& psi, const char* what) {
  if (f.domain != Domain::Frequency || psi.domain != Domain::Frequency)
    throw InvalidArgument(std::string(what) + ": fields must be frequency-domain samples");
  require_same_grid(f, psi, what);
}

} // namespace

HGrid make_hgrid(const GroupFamily& family, const HGridSpec& spec) {
  check_spec(spec);
  HGrid g;
  g.family = family;
  g.spec = spec;
  std::vector<double> u, wu;
  trapezoid(std::log(spec.a_min), std::log(spec.a_max), spec.n_a, u, wu);
  const std::vector<double> signs = spec.both_signs ? std::vector<double>{-1.0, 1.0} : std::vector<double>{1.0};
  auto push = [&](double a, double b, double w) {
    g.nodes.push_back({family, a, b});
    g.weights.push_back(w);
  };
  switch (family.tag) {
  case FamilyTag::Similitude: {
    const double dth = 2.0 * M_PI / spec.n_angle;
    for (int i = 0; i < spec.n_a; ++i)
      for (int k = 0; k < spec.n_angle; ++k) {
        const double rho = std::exp(u[i]), th = k * dth;
        push(rho * std::cos(th), rho * std::sin(th), wu[i] * dth);
      }
    break;
  }
  case FamilyTag::Diagonal:
    for (double sa : signs)
      for (int i = 0; i < spec.n_a; ++i)
        for (double sb : signs)
          for (int k = 0; k < spec.n_a; ++k) push(sa * std::exp(u[i]), sb * std::exp(u[k]), wu[i] * wu[k]);
    break;
  case FamilyTag::Shearlet: {
    std::vector<double> beta, wb;
    trapezoid(-spec.b_max, spec.b_max, spec.n_b, beta, wb);
    for (double sa : signs)
      for (int i = 0; i < spec.n_a; ++i) {
        const double a = sa * std::exp(u[i]);
        for (int k = 0; k < spec.n_b; ++k) {
          // Haar density 1/a^2; with b = a beta, db = |a| dbeta and da = |a| dlog|a|
          if (spec.literal_b) push(a, beta[k], wu[i] * wb[k] / std::abs(a));
          else push(a, a * beta[k], wu[i] * wb[k]);
        }
      }
    break;
  }
  case FamilyTag::ScalarReducible:
    for (int i = 0; i < spec.n_a; ++i) push(std::exp(u[i]), 0.0, wu[i]);
    break;
  }
  return g;
}

HGrid custom_hgrid(const GroupFamily& family, std::vector<DilationParams> nodes, std::vector<double> weights) {
  if (nodes.size() != weights.size()) throw InvalidArgument("custom_hgrid: nodes and weights differ in length");
  for (const auto& h : nodes) {
    if (!(h.family == family)) throw FamilyMismatch("custom_hgrid: node from another family");
    validate(h);
  }
  HGrid g;
  g.family = family;
  g.nodes = std::move(nodes);
  g.weights = std::move(weights);
  return g;
}

double TransformArray::cell_measure(std::size_t j) const {
  const double dx = grid.x_spacing();
  return hgrid.weights[j] * dx * dx / std::abs(determinant(hgrid.nodes[j]));
}

DilatedWavelet::DilatedWavelet(const SampledField& psi, Resampling mode) : psi_(&psi), mode_(mode) {
  if (psi.domain != Domain::Frequency) throw InvalidArgument("wavelet must be given by frequency samples");
  if (mode == Resampling::Exact && !psi.generator)
    throw InvalidArgument("exact resampling needs a wavelet with an analytic generator");
  support_box(psi, supp_lo_, supp_hi_, empty_, kTailFloor);
}

cplx DilatedWavelet::operator()(const Mat2& hT, const Vec2& xi) const {
  if (empty_) return 0.0;
  const Vec2 p = hT * xi;
  if (p(0) < supp_lo_(0) || p(0) > supp_hi_(0) || p(1) < supp_lo_(1) || p(1) > supp_hi_(1)) return 0.0;
  return mode_ == Resampling::Exact ? (*psi_->generator)(p) : interpolate(*psi_, p);
}

bool DilatedWavelet::may_overlap(const Mat2& hT, const Vec2& lo, const Vec2& hi) const {
  if (empty_) return false;
  Vec2 mn = Vec2::Constant(INFINITY), mx = Vec2::Constant(-INFINITY);
  for (double c0 : {lo(0), hi(0)})
    for (double c1 : {lo(1), hi(1)}) {
      const Vec2 p = hT * Vec2(c0, c1);
      mn = mn.cwiseMin(p);
      mx = mx.cwiseMax(p);
    }
  return !(mx(0) < supp_lo_(0) || mn(0) > supp_hi_(0) || mx(1) < supp_lo_(1) || mn(1) > supp_hi_(1));
}

void analyze_stream(const SampledField& f, const SampledField& psi, const HGrid& hgrid, const SliceVisitor& visit,
                    const AnalyzeOptions& opts) {
  require_frequency_pair(f, psi, "analyze");
  const FrequencyGrid& grid = f.grid;
  const int n = grid.n;
  const std::size_t N = std::size_t(n) * n;
  double fpeak = 0.0;
  for (const cplx& v : f.values) fpeak = std::max(fpeak, std::abs(v));
  // same tail floor as the node pruning
  std::vector<std::size_t> supp;
  for (std::size_t k = 0; k < N; ++k)
    if (f.values[k] != cplx(0.0) && std::abs(f.values[k]) > kTailFloor * fpeak) supp.push_back(k);
  Vec2 flo, fhi;
  bool fempty;
  support_box(f, flo, fhi, fempty, kTailFloor);
  const DilatedWavelet dw(psi, opts.resampling);
  const SpectralTransform st(grid);

  const int B = block_size();
  std::vector<std::vector<cplx>> bufs(B, std::vector<cplx>(N));
  std::vector<char> live(B);
  const std::size_t nh = hgrid.size();
  for (std::size_t start = 0; start < nh; start += B) {
    const int cnt = static_cast<int>(std::min<std::size_t>(B, nh - start));
#pragma omp parallel for schedule(dynamic, 1)
    for (int b = 0; b < cnt; ++b) {
      const DilationParams& h = hgrid.nodes[start + b];
      const Mat2 hT = to_matrix(h).transpose();
      live[b] = 0;
      if (fempty || !dw.may_overlap(hT, flo, fhi)) continue;
      cplx* buf = bufs[b].data();
      std::fill(buf, buf + N, cplx(0.0));
      bool any = false;
      for (std::size_t k : supp) {
        const cplx v = dw(hT, grid.point(int(k / n), int(k % n)));
        if (v == cplx(0.0)) continue;
        buf[k] = f.values[k] * std::conj(v);
        any = true;
      }
      if (!any) continue;
      st.inverse(buf);
      const double s = std::sqrt(std::abs(determinant(h)));
      for (std::size_t k = 0; k < N; ++k) buf[k] *= s;
      live[b] = 1;
    }
    for (int b = 0; b < cnt; ++b) visit(start + b, live[b] ? bufs[b].data() : nullptr);
  }
}

TransformArray analyze(const SampledField& f, const SampledField& psi, const HGrid& hgrid, const AnalyzeOptions& opts) {
  TransformArray T;
  T.grid = f.grid;
  T.hgrid = hgrid;
  T.values.assign(T.slice_size() * hgrid.size(), cplx(0.0));
  analyze_stream(
      f, psi, hgrid,
      [&](std::size_t j, const cplx* s) {
        if (s) std::copy(s, s + T.slice_size(), T.slice(j));
      },
      opts);
  return T;
}

SampledField synthesize_stream(const SampledField& psi, const HGrid& hgrid, const SliceProvider& provide,
                               const AnalyzeOptions& opts) {
  const FrequencyGrid& grid = psi.grid;
  const int n = grid.n;
  const std::size_t N = std::size_t(n) * n;
  const DilatedWavelet dw(psi, opts.resampling);
  const SpectralTransform st(grid);
  SampledField out(grid, Domain::Frequency);

  const int B = block_size();
  std::vector<std::vector<cplx>> bufs(B, std::vector<cplx>(N));
  std::vector<char> live(B);
  const std::size_t nh = hgrid.size();
  for (std::size_t start = 0; start < nh; start += B) {
    const int cnt = static_cast<int>(std::min<std::size_t>(B, nh - start));
    // providers may hold state, so slices are requested in node order
    for (int b = 0; b < cnt; ++b) live[b] = provide(start + b, bufs[b].data()) ? 1 : 0;
#pragma omp parallel for schedule(dynamic, 1)
    for (int b = 0; b < cnt; ++b) {
      if (!live[b]) continue;
      const DilationParams& h = hgrid.nodes[start + b];
      const Mat2 hT = to_matrix(h).transpose();
      cplx* buf = bufs[b].data();
      st.forward(buf);
      const double s = hgrid.weights[start + b] / std::sqrt(std::abs(determinant(h)));
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) buf[std::size_t(i) * n + k] *= s * dw(hT, grid.point(i, k));
    }
    for (int b = 0; b < cnt; ++b)
      if (live[b])
        for (std::size_t k = 0; k < N; ++k) out.values[k] += bufs[b][k];
  }
  return out;
}

SampledField synthesize(const TransformArray& T, const SampledField& psi, const AnalyzeOptions& opts) {
  if (!(T.grid == psi.grid)) throw GridMismatch("synthesize: transform and wavelet grids differ");
  const std::size_t N = T.slice_size();
  return synthesize_stream(
      psi, T.hgrid,
      [&](std::size_t j, cplx* buf) {
        const cplx* s = T.slice(j);
        bool any = false;
        for (std::size_t k = 0; k < N; ++k) {
          buf[k] = s[k];
          any = any || s[k] != cplx(0.0);
        }
        return any;
      },
      opts);
}

cplx transform_inner(const TransformArray& F, const TransformArray& G) {
  if (!(F.grid == G.grid) || F.values.size() != G.values.size()) throw GridMismatch("transform_inner: shapes differ");
  cplx total = 0.0;
  for (std::size_t j = 0; j < F.hgrid.size(); ++j) {
    const cplx* a = F.slice(j);
    const cplx* b = G.slice(j);
    cplx s = 0.0;
    for (std::size_t k = 0; k < F.slice_size(); ++k) s += a[k] * std::conj(b[k]);
    total += s * F.cell_measure(j);
  }
  return total;
}

double calderon_function(const SampledField& psi, const Vec2& xi, const HGrid& hgrid, Resampling mode) {
  if (hgrid.family.admissible()) {
    if (!in_orbit(hgrid.family, xi)) throw DomainError("calderon_function: probe point is not in the dual orbit");
  } else if (xi.norm() == 0.0) {
    throw DomainError("calderon_function: probe point is zero");
  }
  const DilatedWavelet dw(psi, mode);
  double s = 0.0;
  for (std::size_t j = 0; j < hgrid.size(); ++j) {
    const cplx v = dw(to_matrix(hgrid.nodes[j]).transpose(), xi);
    s += hgrid.weights[j] * std::norm(v);
  }
  return s;
}

CalderonStats calderon_constant(const SampledField& psi, const HGrid& hgrid, const std::vector<Vec2>& probes,
                                Resampling mode) {
  if (probes.empty()) throw InvalidArgument("calderon_constant: empty probe set");
  CalderonStats st;
  st.values.resize(probes.size());
  for (std::size_t i = 0; i < probes.size(); ++i) st.values[i] = calderon_function(psi, probes[i], hgrid, mode);
  const double m = std::accumulate(st.values.begin(), st.values.end(), 0.0) / probes.size();
  double var = 0.0;
  for (double v : st.values) var += (v - m) * (v - m);
  var /= probes.size();
  st.mean = m;
  st.rel_std = m > 0.0 ? std::sqrt(var) / m : INFINITY;
  st.min = *std::min_element(st.values.begin(), st.values.end());
  st.max = *std::max_element(st.values.begin(), st.values.end());
  return st;
}

std::vector<Vec2> annulus_probes(const GroupFamily& family, double r_lo, double r_hi, int n_radial, int n_angular,
                                 double min_rel_dist) {
  if (!(r_lo > 0.0 && r_hi >= r_lo) || n_radial < 1 || n_angular < 1)
    throw InvalidArgument("annulus_probes: bad annulus parameters");
  std::vector<Vec2> out;
  for (int i = 0; i < n_radial; ++i) {
    const double t = n_radial == 1 ? 0.5 : double(i) / (n_radial - 1);
    const double r = r_lo * std::pow(r_hi / r_lo, t);
    for (int k = 0; k < n_angular; ++k) {
      // irrational offset keeps probes off the grid axes
      const double th = 2.0 * M_PI * (k + 0.3183) / n_angular;
      const Vec2 xi(r * std::cos(th), r * std::sin(th));
      if (family.admissible() && dist_complement(family, xi) < min_rel_dist * r) continue;
      out.push_back(xi);
    }
  }
  return out;
}

double parseval_ratio(const SampledField& f, const SampledField& psi, const HGrid& hgrid, const AnalyzeOptions& opts) {
  const double dx = f.grid.x_spacing();
  const std::size_t N = std::size_t(f.n()) * f.n();
  double total = 0.0;
  analyze_stream(
      f, psi, hgrid,
      [&](std::size_t j, const cplx* s) {
        if (!s) return;
        double e = 0.0;
        for (std::size_t k = 0; k < N; ++k) e += std::norm(s[k]);
        total += e * hgrid.weights[j] * dx * dx / std::abs(determinant(hgrid.nodes[j]));
      },
      opts);
  const double nf = l2_norm(f);
  return total / (nf * nf);
}

SampledField apply_representation(const SampledField& f, const AffinePoint& z) {
  if (f.domain != Domain::Frequency || !f.generator)
    throw InvalidArgument("apply_representation needs a frequency field with an analytic generator");
  const Mat2 gT = to_matrix(z.h).transpose();
  const double s = std::sqrt(std::abs(determinant(z.h)));
  const Vec2 y = z.x;
  auto gen = f.generator;
  return sample_frequency(f.grid, [gen, gT, s, y](const Vec2& xi) {
    return s * std::polar(1.0, -2.0 * M_PI * y.dot(xi)) * (*gen)(gT * xi);
  });
}

SampledField random_test_function(const GroupFamily& family, const SampledField& psi, std::mt19937_64& rng,
                                  int terms, double max_shift, double max_log_scale) {
  if (!psi.generator) throw InvalidArgument("random_test_function needs a wavelet with an analytic generator");
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<AffinePoint> pts;
  std::vector<cplx> coef;
  for (int t = 0; t < terms; ++t) {
    DilationParams g = identity(family);
    const double sc = std::exp(max_log_scale * U(rng));
    switch (family.tag) {
    case FamilyTag::Similitude: {
      const double th = 0.5 * max_log_scale * U(rng);
      g = {family, sc * std::cos(th), sc * std::sin(th)};
      break;
    }
    case FamilyTag::Diagonal: g = {family, sc, std::exp(max_log_scale * U(rng))}; break;
    case FamilyTag::Shearlet: g = {family, sc, max_log_scale * U(rng)}; break;
    case FamilyTag::ScalarReducible: g = {family, sc, 0.0}; break;
    }
    const Vec2 y(max_shift * U(rng), max_shift * U(rng));
    pts.push_back({y, g});
    coef.emplace_back(U(rng), U(rng));
  }
  auto gen = psi.generator;
  std::vector<Mat2> gT;
  std::vector<double> sdet;
  for (const auto& p : pts) {
    gT.push_back(to_matrix(p.h).transpose());
    sdet.push_back(std::sqrt(std::abs(determinant(p.h))));
  }
  return sample_frequency(psi.grid, [=](const Vec2& xi) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      s += coef[i] * sdet[i] * std::polar(1.0, -2.0 * M_PI * pts[i].x.dot(xi)) * (*gen)(gT[i] * xi);
    return s;
  });
}

} // namespace coorbit
