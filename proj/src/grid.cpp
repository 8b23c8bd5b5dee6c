#include "coorbit/grid.hpp"

#include "coorbit/error.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace coorbit {

namespace {

struct PlanPair {
  fftw_plan fwd;
  fftw_plan bwd;
};

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

PlanPair plans_for(int n) {
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  fftw_complex* buf = fftw_alloc_complex(std::size_t(n) * n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  PlanPair p{fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, flags), fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, flags)};
  fftw_free(buf);
  cache.emplace(n, p);
  return p;
}

void scale_separable(cplx* data, int n, const std::vector<cplx>& f) {
  for (int i = 0; i < n; ++i) {
    cplx* row = data + std::size_t(i) * n;
    const cplx fi = f[i];
    for (int j = 0; j < n; ++j) row[j] *= fi * f[j];
  }
}

} // namespace

void FrequencyGrid::validate() const {
  if (n < 16 || (n & (n - 1)) != 0) {
    std::ostringstream os;
    os << "grid size n=" << n << " must be a power of two >= 16";
    throw InvalidArgument(os.str());
  }
  if (!(xi_max > 0.0) || !std::isfinite(xi_max)) throw InvalidArgument("grid half-extent xi_max must be positive");
}

SampledField sample_frequency(const FrequencyGrid& grid, Generator fn) {
  grid.validate();
  SampledField f(grid, Domain::Frequency);
  for (int k1 = 0; k1 < grid.n; ++k1)
    for (int k2 = 0; k2 < grid.n; ++k2) f.at(k1, k2) = fn(grid.point(k1, k2));
  f.generator = std::make_shared<const Generator>(std::move(fn));
  return f;
}

SampledField sample_space(const FrequencyGrid& grid, const std::function<cplx(const Vec2&)>& fn) {
  grid.validate();
  SampledField f(grid, Domain::Space);
  for (int m1 = 0; m1 < grid.n; ++m1)
    for (int m2 = 0; m2 < grid.n; ++m2) f.at(m1, m2) = fn(grid.x_point(m1, m2));
  return f;
}

void require_same_grid(const SampledField& f, const SampledField& g, const char* what) {
  if (!(f.grid == g.grid) || f.domain != g.domain || f.values.size() != g.values.size())
    throw GridMismatch(std::string(what) + ": fields live on different grids");
}

double l2_norm(const SampledField& f) {
  double s = 0.0;
  for (const cplx& v : f.values) s += std::norm(v);
  return std::sqrt(s * f.cell_area());
}

cplx inner(const SampledField& f, const SampledField& g) {
  require_same_grid(f, g, "inner");
  cplx s = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) s += f.values[i] * std::conj(g.values[i]);
  return s * f.cell_area();
}

cplx interpolate(const SampledField& f, const Vec2& p) {
  const FrequencyGrid& g = f.grid;
  const int n = g.n;
  double u, v;
  if (f.domain == Domain::Frequency) {
    u = g.frac_index(p(0));
    v = g.frac_index(p(1));
  } else {
    u = p(0) / g.x_spacing() + n / 2;
    v = p(1) / g.x_spacing() + n / 2;
  }
  if (!(u > -1.0 && u < n && v > -1.0 && v < n)) return 0.0;
  const int i0 = static_cast<int>(std::floor(u)), j0 = static_cast<int>(std::floor(v));
  const double tu = u - i0, tv = v - j0;
  auto val = [&](int i, int j) -> cplx {
    if (i < 0 || i >= n || j < 0 || j >= n) return 0.0;
    return f.values[std::size_t(i) * n + j];
  };
  return (1 - tu) * ((1 - tv) * val(i0, j0) + tv * val(i0, j0 + 1)) + tu * ((1 - tv) * val(i0 + 1, j0) + tv * val(i0 + 1, j0 + 1));
}

SpectralTransform::SpectralTransform(const FrequencyGrid& grid) : grid_(grid) {
  grid.validate();
  const int n = grid.n;
  pre_.resize(n);
  post_.resize(n);
  for (int m = 0; m < n; ++m) {
    const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
    pre_[m] = sgn;
    post_[m] = sgn * std::polar(1.0, 2.0 * M_PI * grid.offset() * (m - n / 2) / n);
  }
  PlanPair p = plans_for(n);
  plan_fwd_ = p.fwd;
  plan_bwd_ = p.bwd;
}

void SpectralTransform::inverse(cplx* data) const {
  const int n = grid_.n;
  scale_separable(data, n, pre_);
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_), d, d);
  std::vector<cplx> post(n);
  const double dxi = grid_.spacing();
  for (int m = 0; m < n; ++m) post[m] = post_[m] * dxi;
  scale_separable(data, n, post);
}

void SpectralTransform::forward(cplx* data) const {
  const int n = grid_.n;
  std::vector<cplx> pre(n), post(n);
  const double dx = grid_.x_spacing();
  for (int m = 0; m < n; ++m) {
    pre[m] = std::conj(post_[m]);
    post[m] = pre_[m] * dx;
  }
  scale_separable(data, n, pre);
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), d, d);
  scale_separable(data, n, post);
}

SampledField to_space(const SampledField& fhat) {
  if (fhat.domain != Domain::Frequency) throw InvalidArgument("to_space expects a frequency-domain field");
  SampledField f(fhat.grid, Domain::Space);
  f.values = fhat.values;
  SpectralTransform(fhat.grid).inverse(f.values.data());
  return f;
}

SampledField to_frequency(const SampledField& f) {
  if (f.domain != Domain::Space) throw InvalidArgument("to_frequency expects a space-domain field");
  SampledField fhat(f.grid, Domain::Frequency);
  fhat.values = f.values;
  SpectralTransform(f.grid).forward(fhat.values.data());
  return fhat;
}

double boundary_mass_fraction(const SampledField& f, int margin) {
  const int n = f.n();
  double total = 0.0, edge = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double e = std::norm(f.at(i, j));
      total += e;
      if (i < margin || j < margin || i >= n - margin || j >= n - margin) edge += e;
    }
  return total > 0.0 ? edge / total : 0.0;
}

} // namespace coorbit
