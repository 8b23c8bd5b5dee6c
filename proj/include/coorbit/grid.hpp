#pragma once

#include "coorbit/group.hpp"

#include <complex>
#include <functional>
#include <memory>
#include <vector>

namespace coorbit {

using cplx = std::complex<double>;

/// Uniform n x n grid on [-xi_max, xi_max)^2 with spacing 2 xi_max / n.
///
/// The paired space grid has spacing 1 / (2 xi_max) and nodes
/// x_m = (m - n/2) dx.  With `cell_centered` the frequency nodes are shifted
/// by half a cell so that no node lies on a coordinate axis.
struct FrequencyGrid {
  int n = 256;
  double xi_max = 8.0;
  bool cell_centered = false;

  void validate() const;
  double spacing() const { return 2.0 * xi_max / n; }
  double offset() const { return cell_centered ? 0.5 : 0.0; }
  double coord(int k) const { return -xi_max + (k + offset()) * spacing(); }
  Vec2 point(int k1, int k2) const { return {coord(k1), coord(k2)}; }
  double x_spacing() const { return 1.0 / (2.0 * xi_max); }
  double x_coord(int m) const { return (m - n / 2) * x_spacing(); }
  Vec2 x_point(int m1, int m2) const { return {x_coord(m1), x_coord(m2)}; }
  /// Continuous frequency index of a coordinate (inverse of coord).
  double frac_index(double xi) const { return (xi + xi_max) / spacing() - offset(); }

  friend bool operator==(const FrequencyGrid& l, const FrequencyGrid& r) {
    return l.n == r.n && l.xi_max == r.xi_max && l.cell_centered == r.cell_centered;
  }
};

enum class Domain { Frequency, Space };

/// Pointwise evaluator of the continuous function a field was sampled from.
using Generator = std::function<cplx(const Vec2&)>;

/// Complex samples on a FrequencyGrid (frequency side) or its space grid.
///
/// Values are stored row-major: values[k1 * n + k2] is the sample at the
/// point with first coordinate index k1.
struct SampledField {
  FrequencyGrid grid;
  Domain domain = Domain::Frequency;
  std::vector<cplx> values;
  /// Optional exact evaluator (frequency side), used by exact resampling.
  std::shared_ptr<const Generator> generator;

  SampledField() = default;
  SampledField(const FrequencyGrid& g, Domain d) : grid(g), domain(d), values(std::size_t(g.n) * g.n) {}

  int n() const { return grid.n; }
  cplx& at(int k1, int k2) { return values[std::size_t(k1) * grid.n + k2]; }
  const cplx& at(int k1, int k2) const { return values[std::size_t(k1) * grid.n + k2]; }
  Vec2 point(int k1, int k2) const { return domain == Domain::Frequency ? grid.point(k1, k2) : grid.x_point(k1, k2); }
  double cell_area() const {
    const double d = domain == Domain::Frequency ? grid.spacing() : grid.x_spacing();
    return d * d;
  }
};

/// Samples fn on the frequency grid; the field keeps fn as its generator.
SampledField sample_frequency(const FrequencyGrid& grid, Generator fn);
SampledField sample_space(const FrequencyGrid& grid, const std::function<cplx(const Vec2&)>& fn);

/// Riemann-sum L2 norm and inner product (conjugate linear in the second slot).
double l2_norm(const SampledField& f);
cplx inner(const SampledField& f, const SampledField& g);
void require_same_grid(const SampledField& f, const SampledField& g, const char* what);

/// Bilinear interpolation with zero extension outside the sampled nodes.
cplx interpolate(const SampledField& f, const Vec2& p);

/// Continuous Fourier transform approximations between the paired grids
/// (forward kernel exp(-2 pi i x.xi)).
SampledField to_space(const SampledField& fhat);
SampledField to_frequency(const SampledField& f);

/// In-place transforms on raw n*n buffers laid out like SampledField::values.
/// Thread safe; plans are cached per size.
class SpectralTransform {
public:
  explicit SpectralTransform(const FrequencyGrid& grid);
  const FrequencyGrid& grid() const { return grid_; }
  /// frequency samples -> space samples
  void inverse(cplx* data) const;
  /// space samples -> frequency samples
  void forward(cplx* data) const;

private:
  FrequencyGrid grid_;
  std::vector<cplx> pre_;  // per-axis factors applied to frequency samples
  std::vector<cplx> post_; // per-axis factors applied to space samples
  void* plan_fwd_;
  void* plan_bwd_;
};

/// Fraction of the space-domain energy within `margin` cells of the grid boundary.
double boundary_mass_fraction(const SampledField& space_field, int margin);

} // namespace coorbit
