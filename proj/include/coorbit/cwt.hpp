#pragma once

#include "coorbit/grid.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace coorbit {

/// Mesh parameters for the dilation grid.
///
/// |a| runs log-spaced over [a_min, a_max] with n_a nodes per sign branch.
/// Per family:
///  - similitude: polar chart, modulus as above, n_angle equispaced angles;
///  - diagonal: both a and b as above, all four sign combinations;
///  - shearlet: b = a * beta with beta linear in [-b_max, b_max] (n_b nodes),
///    or b itself linear when `literal_b` is set;
///  - scalar: positive a only.
struct HGridSpec {
  double a_min = 1.0 / 16.0;
  double a_max = 16.0;
  int n_a = 33;
  double b_max = 4.0;
  int n_b = 33;
  int n_angle = 64;
  bool both_signs = true;
  bool literal_b = false;
};

/// Nodes of H with trapezoid weights for left Haar measure.
struct HGrid {
  GroupFamily family;
  HGridSpec spec;
  std::vector<DilationParams> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

HGrid make_hgrid(const GroupFamily& family, const HGridSpec& spec = {});
/// An HGrid built from explicit nodes and weights.
HGrid custom_hgrid(const GroupFamily& family, std::vector<DilationParams> nodes, std::vector<double> weights);

enum class Resampling { Bilinear, Exact };

struct AnalyzeOptions {
  Resampling resampling = Resampling::Bilinear;
};

/// Wavelet coefficients W(x_m, h_j), slice-major: values[j * n * n + m1 * n + m2].
struct TransformArray {
  FrequencyGrid grid;
  HGrid hgrid;
  std::vector<cplx> values;

  std::size_t slice_size() const { return std::size_t(grid.n) * grid.n; }
  cplx* slice(std::size_t j) { return values.data() + j * slice_size(); }
  const cplx* slice(std::size_t j) const { return values.data() + j * slice_size(); }
  /// Haar measure of G attached to one sample: w_j dx^2 / |det h_j|.
  double cell_measure(std::size_t j) const;
};

/// psi^(h^T xi) for every grid point xi, in the chosen resampling mode.
class DilatedWavelet {
public:
  DilatedWavelet(const SampledField& psi, Resampling mode);
  /// Value at h^T xi.
  cplx operator()(const Mat2& hT, const Vec2& xi) const;
  /// False when h^T maps the box [lo, hi] completely outside the support of psi.
  bool may_overlap(const Mat2& hT, const Vec2& lo, const Vec2& hi) const;

private:
  const SampledField* psi_;
  Resampling mode_;
  Vec2 supp_lo_, supp_hi_;
  bool empty_ = false;
};

/// Receives one slice per node in node order; `slice` is null when the slice vanishes identically.
using SliceVisitor = std::function<void(std::size_t j, const cplx* slice)>;

/// Computes W_psi f slice by slice without materializing the full array.
void analyze_stream(const SampledField& f, const SampledField& psi, const HGrid& hgrid, const SliceVisitor& visit,
                    const AnalyzeOptions& opts = {});
TransformArray analyze(const SampledField& f, const SampledField& psi, const HGrid& hgrid,
                       const AnalyzeOptions& opts = {});

/// Fills a space-domain slice for node j; returns false when the slice is zero.
using SliceProvider = std::function<bool(std::size_t j, cplx* slice)>;

/// Adjoint of analyze with respect to the Haar quadrature on G; returns a frequency-domain field.
SampledField synthesize_stream(const SampledField& psi, const HGrid& hgrid, const SliceProvider& provide,
                               const AnalyzeOptions& opts = {});
SampledField synthesize(const TransformArray& T, const SampledField& psi, const AnalyzeOptions& opts = {});

/// Quadrature inner product <F, G> over the sampled part of G.
cplx transform_inner(const TransformArray& F, const TransformArray& G);

/// sum_j w_j |psi^(h_j^T xi)|^2
double calderon_function(const SampledField& psi, const Vec2& xi, const HGrid& hgrid,
                         Resampling mode = Resampling::Bilinear);

struct CalderonStats {
  double mean = 0.0;
  double rel_std = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::vector<double> values;
};

CalderonStats calderon_constant(const SampledField& psi, const HGrid& hgrid, const std::vector<Vec2>& probes,
                                Resampling mode = Resampling::Bilinear);

/// Orbit points with |xi| in [r_lo, r_hi] and dist(xi, complement) >= min_rel_dist * |xi|.
std::vector<Vec2> annulus_probes(const GroupFamily& family, double r_lo, double r_hi, int n_radial, int n_angular,
                                 double min_rel_dist);

/// Relative std below which a wavelet is reported admissible.
inline constexpr double kAdmissibleRelStd = 0.05;

/// ||W_psi f||^2 over the sampled group divided by ||f||^2.
double parseval_ratio(const SampledField& f, const SampledField& psi, const HGrid& hgrid,
                      const AnalyzeOptions& opts = {});

/// Random finite combination of dilated and translated copies of a bump wavelet.
///
/// Each term is pi(y, g) psi with |y_i| <= max_shift and g close to the identity,
/// so the spectrum stays inside the dual orbit and the space-domain mass
/// stays inside the grid.
SampledField random_test_function(const GroupFamily& family, const SampledField& psi, std::mt19937_64& rng,
                                  int terms = 3, double max_shift = 2.0, double max_log_scale = 0.3);

/// Frequency samples of pi(y, g) f: |det g|^{1/2} exp(-2 pi i y.xi) f^(g^T xi); needs an exact generator.
SampledField apply_representation(const SampledField& f, const AffinePoint& z);

} // namespace coorbit
