#pragma once

#include "coorbit/norms.hpp"

#include <cstdint>
#include <vector>

namespace coorbit {

/// Chart coordinates around the identity component:
/// similitude (log rho, angle), diagonal (log|a|, log|b|), shearlet (log|a|, b/a), scalar (log a, 0).
Vec2 chart_coordinates(const DilationParams& h);
/// Element of the identity component with the given chart coordinates.
DilationParams chart_element(const GroupFamily& family, const Vec2& c);

/// Region of G covered by a sampling set.
struct SamplingWindow {
  double a_min = 0.25;
  double a_max = 4.0;
  double shear_max = 4.0;   ///< bound on |b/a| (shearlet)
  double x_half_width = 7.5;
};

/// Mesh parameters: scales a_ratio^j, b arithmetic in b_step (angle for the similitude group,
/// b/a for the shearlet group, a second scale a_ratio^m for the diagonal group), x_{j,k} = h_j(beta k).
struct SamplingSetSpec {
  double a_ratio = 2.0;
  double b_step = 1.0;
  double beta = 1.0;
  SamplingWindow window;

  void validate() const;
  /// Halves every mesh step `times` times (a_ratio -> sqrt(a_ratio)).
  SamplingSetSpec refined(int times) const;
};

/// U = B_r(0) x {g : |chart(g)_i| <= d_i}.
struct NeighborhoodU {
  double x_radius = 1.0;
  double d1 = 0.5;
  double d2 = 0.5;

  NeighborhoodU scaled(double f) const { return {x_radius * f, d1 * f, d2 * f}; }
};

/// Smallest U for which the probes of the covered region lie in Z U.
/// When the chart part is not covered, `covered` is false and x_radius still refers to the chart-nearest node.
struct DensityReport {
  bool covered = false;
  NeighborhoodU smallest;
  int probes = 0;
};

struct SamplingSet {
  GroupFamily family;
  SamplingSetSpec spec;
  std::vector<DilationParams> h_nodes;
  std::vector<AffinePoint> points;
  std::vector<std::size_t> node_of; ///< index into h_nodes for each point
  DensityReport density;

  std::size_t size() const { return points.size(); }
  /// Whether the density report certifies Z U = G on the covered region.
  bool dense_for(const NeighborhoodU& U) const;
};

SamplingSet build_sampling_set(const GroupFamily& family, const SamplingSetSpec& spec, int probes = 2000,
                               std::uint64_t seed = 1);

struct CoeffArray {
  std::vector<cplx> values;
};

/// (sum_j |det h_j|^(q/p-1) (sum_k (|c_jk| v(x_jk, h_j) |det h_j|^(1/p-1/q))^p)^(q/p))^(1/q); sup for infinite exponents.
double discrete_norm(const CoeffArray& c, const SamplingSet& Z, double p, double q, const WeightSpec& weight);

/// Largest distance between a sampling point and the x-grid node it is snapped to.
double snap_offset(const SamplingSet& Z, const FrequencyGrid& grid);

/// c_jk = W_psi f(x_jk, h_j) with x_jk snapped to the nearest x-grid node.
CoeffArray analyze_at(const SampledField& f, const SampledField& psi, const SamplingSet& Z,
                      const AnalyzeOptions& opts = {});
/// sum c_jk pi(x_jk, h_j) psi as frequency samples.
SampledField synthesize_from(const CoeffArray& c, const SampledField& psi, const SamplingSet& Z,
                             const AnalyzeOptions& opts = {});

/// Grid points in the orbit with r_lo <= |xi| <= r_hi and dist(xi, complement) >= min_rel_dist |xi|.
std::vector<char> orbit_mask(const GroupFamily& family, const FrequencyGrid& grid, double r_lo, double r_hi,
                             double min_rel_dist);
void apply_mask(SampledField& f, const std::vector<char>& mask);

/// sum over the transform grid of sup_{u in U} |W(zu) - W(z)| v0(z), v0 the symmetric control weight.
/// U is sampled at the center and 8 points of the x-circle times the 3 x 3 chart box.
double oscillation_norm(const SampledField& psi, const HGrid& hgrid, const NeighborhoodU& U, const WeightSpec& weight,
                        double p, double q, const AnalyzeOptions& opts = {});

struct USearch {
  bool found = false;
  NeighborhoodU u;
  double value = 0.0;
  std::vector<std::pair<NeighborhoodU, double>> history;
};

/// Halves U until the oscillation norm drops below `threshold`.
USearch search_u(const SampledField& psi, const HGrid& hgrid, NeighborhoodU start, const WeightSpec& weight, double p,
                 double q, double threshold = 0.5, int max_steps = 16, const AnalyzeOptions& opts = {});

/// Extreme eigenvalues of the masked frame operator, by power iteration.
struct FrameBounds {
  double A = 0.0;
  double B = 0.0;
  bool ill_conditioned = false; ///< B / A above 1e3 or A <= 0
};

FrameBounds frame_bounds(const SampledField& psi, const SamplingSet& Z, const std::vector<char>& mask, int iterations = 30,
                         std::uint64_t seed = 1, const AnalyzeOptions& opts = {});

struct Reconstruction {
  SampledField f_rec;
  double rel_error = 0.0;
  int iterations = 0;
  bool converged = false;
  FrameBounds bounds;
  std::vector<double> history; ///< relative error after each iteration
};

/// Richardson iteration f_{n+1} = f_n + lambda P(S f - S f_n), lambda = 2 / (A + B), started at 0.
/// Stops when the residual bound ||P(S f - S f_n)|| / (A ||f_n||) falls below tol.
Reconstruction frame_reconstruct(const SampledField& f, const SampledField& psi, const SamplingSet& Z,
                                 const std::vector<char>& mask, int max_iter, double tol, const FrameBounds& bounds,
                                 const AnalyzeOptions& opts = {});

} // namespace coorbit
