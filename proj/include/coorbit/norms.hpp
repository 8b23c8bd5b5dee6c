#pragma once

#include "coorbit/cwt.hpp"

#include <functional>

namespace coorbit {

/// Weight v(x, h) = (1 + |x| + ||h||)^s w(h) with w from a per-family bundle:
///  - similitude: (a^2+b^2)^u + (a^2+b^2)^-u
///  - diagonal: (|a| + 1/|a|)^t (|b| + 1/|b|)^u
///  - shearlet: (|a| + 1/|a| + |b|)^u, or |a|^r1 (|a| + 1/|a| + |a|^-1/2 |b|)^r2 when `shearlet_literature`
///  - scalar: a^2u + a^-2u
/// `unit` replaces the bundle by w = 1. ||h|| is the euclidean operator norm.
struct WeightSpec {
  double s = 0.0;
  double u = 0.0;
  double t = 0.0;
  bool unit = false;
  bool shearlet_literature = false;
  double r1 = 0.0;
  double r2 = 0.0;

  void validate() const;
};

double hweight_eval(const WeightSpec& spec, const DilationParams& h);
double weight_eval(const WeightSpec& spec, const Vec2& x, const DilationParams& h);
double weight_eval(const WeightSpec& spec, const AffinePoint& z);

/// (1 + |x| + |h^-1 x| + ||h^-1|| + ||h||)^s (w(h) + w(h^-1)); invariant under z -> z^-1.
double symmetric_weight_eval(const WeightSpec& spec, const Vec2& x, const DilationParams& h);

/// How the modular factor max(D^-1/q, D^(1/q-1)), D = Delta_G(0, h), enters the control weight.
/// BoundedBelow replaces it by max(1, 1/D), which dominates it and keeps the weight >= 1.
enum class ModularFactor { AsStated, BoundedBelow };

/// (1+|x|)^s w0(h) with
/// w0 = (w(h)+w(h^-1)) M(h) (|det h|^(1/q-1/p) + |det h|^(1/p-1/q)) (1 + ||h|| + ||h^-1||)^s.
double control_weight_eval(const WeightSpec& spec, double p, double q, const Vec2& x, const DilationParams& h,
                           ModularFactor mode = ModularFactor::AsStated);

/// symmetric_weight_eval * M(h) * determinant factor; satisfies v(z) = Delta_G(z)^-1 v(z^-1).
double symmetric_control_weight(const WeightSpec& spec, double p, double q, const Vec2& x, const DilationParams& h,
                                ModularFactor mode = ModularFactor::BoundedBelow);

/// Exponents may be INFINITY.
struct MixedNormParams {
  double p = 2.0;
  double q = 2.0;
  WeightSpec weight;

  void validate() const;
};

/// L^{p,q}_v quadrature: inner sum over x with dx^2, outer sum over nodes with w_j / |det h_j|.
double mixed_norm(const TransformArray& T, const MixedNormParams& params);
/// Same value computed from the analysis stream, without storing the transform.
double mixed_norm(const SampledField& f, const SampledField& psi, const HGrid& hgrid, const MixedNormParams& params,
                  const AnalyzeOptions& opts = {});
/// L^p_v quadrature over all samples at once (p finite).
double weighted_lp_norm(const TransformArray& T, const WeightSpec& weight, double p);

/// (sum |f|^p (1+|x|)^(sp) dx^2)^(1/p) for a space-domain field; sup for p = INFINITY.
double lps_norm(const SampledField& field, double p, double s);

/// max over |alpha| <= t of the grid L1 norm of d^alpha f.
double derivative_l1_max(const SampledField& fhat, int t);

/// mixed_norm(W_psi f) / (|f|_{t,t} |psi|_{t,t}).
double decay_ratio(const SampledField& f, const SampledField& psi, const HGrid& hgrid, const MixedNormParams& params,
                   int t, const AnalyzeOptions& opts = {});

/// Square x mesh [-half_width, half_width]^2 with n points per axis, Riemann weights.
struct XQuadrature {
  double half_width = 8.0;
  int n = 81;
};

using GroupFunction = std::function<cplx(const AffinePoint&)>;
using GroupWeight = std::function<double(const AffinePoint&)>;

/// Mixed norm of a function given pointwise on G, using the x mesh and the nodes of `hgrid`.
double function_mixed_norm(const GroupFunction& F, const GroupWeight& v, double p, double q, const HGrid& hgrid,
                           const XQuadrature& xq);

/// (R_z F)(y) = F(y z).
GroupFunction right_translate(GroupFunction F, const AffinePoint& z);

} // namespace coorbit
