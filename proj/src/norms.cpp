#include "coorbit/norms.hpp"

#include "coorbit/error.hpp"
#include "coorbit/wavelet.hpp"

#include <algorithm>
#include <cmath>

namespace coorbit {

namespace {

bool finite_exponent(double p) { return std::isfinite(p); }

void check_exponent(double p, const char* what) {
  if (!(p >= 1.0)) throw InvalidArgument(std::string(what) + " must lie in [1, inf]");
}

double inv(double p) { return std::isfinite(p) ? 1.0 / p : 0.0; }

double modular_factor(const DilationParams& h, double q, ModularFactor mode) {
  const double D = modular_G(Vec2::Zero(), h);
  if (mode == ModularFactor::BoundedBelow) return std::max(1.0, 1.0 / D);
  return std::max(std::pow(D, -inv(q)), std::pow(D, inv(q) - 1.0));
}

double det_factor(const DilationParams& h, double p, double q) {
  const double d = std::abs(determinant(h));
  const double e = inv(q) - inv(p);
  return std::pow(d, e) + std::pow(d, -e);
}

// Accumulates an L^p norm; p = inf keeps the maximum.
struct LpAccumulator {
  double p;
  double acc = 0.0;
  void add(double value, double weight) {
    if (finite_exponent(p)) acc += std::pow(value, p) * weight;
    else acc = std::max(acc, value);
  }
  double result() const { return finite_exponent(p) ? std::pow(acc, 1.0 / p) : acc; }
};

// Inner L^p_v norm of one slice.
double slice_norm(const cplx* s, const FrequencyGrid& grid, const DilationParams& h, const MixedNormParams& params) {
  const int n = grid.n;
  const double dx2 = grid.x_spacing() * grid.x_spacing();
  const WeightSpec& w = params.weight;
  LpAccumulator acc{params.p};
  if (w.s == 0.0) {
    const double wh = hweight_eval(w, h);
    for (std::size_t k = 0; k < std::size_t(n) * n; ++k) acc.add(std::abs(s[k]) * wh, dx2);
    return acc.result();
  }
  const double hn = operator_norm(h);
  const double wh = hweight_eval(w, h);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double v = std::pow(1.0 + grid.x_point(i, k).norm() + hn, w.s) * wh;
      acc.add(std::abs(s[std::size_t(i) * n + k]) * v, dx2);
    }
  return acc.result();
}

} // namespace

void WeightSpec::validate() const {
  if (!(std::isfinite(s) && s >= 0.0)) throw InvalidArgument("weight: s must be finite and nonnegative");
  if (!std::isfinite(u) || !std::isfinite(t) || !std::isfinite(r1) || !std::isfinite(r2))
    throw InvalidArgument("weight: exponents must be finite");
}

void MixedNormParams::validate() const {
  check_exponent(p, "p");
  check_exponent(q, "q");
  weight.validate();
}

double hweight_eval(const WeightSpec& spec, const DilationParams& h) {
  validate(h);
  if (spec.unit) return 1.0;
  const double a = std::abs(h.a), b = std::abs(h.b);
  switch (h.family.tag) {
  case FamilyTag::Similitude: {
    const double r2 = h.a * h.a + h.b * h.b;
    return std::pow(r2, spec.u) + std::pow(r2, -spec.u);
  }
  case FamilyTag::Diagonal: return std::pow(a + 1.0 / a, spec.t) * std::pow(b + 1.0 / b, spec.u);
  case FamilyTag::Shearlet:
    if (spec.shearlet_literature) return std::pow(a, spec.r1) * std::pow(a + 1.0 / a + b / std::sqrt(a), spec.r2);
    return std::pow(a + 1.0 / a + b, spec.u);
  case FamilyTag::ScalarReducible: return std::pow(a, 2.0 * spec.u) + std::pow(a, -2.0 * spec.u);
  }
  return 1.0;
}

double weight_eval(const WeightSpec& spec, const Vec2& x, const DilationParams& h) {
  const double w = hweight_eval(spec, h);
  if (spec.s == 0.0) return w;
  return std::pow(1.0 + x.norm() + operator_norm(h), spec.s) * w;
}

double weight_eval(const WeightSpec& spec, const AffinePoint& z) { return weight_eval(spec, z.x, z.h); }

double symmetric_weight_eval(const WeightSpec& spec, const Vec2& x, const DilationParams& h) {
  const DilationParams hi = invert(h);
  const double w = hweight_eval(spec, h) + hweight_eval(spec, hi);
  if (spec.s == 0.0) return w;
  const double v1 = 1.0 + x.norm() + (to_matrix(hi) * x).norm() + operator_norm(hi) + operator_norm(h);
  return std::pow(v1, spec.s) * w;
}

double control_weight_eval(const WeightSpec& spec, double p, double q, const Vec2& x, const DilationParams& h,
                           ModularFactor mode) {
  check_exponent(p, "p");
  check_exponent(q, "q");
  const DilationParams hi = invert(h);
  double w0 = (hweight_eval(spec, h) + hweight_eval(spec, hi)) * modular_factor(h, q, mode) * det_factor(h, p, q);
  if (spec.s != 0.0)
    w0 *= std::pow(1.0 + operator_norm(h) + operator_norm(hi), spec.s) * std::pow(1.0 + x.norm(), spec.s);
  return w0;
}

double symmetric_control_weight(const WeightSpec& spec, double p, double q, const Vec2& x, const DilationParams& h,
                                ModularFactor mode) {
  check_exponent(p, "p");
  check_exponent(q, "q");
  return symmetric_weight_eval(spec, x, h) * modular_factor(h, q, mode) * det_factor(h, p, q);
}

double mixed_norm(const TransformArray& T, const MixedNormParams& params) {
  params.validate();
  if (T.values.size() != T.slice_size() * T.hgrid.size()) throw GridMismatch("mixed_norm: array and hgrid disagree");
  LpAccumulator outer{params.q};
  const double dx2 = T.grid.x_spacing() * T.grid.x_spacing();
  for (std::size_t j = 0; j < T.hgrid.size(); ++j)
    outer.add(slice_norm(T.slice(j), T.grid, T.hgrid.nodes[j], params), T.cell_measure(j) / dx2);
  return outer.result();
}

double mixed_norm(const SampledField& f, const SampledField& psi, const HGrid& hgrid, const MixedNormParams& params,
                  const AnalyzeOptions& opts) {
  params.validate();
  LpAccumulator outer{params.q};
  analyze_stream(
      f, psi, hgrid,
      [&](std::size_t j, const cplx* s) {
        if (!s) return;
        const DilationParams& h = hgrid.nodes[j];
        outer.add(slice_norm(s, f.grid, h, params), hgrid.weights[j] / std::abs(determinant(h)));
      },
      opts);
  return outer.result();
}

double weighted_lp_norm(const TransformArray& T, const WeightSpec& weight, double p) {
  weight.validate();
  if (!(p >= 1.0 && std::isfinite(p))) throw InvalidArgument("weighted_lp_norm: p must be finite and >= 1");
  const int n = T.grid.n;
  double acc = 0.0;
  for (std::size_t j = 0; j < T.hgrid.size(); ++j) {
    const cplx* s = T.slice(j);
    const double cm = T.cell_measure(j);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const double v = weight_eval(weight, T.grid.x_point(i, k), T.hgrid.nodes[j]);
        acc += std::pow(std::abs(s[std::size_t(i) * n + k]) * v, p) * cm;
      }
  }
  return std::pow(acc, 1.0 / p);
}

double lps_norm(const SampledField& field, double p, double s) {
  if (field.domain != Domain::Space) throw InvalidArgument("lps_norm: expects a space-domain field");
  check_exponent(p, "p");
  const int n = field.n();
  const double dx2 = field.cell_area();
  LpAccumulator acc{p};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) acc.add(std::abs(field.at(i, k)) * std::pow(1.0 + field.point(i, k).norm(), s), dx2);
  return acc.result();
}

double derivative_l1_max(const SampledField& fhat, int t) {
  if (t < 0) throw InvalidArgument("derivative_l1_max: order must be nonnegative");
  const double da = fhat.cell_area();
  double best = 0.0;
  for (int a1 = 0; a1 <= t; ++a1)
    for (int a2 = 0; a1 + a2 <= t; ++a2) {
      const SampledField d = partial_derivative(fhat, a1, a2);
      double s = 0.0;
      for (const cplx& v : d.values) s += std::abs(v);
      best = std::max(best, s * da);
    }
  return best;
}

double decay_ratio(const SampledField& f, const SampledField& psi, const HGrid& hgrid, const MixedNormParams& params,
                   int t, const AnalyzeOptions& opts) {
  const double den = schwartz_seminorm(f, t, t) * schwartz_seminorm(psi, t, t);
  if (!(den > 0.0)) throw DomainError("decay_ratio: vanishing Schwartz seminorm");
  return mixed_norm(f, psi, hgrid, params, opts) / den;
}

double function_mixed_norm(const GroupFunction& F, const GroupWeight& v, double p, double q, const HGrid& hgrid,
                           const XQuadrature& xq) {
  check_exponent(p, "p");
  check_exponent(q, "q");
  if (xq.n < 2 || !(xq.half_width > 0.0)) throw InvalidArgument("function_mixed_norm: bad x mesh");
  const double dx = 2.0 * xq.half_width / (xq.n - 1);
  std::vector<double> inner(hgrid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t j = 0; j < hgrid.size(); ++j) {
    LpAccumulator acc{p};
    for (int i = 0; i < xq.n; ++i)
      for (int k = 0; k < xq.n; ++k) {
        const AffinePoint z{Vec2(-xq.half_width + i * dx, -xq.half_width + k * dx), hgrid.nodes[j]};
        acc.add(std::abs(F(z)) * v(z), dx * dx);
      }
    inner[j] = acc.result();
  }
  LpAccumulator outer{q};
  for (std::size_t j = 0; j < hgrid.size(); ++j)
    outer.add(inner[j], hgrid.weights[j] / std::abs(determinant(hgrid.nodes[j])));
  return outer.result();
}

GroupFunction right_translate(GroupFunction F, const AffinePoint& z) {
  return [F = std::move(F), z](const AffinePoint& y) { return F(affine_compose(y, z)); };
}

} // namespace coorbit
