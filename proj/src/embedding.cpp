#include "coorbit/embedding.hpp"

#include "coorbit/error.hpp"
#include "coorbit/orbit.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

namespace coorbit {

namespace {

constexpr int kGaussOrder = 8;
const double kLn2 = std::log(2.0);

struct Rule {
  std::vector<double> x, w; // on [-1, 1]
};

const Rule& gauss_rule() {
  static const Rule rule = [] {
    using G = boost::math::quadrature::gauss<double, kGaussOrder>;
    Rule r;
    const auto& ab = G::abscissa();
    const auto& wt = G::weights();
    for (std::size_t i = 0; i < ab.size(); ++i) {
      r.x.push_back(ab[i]);
      r.w.push_back(wt[i]);
      if (ab[i] != 0.0) {
        r.x.push_back(-ab[i]);
        r.w.push_back(wt[i]);
      }
    }
    return r;
  }();
  return rule;
}

struct Panel {
  double lo, hi;
  int level; // first truncation level containing the panel
};

int level_for(double extent_log2) { return std::max(1, static_cast<int>(std::ceil(extent_log2 / 2.0 - 1e-9))); }

// Half-octave panels in u = log|a| over [-K ln2, K ln2].
std::vector<Panel> log_panels(int K) {
  std::vector<Panel> out;
  for (int j = -2 * K; j < 2 * K; ++j) {
    const double lo = 0.5 * j * kLn2, hi = 0.5 * (j + 1) * kLn2;
    out.push_back({lo, hi, level_for(0.5 * std::max(std::abs(j), std::abs(j + 1)))});
  }
  return out;
}

// Panels in |b| over [0, 2^K]: one panel up to 2^-K, then half-octaves.
std::vector<Panel> modulus_panels(int K) {
  std::vector<Panel> out{{0.0, std::exp2(-K), 1}};
  for (int j = -2 * K; j < 2 * K; ++j)
    out.push_back({std::exp2(0.5 * j), std::exp2(0.5 * (j + 1)), level_for(std::max(0.0, 0.5 * (j + 1)))});
  return out;
}

struct Node {
  double x, w;
};

std::vector<Node> panel_nodes(const Panel& p) {
  const Rule& r = gauss_rule();
  const double m = 0.5 * (p.lo + p.hi), h = 0.5 * (p.hi - p.lo);
  std::vector<Node> out;
  for (std::size_t i = 0; i < r.x.size(); ++i) out.push_back({m + h * r.x[i], h * r.w[i]});
  return out;
}

// Calls visit(h, haar_weight, level) for every quadrature node of the level-`levels` chart box.
template <class Visit>
void sweep_chart(const GroupFamily& family, int levels, Visit visit) {
  const int K = 2 * levels;
  const auto up = log_panels(K);
  switch (family.tag) {
  case FamilyTag::Similitude: {
    const int n_theta = 16;
    std::vector<Node> th;
    for (int k = 0; k < n_theta; ++k)
      for (const Node& nd : panel_nodes({2 * M_PI * k / n_theta, 2 * M_PI * (k + 1) / n_theta, 1})) th.push_back(nd);
    for (const Panel& p : up)
      for (const Node& u : panel_nodes(p)) {
        const double rho = std::exp(u.x);
        for (const Node& t : th) visit(DilationParams{family, rho * std::cos(t.x), rho * std::sin(t.x)}, u.w * t.w, p.level);
      }
    break;
  }
  case FamilyTag::Diagonal:
    for (double sa : {-1.0, 1.0})
      for (double sb : {-1.0, 1.0})
        for (const Panel& p : up)
          for (const Node& u : panel_nodes(p))
            for (const Panel& r : up)
              for (const Node& v : panel_nodes(r))
                visit(DilationParams{family, sa * std::exp(u.x), sb * std::exp(v.x)}, u.w * v.w, std::max(p.level, r.level));
    break;
  case FamilyTag::Shearlet: {
    const auto bp = modulus_panels(K);
    for (double sa : {-1.0, 1.0})
      for (const Panel& p : up)
        for (const Node& u : panel_nodes(p)) {
          const double a = sa * std::exp(u.x);
          for (const Panel& r : bp)
            for (const Node& b : panel_nodes(r))
              for (double sb : {-1.0, 1.0})
                // da db / a^2 with da = |a| du
                visit(DilationParams{family, a, sb * b.x}, u.w * b.w / std::abs(a), std::max(p.level, r.level));
        }
    break;
  }
  case FamilyTag::ScalarReducible: throw Unsupported("embeddedness: the scalar group has no open dual orbit");
  }
}

void check_q(double q) {
  if (!std::isfinite(q)) throw InvalidArgument("embeddedness: q must be finite");
  if (!(q >= 1.0)) throw InvalidArgument("embeddedness: q must be >= 1");
}

// Integrand without the A^ell factor, and the A argument.
void integrand_parts(EmbeddingCondition which, double q, const WeightSpec& weight, const DilationParams& h, const Vec2& xi0,
                     double& base, double& A) {
  const double det = std::abs(determinant(h));
  const double poly = std::pow(1.0 + operator_norm(h), weight.s + 3.0) * hweight_eval(weight, h);
  if (which == EmbeddingCondition::First) {
    base = std::pow(det, 0.5 - 1.0 / q) * poly;
    A = aux_A(h.family, dual_action(h, xi0));
  } else {
    base = std::pow(det, -0.5 - 1.0 / q) * poly;
    A = aux_A(h.family, dual_action(invert(h), xi0));
  }
}

} // namespace

double embeddedness_integrand(EmbeddingCondition which, double q, const WeightSpec& weight, int ell,
                              const DilationParams& h) {
  check_q(q);
  if (ell < 0) throw InvalidArgument("embeddedness: ell must be nonnegative");
  weight.validate();
  double base, A;
  integrand_parts(which, q, weight, h, orbit_data(h.family).base_point, base, A);
  return base * std::pow(A, ell);
}

EmbeddingTable embeddedness_table(const GroupFamily& family, double q, const WeightSpec& weight, int ell_min,
                                  int ell_max, int levels) {
  check_q(q);
  weight.validate();
  if (ell_min < 0 || ell_max < ell_min) throw InvalidArgument("embeddedness: bad ell range");
  if (levels < 1) throw InvalidArgument("embeddedness: need at least one level");
  const Vec2 xi0 = orbit_data(family).base_point;
  const int ne = ell_max - ell_min + 1;
  // sums[cond][ell][level] of the quadrature restricted to panels first included at that level
  std::vector<double> sums(2 * std::size_t(ne) * levels, 0.0);
  auto at = [&](int c, int e, int l) -> double& { return sums[(std::size_t(c) * ne + e) * levels + (l - 1)]; };
  sweep_chart(family, levels, [&](const DilationParams& h, double w, int level) {
    for (int c = 0; c < 2; ++c) {
      const auto which = c == 0 ? EmbeddingCondition::First : EmbeddingCondition::Second;
      double base, A;
      integrand_parts(which, q, weight, h, xi0, base, A);
      const double power = c == 0 ? q : 1.0;
      double term = std::pow(base, power) * std::pow(A, ell_min * power);
      const double step = std::pow(A, power);
      for (int e = 0; e < ne; ++e) {
        at(c, e, level) += w * term;
        term *= step;
      }
    }
  });
  EmbeddingTable T;
  T.ell_min = ell_min;
  T.levels = levels;
  T.first.assign(ne, std::vector<double>(levels));
  T.second.assign(ne, std::vector<double>(levels));
  for (int e = 0; e < ne; ++e) {
    double s0 = 0.0, s1 = 0.0;
    for (int l = 1; l <= levels; ++l) {
      s0 += at(0, e, l);
      s1 += at(1, e, l);
      T.first[e][l - 1] = std::pow(s0, 1.0 / q);
      T.second[e][l - 1] = s1;
    }
  }
  return T;
}

double embeddedness_condition(const GroupFamily& family, EmbeddingCondition which, double q, const WeightSpec& weight,
                              int ell, int level) {
  const EmbeddingTable T = embeddedness_table(family, q, weight, ell, ell, level);
  return which == EmbeddingCondition::First ? T.first[0].back() : T.second[0].back();
}

TruncationVerdict truncation_verdict(const std::vector<double>& values, double rel_tol) {
  if (values.size() < 3) throw InvalidArgument("truncation_verdict: need at least three levels");
  const std::size_t L = values.size();
  TruncationVerdict v;
  v.estimate = values.back();
  const bool small1 = std::abs(values[L - 1] - values[L - 2]) <= rel_tol * std::abs(values[L - 1]);
  const bool small2 = std::abs(values[L - 2] - values[L - 3]) <= rel_tol * std::abs(values[L - 2]);
  v.verdict = small1 && small2 ? Verdict::Converged : Verdict::Diverged;
  // least squares slope of log V against k ln 2, k = 2 level
  if (values[L - 3] > 0.0) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = L - 3; i < L; ++i) {
      const double x = 2.0 * (i + 1) * kLn2, y = std::log(values[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    v.growth_exponent = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
  }
  return v;
}

EmbeddednessReport embeddedness_verdict(const GroupFamily& family, double q, const WeightSpec& weight, int ell_min,
                                        int ell_max, int levels) {
  if (levels < 4) throw InvalidArgument("embeddedness: truncation schedule needs at least four levels");
  EmbeddednessReport r;
  r.family = family;
  r.q = q;
  r.weight = weight;
  r.table = embeddedness_table(family, q, weight, ell_min, ell_max, levels);
  for (int e = 0; e <= ell_max - ell_min; ++e) {
    r.first.push_back(truncation_verdict(r.table.first[e]));
    r.second.push_back(truncation_verdict(r.table.second[e]));
    if (!r.minimal_ell && r.first.back().verdict == Verdict::Converged && r.second.back().verdict == Verdict::Converged)
      r.minimal_ell = ell_min + e;
  }
  return r;
}

} // namespace coorbit
