#pragma once

#include "coorbit/norms.hpp"

#include <optional>
#include <vector>

namespace coorbit {

/// The two integrability conditions on the dilation group:
///  First:  h -> |det h|^(1/2-1/q) (1+||h||)^(s+3) w(h) A(h^T xi0)^ell   in L^q(H)
///  Second: h -> |det h|^(-1/2-1/q) (1+||h||)^(s+3) w(h) A(h^-T xi0)^ell in L^1(H)
/// with xi0 the orbit base point and s taken from the weight spec.
enum class EmbeddingCondition { First, Second };

double embeddedness_integrand(EmbeddingCondition which, double q, const WeightSpec& weight, int ell,
                              const DilationParams& h);

/// Norm of the integrand over the chart box of level `level` (k = 2 level):
/// |a| in [2^-k, 2^k] (modulus for the similitude group, both entries for the diagonal group),
/// |b| <= 2^k for the shearlet group. Composite Gauss-Legendre quadrature in log coordinates.
double embeddedness_condition(const GroupFamily& family, EmbeddingCondition which, double q, const WeightSpec& weight,
                              int ell, int level);

/// values[ell - ell_min][level - 1] for both conditions, computed in one sweep.
struct EmbeddingTable {
  int ell_min = 0;
  int levels = 0;
  std::vector<std::vector<double>> first;
  std::vector<std::vector<double>> second;
};

EmbeddingTable embeddedness_table(const GroupFamily& family, double q, const WeightSpec& weight, int ell_min,
                                  int ell_max, int levels);

enum class Verdict { Converged, Diverged };

struct TruncationVerdict {
  Verdict verdict = Verdict::Diverged;
  double estimate = 0.0;        ///< value at the last level
  double growth_exponent = 0.0; ///< slope of log value against log 2^k over the last three levels
};

/// Converged when the last two increments are below `rel_tol` times the current value.
TruncationVerdict truncation_verdict(const std::vector<double>& values, double rel_tol = 0.01);

struct EmbeddednessReport {
  GroupFamily family;
  double q = 2.0;
  WeightSpec weight;
  EmbeddingTable table;
  std::vector<TruncationVerdict> first;
  std::vector<TruncationVerdict> second;
  std::optional<int> minimal_ell;
};

/// Verdicts for every ell in [ell_min, ell_max]; needs at least four levels.
EmbeddednessReport embeddedness_verdict(const GroupFamily& family, double q, const WeightSpec& weight, int ell_min,
                                        int ell_max, int levels = 6);

} // namespace coorbit
