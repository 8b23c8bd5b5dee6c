#pragma once

#include <Eigen/Core>

#include <functional>
#include <string>

namespace coorbit {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

enum class FamilyTag { Similitude, Diagonal, Shearlet, ScalarReducible };

/// One of the supported two-dimensional dilation groups.
///
/// The shearlet family carries its anisotropy exponent `c`; the other
/// families are parameter free.  `ScalarReducible` is the group of positive
/// scalar dilations, whose quasi-regular representation is reducible.
struct GroupFamily {
  FamilyTag tag = FamilyTag::Similitude;
  double aniso_c = 0.0;

  static GroupFamily similitude() { return {FamilyTag::Similitude, 0.0}; }
  static GroupFamily diagonal() { return {FamilyTag::Diagonal, 0.0}; }
  static GroupFamily shearlet(double c);
  static GroupFamily scalar() { return {FamilyTag::ScalarReducible, 0.0}; }

  bool admissible() const { return tag != FamilyTag::ScalarReducible; }
  std::string name() const;

  friend bool operator==(const GroupFamily& l, const GroupFamily& r) {
    return l.tag == r.tag && (l.tag != FamilyTag::Shearlet || l.aniso_c == r.aniso_c);
  }
};

/// Throws Unsupported when the family has no single open dual orbit.
void require_admissible(const GroupFamily& family, const char* what);

/// Chart coordinates of one element of a dilation group.
struct DilationParams {
  GroupFamily family;
  double a = 1.0;
  double b = 0.0;
};

/// Throws InvalidElement unless the chart constraint holds.
void validate(const DilationParams& h);
bool is_valid(const DilationParams& h);

DilationParams identity(const GroupFamily& family);

/// sign(a) |a|^c
double signed_pow(double a, double c);

Mat2 to_matrix(const DilationParams& h);
DilationParams compose(const DilationParams& h1, const DilationParams& h2);
DilationParams invert(const DilationParams& h);

double determinant(const DilationParams& h);
double modular_H(const DilationParams& h);
double modular_G(const Vec2& x, const DilationParams& h);
/// Density of left Haar measure of H with respect to da db (da for the scalar group).
double haar_density(const DilationParams& h);

/// h^T xi; a right action of H on frequency space.
Vec2 dual_action(const DilationParams& h, const Vec2& xi);

/// The per-family matrix norm used for the examples of admissible groups.
double group_norm(const DilationParams& h);
/// Operator norm of to_matrix(h) on euclidean R^2.
double operator_norm(const DilationParams& h);

enum class NormChoice { Family, Operator };
double matrix_norm(const DilationParams& h, NormChoice choice);

/// Element (x, h) of the affine group G = R^2 x| H.
struct AffinePoint {
  Vec2 x = Vec2::Zero();
  DilationParams h;
};

AffinePoint affine_identity(const GroupFamily& family);
AffinePoint affine_compose(const AffinePoint& p, const AffinePoint& q);
AffinePoint affine_invert(const AffinePoint& p);
Vec2 affine_apply(const AffinePoint& p, const Vec2& y);

/// Rectangle in the chart (a, b) used for Haar quadrature.
struct ChartBox {
  double a_min, a_max;
  double b_min, b_max;
};

/// Midpoint-rule quadrature of F against left Haar measure over a chart box.
///
/// The a-axis is sampled in log|a| when the box does not straddle zero, which
/// matches the multiplicative structure of the scale coordinate.
double integrate_haar(const GroupFamily& family, const std::function<double(const DilationParams&)>& F,
                      const ChartBox& box, int n_a, int n_b);

} // namespace coorbit
