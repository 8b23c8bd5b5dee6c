#pragma once

#include "coorbit/group.hpp"

namespace coorbit {

/// The open dual orbit of a family together with its base point.
struct OrbitData {
  GroupFamily family;
  Vec2 base_point;
};

OrbitData orbit_data(const GroupFamily& family);

bool in_orbit(const GroupFamily& family, const Vec2& xi);
double orbit_polynomial(const GroupFamily& family, const Vec2& xi);
/// Degree of orbit_polynomial.
int orbit_polynomial_degree(const GroupFamily& family);

/// Euclidean distance from xi to the orbit complement.
double dist_complement(const GroupFamily& family, const Vec2& xi);
/// A point of the complement realizing dist_complement.
Vec2 nearest_complement_point(const GroupFamily& family, const Vec2& xi);

/// min(d / (1 + sqrt(|xi|^2 - d^2)), 1 / (1 + |xi|)) with d = dist_complement.
double aux_A(const GroupFamily& family, const Vec2& xi);
/// Per-family closed forms using the l1 norm where the family displays do.
double aux_A_closed(const GroupFamily& family, const Vec2& xi);

} // namespace coorbit
