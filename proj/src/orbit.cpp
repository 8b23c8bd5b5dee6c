#include "coorbit/orbit.hpp"

#include "coorbit/error.hpp"

#include <cmath>
#include <sstream>

namespace coorbit {

namespace {

void require_on_orbit(const GroupFamily& family, const Vec2& xi, const char* what) {
  if (!in_orbit(family, xi)) {
    std::ostringstream os;
    os << what << ": point (" << xi(0) << ", " << xi(1) << ") is not in the dual orbit of " << family.name();
    throw DomainError(os.str());
  }
}

} // namespace

OrbitData orbit_data(const GroupFamily& family) {
  require_admissible(family, "orbit_data");
  if (family.tag == FamilyTag::Diagonal) return {family, Vec2(1.0, 1.0)};
  return {family, Vec2(1.0, 0.0)};
}

double orbit_polynomial(const GroupFamily& family, const Vec2& xi) {
  require_admissible(family, "orbit_polynomial");
  switch (family.tag) {
  case FamilyTag::Similitude: return xi(0) * xi(0) + xi(1) * xi(1);
  case FamilyTag::Diagonal: return xi(0) * xi(1);
  default: return xi(0);
  }
}

int orbit_polynomial_degree(const GroupFamily& family) {
  require_admissible(family, "orbit_polynomial_degree");
  return family.tag == FamilyTag::Shearlet ? 1 : 2;
}

bool in_orbit(const GroupFamily& family, const Vec2& xi) { return orbit_polynomial(family, xi) != 0.0; }

double dist_complement(const GroupFamily& family, const Vec2& xi) {
  require_admissible(family, "dist_complement");
  switch (family.tag) {
  case FamilyTag::Similitude: return xi.norm();
  case FamilyTag::Diagonal: return std::min(std::abs(xi(0)), std::abs(xi(1)));
  default: return std::abs(xi(0));
  }
}

Vec2 nearest_complement_point(const GroupFamily& family, const Vec2& xi) {
  require_admissible(family, "nearest_complement_point");
  switch (family.tag) {
  case FamilyTag::Similitude: return Vec2::Zero();
  case FamilyTag::Diagonal:
    return std::abs(xi(0)) <= std::abs(xi(1)) ? Vec2(0.0, xi(1)) : Vec2(xi(0), 0.0);
  default: return Vec2(0.0, xi(1));
  }
}

double aux_A(const GroupFamily& family, const Vec2& xi) {
  require_on_orbit(family, xi, "aux_A");
  const double d = dist_complement(family, xi);
  const double r = xi.norm();
  const double tangential = std::sqrt(std::max(0.0, r * r - d * d));
  return std::min(d / (1.0 + tangential), 1.0 / (1.0 + r));
}

double aux_A_closed(const GroupFamily& family, const Vec2& xi) {
  require_on_orbit(family, xi, "aux_A_closed");
  const double x1 = std::abs(xi(0)), x2 = std::abs(xi(1));
  switch (family.tag) {
  case FamilyTag::Similitude: {
    const double r = xi.norm();
    return std::min(r, 1.0 / (1.0 + r));
  }
  case FamilyTag::Diagonal:
    return std::min(std::min(x1, x2) / (1.0 + std::max(x1, x2)), 1.0 / (1.0 + x1 + x2));
  default: return std::min(x1 / (1.0 + x2), 1.0 / (1.0 + x1 + x2));
  }
}

} // namespace coorbit
