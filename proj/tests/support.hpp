#pragma once

#include "coorbit/group.hpp"

#include <cmath>
#include <complex>
#include <random>

namespace testsupport {

using coorbit::DilationParams;
using coorbit::GroupFamily;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline double random_sign() { return uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0; }

// log-uniform magnitude in [2^-k, 2^k] with a random sign
inline double random_scale(double k = 3.0) { return random_sign() * std::exp2(uniform(-k, k)); }

inline DilationParams random_element(const GroupFamily& fam) {
  switch (fam.tag) {
  case coorbit::FamilyTag::Similitude: {
    const double r = std::exp2(uniform(-3, 3)), th = uniform(-M_PI, M_PI);
    return {fam, r * std::cos(th), r * std::sin(th)};
  }
  case coorbit::FamilyTag::Diagonal: return {fam, random_scale(), random_scale()};
  case coorbit::FamilyTag::Shearlet: return {fam, random_scale(), uniform(-4, 4)};
  case coorbit::FamilyTag::ScalarReducible: return {fam, std::exp2(uniform(-3, 3)), 0.0};
  }
  return {fam, 1, 0};
}

inline std::vector<GroupFamily> orbit_families() {
  return {GroupFamily::similitude(), GroupFamily::diagonal(), GroupFamily::shearlet(0.5), GroupFamily::shearlet(2.0)};
}

inline std::vector<GroupFamily> all_families() {
  auto v = orbit_families();
  v.push_back(GroupFamily::scalar());
  return v;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

} // namespace testsupport

namespace testsupport {

// Smooth function on G: a gaussian in x times a bump in chart coordinates of h.
struct GroupGaussian {
  coorbit::Vec2 center;
  double sigma;
  double m1, m2, tau;

  std::complex<double> operator()(const coorbit::AffinePoint& z) const {
    const auto& h = z.h;
    double c1 = 0, c2 = 0, chart = 0;
    switch (h.family.tag) {
    case coorbit::FamilyTag::Similitude:
      c1 = 0.5 * std::log(h.a * h.a + h.b * h.b);
      chart = -(c1 - m1) * (c1 - m1) / tau + 2.0 * std::cos(std::atan2(h.b, h.a) - m2);
      break;
    case coorbit::FamilyTag::Diagonal:
      c1 = std::log(std::abs(h.a));
      c2 = std::log(std::abs(h.b));
      chart = -((c1 - m1) * (c1 - m1) + (c2 - m2) * (c2 - m2)) / tau + 0.5 * (h.a > 0) - 0.3 * (h.b > 0);
      break;
    case coorbit::FamilyTag::Shearlet:
      c1 = std::log(std::abs(h.a));
      c2 = h.b / h.a;
      chart = -((c1 - m1) * (c1 - m1) + (c2 - m2) * (c2 - m2)) / tau + 0.4 * (h.a > 0);
      break;
    case coorbit::FamilyTag::ScalarReducible:
      c1 = std::log(h.a);
      chart = -(c1 - m1) * (c1 - m1) / tau;
      break;
    }
    return std::exp(-(z.x - center).squaredNorm() / (2 * sigma * sigma) + chart);
  }
};

inline GroupGaussian random_group_gaussian() {
  return {coorbit::Vec2(uniform(-1, 1), uniform(-1, 1)), uniform(0.8, 1.2), uniform(-0.5, 0.5), uniform(-0.5, 0.5),
          uniform(0.3, 0.6)};
}

} // namespace testsupport
