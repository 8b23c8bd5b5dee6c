#include "coorbit/group.hpp"

#include "coorbit/error.hpp"

#include <cmath>
#include <sstream>

namespace coorbit {

namespace {

constexpr double kChartFloor = 1e-300;

void same_family(const DilationParams& h1, const DilationParams& h2) {
  if (!(h1.family == h2.family))
    throw FamilyMismatch("elements belong to different families: " + h1.family.name() + " vs " + h2.family.name());
}

} // namespace

GroupFamily GroupFamily::shearlet(double c) {
  if (!std::isfinite(c)) throw InvalidArgument("shearlet exponent c must be finite");
  return {FamilyTag::Shearlet, c};
}

std::string GroupFamily::name() const {
  switch (tag) {
  case FamilyTag::Similitude: return "similitude";
  case FamilyTag::Diagonal: return "diagonal";
  case FamilyTag::Shearlet: {
    std::ostringstream os;
    os << "shearlet(c=" << aniso_c << ")";
    return os.str();
  }
  case FamilyTag::ScalarReducible: return "scalar";
  }
  return "?";
}

void require_admissible(const GroupFamily& family, const char* what) {
  if (!family.admissible())
    throw Unsupported(std::string(what) + ": scalar dilation group has no single open dual orbit");
}

bool is_valid(const DilationParams& h) {
  const double a = h.a, b = h.b;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  switch (h.family.tag) {
  case FamilyTag::Similitude: return a * a + b * b > kChartFloor;
  case FamilyTag::Diagonal: return std::abs(a) > kChartFloor && std::abs(b) > kChartFloor;
  case FamilyTag::Shearlet: return std::abs(a) > kChartFloor && std::isfinite(h.family.aniso_c);
  case FamilyTag::ScalarReducible: return a > kChartFloor && b == 0.0;
  }
  return false;
}

void validate(const DilationParams& h) {
  if (!is_valid(h)) {
    std::ostringstream os;
    os << "invalid " << h.family.name() << " element (a=" << h.a << ", b=" << h.b << ")";
    throw InvalidElement(os.str());
  }
}

DilationParams identity(const GroupFamily& family) {
  switch (family.tag) {
  case FamilyTag::Diagonal: return {family, 1.0, 1.0};
  default: return {family, 1.0, 0.0};
  }
}

double signed_pow(double a, double c) { return std::copysign(std::pow(std::abs(a), c), a); }

Mat2 to_matrix(const DilationParams& h) {
  validate(h);
  Mat2 m;
  switch (h.family.tag) {
  case FamilyTag::Similitude: m << h.a, h.b, -h.b, h.a; break;
  case FamilyTag::Diagonal: m << h.a, 0.0, 0.0, h.b; break;
  case FamilyTag::Shearlet: m << h.a, h.b, 0.0, signed_pow(h.a, h.family.aniso_c); break;
  case FamilyTag::ScalarReducible: m << h.a, 0.0, 0.0, h.a; break;
  }
  return m;
}

DilationParams compose(const DilationParams& h1, const DilationParams& h2) {
  same_family(h1, h2);
  validate(h1);
  validate(h2);
  DilationParams r{h1.family, 0.0, 0.0};
  switch (h1.family.tag) {
  case FamilyTag::Similitude:
    // [[a,b],[-b,a]] multiplies like a + ib
    r.a = h1.a * h2.a - h1.b * h2.b;
    r.b = h1.a * h2.b + h1.b * h2.a;
    break;
  case FamilyTag::Diagonal:
    r.a = h1.a * h2.a;
    r.b = h1.b * h2.b;
    break;
  case FamilyTag::Shearlet:
    r.a = h1.a * h2.a;
    r.b = h1.a * h2.b + h1.b * signed_pow(h2.a, h1.family.aniso_c);
    break;
  case FamilyTag::ScalarReducible: r.a = h1.a * h2.a; break;
  }
  return r;
}

DilationParams invert(const DilationParams& h) {
  validate(h);
  DilationParams r{h.family, 0.0, 0.0};
  switch (h.family.tag) {
  case FamilyTag::Similitude: {
    const double r2 = h.a * h.a + h.b * h.b;
    r.a = h.a / r2;
    r.b = -h.b / r2;
    break;
  }
  case FamilyTag::Diagonal:
    r.a = 1.0 / h.a;
    r.b = 1.0 / h.b;
    break;
  case FamilyTag::Shearlet:
    r.a = 1.0 / h.a;
    r.b = -h.b / (h.a * signed_pow(h.a, h.family.aniso_c));
    break;
  case FamilyTag::ScalarReducible: r.a = 1.0 / h.a; break;
  }
  return r;
}

double determinant(const DilationParams& h) {
  validate(h);
  switch (h.family.tag) {
  case FamilyTag::Similitude: return h.a * h.a + h.b * h.b;
  case FamilyTag::Diagonal: return h.a * h.b;
  case FamilyTag::Shearlet: return h.a * signed_pow(h.a, h.family.aniso_c);
  case FamilyTag::ScalarReducible: return h.a * h.a;
  }
  return 0.0;
}

double modular_H(const DilationParams& h) {
  validate(h);
  if (h.family.tag == FamilyTag::Shearlet) return std::pow(std::abs(h.a), h.family.aniso_c - 1.0);
  return 1.0;
}

double modular_G(const Vec2& /*x*/, const DilationParams& h) { return modular_H(h) / std::abs(determinant(h)); }

double haar_density(const DilationParams& h) {
  validate(h);
  switch (h.family.tag) {
  case FamilyTag::Similitude: return 1.0 / (h.a * h.a + h.b * h.b);
  case FamilyTag::Diagonal: return 1.0 / std::abs(h.a * h.b);
  case FamilyTag::Shearlet: return 1.0 / (h.a * h.a);
  case FamilyTag::ScalarReducible: return 1.0 / h.a;
  }
  return 0.0;
}

Vec2 dual_action(const DilationParams& h, const Vec2& xi) { return to_matrix(h).transpose() * xi; }

double group_norm(const DilationParams& h) {
  validate(h);
  switch (h.family.tag) {
  case FamilyTag::Similitude: return std::hypot(h.a, h.b);
  case FamilyTag::Diagonal: return std::max(std::abs(h.a), std::abs(h.b));
  case FamilyTag::Shearlet:
    return std::max({std::abs(h.a), std::pow(std::abs(h.a), h.family.aniso_c), std::abs(h.b)});
  case FamilyTag::ScalarReducible: return h.a;
  }
  return 0.0;
}

double operator_norm(const DilationParams& h) {
  const Mat2 m = to_matrix(h);
  // largest singular value of a 2x2 matrix
  const double fro2 = m.squaredNorm();
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const double disc = std::sqrt(std::max(0.0, fro2 * fro2 - 4.0 * det * det));
  return std::sqrt(0.5 * (fro2 + disc));
}

double matrix_norm(const DilationParams& h, NormChoice choice) {
  return choice == NormChoice::Family ? group_norm(h) : operator_norm(h);
}

AffinePoint affine_identity(const GroupFamily& family) { return {Vec2::Zero(), identity(family)}; }

AffinePoint affine_compose(const AffinePoint& p, const AffinePoint& q) {
  same_family(p.h, q.h);
  return {p.x + to_matrix(p.h) * q.x, compose(p.h, q.h)};
}

AffinePoint affine_invert(const AffinePoint& p) {
  const DilationParams hi = invert(p.h);
  return {-(to_matrix(hi) * p.x), hi};
}

Vec2 affine_apply(const AffinePoint& p, const Vec2& y) { return p.x + to_matrix(p.h) * y; }

double integrate_haar(const GroupFamily& family, const std::function<double(const DilationParams&)>& F,
                      const ChartBox& box, int n_a, int n_b) {
  if (n_a < 1 || n_b < 1) throw InvalidArgument("integrate_haar: node counts must be positive");
  if (!(box.a_max > box.a_min)) throw InvalidArgument("integrate_haar: empty a-range");
  const bool scalar = family.tag == FamilyTag::ScalarReducible;
  if (!scalar && !(box.b_max > box.b_min)) throw InvalidArgument("integrate_haar: empty b-range");
  const bool log_a = box.a_min > 0.0;
  const double ua0 = log_a ? std::log(box.a_min) : box.a_min;
  const double ua1 = log_a ? std::log(box.a_max) : box.a_max;
  const double da = (ua1 - ua0) / n_a;
  const int nb = scalar ? 1 : n_b;
  const double db = scalar ? 1.0 : (box.b_max - box.b_min) / n_b;
  double total = 0.0;
  for (int i = 0; i < n_a; ++i) {
    const double u = ua0 + (i + 0.5) * da;
    const double a = log_a ? std::exp(u) : u;
    const double jac = log_a ? a : 1.0;
    double row = 0.0;
    for (int j = 0; j < nb; ++j) {
      DilationParams h{family, a, scalar ? 0.0 : box.b_min + (j + 0.5) * db};
      if (!is_valid(h)) continue;
      const double v = F(h);
      if (v != 0.0) row += v * haar_density(h);
    }
    total += row * jac;
  }
  return total * da * db;
}

} // namespace coorbit
