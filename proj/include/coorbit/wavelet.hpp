#pragma once

#include "coorbit/grid.hpp"
#include "coorbit/orbit.hpp"

#include <utility>

namespace coorbit {

enum class WaveletKind { Bump, Moment };

struct WaveletSpec {
  WaveletKind kind = WaveletKind::Bump;
  Vec2 center = Vec2(1.0, 0.0);
  double radius = 0.5;
  int order = 1;
  double envelope_sigma = 1.0;
};

/// Default bump: a ball of radius 0.5 around the orbit base point.
WaveletSpec default_bump(const GroupFamily& family);

/// exp(-1/(1-t^2)) for |t| < 1, else 0.
double bump_profile(double t);

/// Smooth bump supported in a closed ball inside the orbit, unit L2 norm on the grid.
SampledField bump_wavelet(const GroupFamily& family, const WaveletSpec& spec, const FrequencyGrid& grid);
/// P(xi)^s exp(-pi |xi|^2 / sigma^2), unit L2 norm on the grid.
SampledField moment_wavelet(const GroupFamily& family, const WaveletSpec& spec, const FrequencyGrid& grid);
SampledField make_wavelet(const GroupFamily& family, const WaveletSpec& spec, const FrequencyGrid& grid);

/// Radial bump psi0 on [r1, r2] scaled so that int |psi0(s)|^2 ds / s = 1.
struct RadialBump {
  double r1, r2, scale;
  double operator()(double s) const;
};
RadialBump make_radial_bump(double r1, double r2);

/// f^(xi) = psi0(|xi|) and g^(xi) = sign(xi_1) f^(xi) with sign(0) = 0.
std::pair<SampledField, SampledField> counterexample_pair(const FrequencyGrid& grid, double r1, double r2);

/// sup over interior grid points and |alpha| <= r of (1 + |p|)^m |d^alpha f(p)|.
double schwartz_seminorm(const SampledField& field, int r, double m);

/// Finite-difference partial derivative d1^a1 d2^a2 on interior points (zero on the margin).
SampledField partial_derivative(const SampledField& field, int a1, int a2);

struct MomentSlope {
  double slope = 0.0;
  bool compactly_supported = false; ///< exact zeros next to the complement
  int seeds_used = 0;
};

/// Estimated vanishing order of a frequency field at the orbit complement.
MomentSlope moment_slope(const SampledField& field, const GroupFamily& family);

/// Grid maximum of |f(xi)| / A(xi)^exponent over orbit points.
double envelope_constant(const SampledField& field, const GroupFamily& family, double exponent);

} // namespace coorbit
