#pragma once

#include "eit/point.hpp"

namespace eit {

enum class AnnulusBc { SoundSoft, Neumann };

/// Radial profile u(r) of a separated harmonic on an annulus:
/// a r^n + b r^-n for n >= 1, a + b ln r for n = 0.
struct RadialProfile {
  int n = 0;
  double a = 0.0;
  double b = 0.0;

  double value(double r) const;
  double derivative(double r) const;
};

struct AnnulusMode {
  RadialProfile profile;
  double kappa = 0.0;  // gamma u'(1)
};

/// Harmonic function on r0 < r < 1 equal to e^{in theta} at r = 1, with the
/// given condition at r = r0.
AnnulusMode annulus_mode(int n, double r0, AnnulusBc bc, double gamma);

/// D-N eigenvalue of the disk with conductivity gamma_in on r < r0 and
/// gamma_out on r0 < r < 1 for the mode e^{in theta}, n >= 1.
double two_layer_mode(int n, double r0, double gamma_in, double gamma_out);

/// Dirichlet Green function of the unit disk with constant conductivity c,
/// by the image point y / |y|^2.
double disk_green(Point x, Point y, double c);

}  // namespace eit
