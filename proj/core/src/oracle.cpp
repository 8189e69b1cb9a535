#include "eit/oracle.hpp"

#include <cmath>

#include "eit/error.hpp"

namespace eit {

namespace {

void check_radius(double r0) {
  if (!(r0 > 0.0 && r0 < 1.0)) fail(Errc::InvalidArgument, "inner radius must lie in (0, 1)");
}

void check_positive(double g, const char* what) {
  if (!(g > 0.0) || !std::isfinite(g)) fail(Errc::InvalidArgument, std::string(what) + " must be positive");
}

}  // namespace

double RadialProfile::value(double r) const {
  if (n == 0) return a + b * std::log(r);
  return a * std::pow(r, n) + b * std::pow(r, -n);
}

double RadialProfile::derivative(double r) const {
  if (n == 0) return b / r;
  return n * (a * std::pow(r, n - 1) - b * std::pow(r, -n - 1));
}

AnnulusMode annulus_mode(int n, double r0, AnnulusBc bc, double gamma) {
  if (n < 0) fail(Errc::InvalidArgument, "mode number must be non-negative");
  check_radius(r0);
  check_positive(gamma, "conductivity");
  AnnulusMode m;
  m.profile.n = n;
  if (n == 0) {
    m.profile.a = 1.0;
    m.profile.b = bc == AnnulusBc::SoundSoft ? -1.0 / std::log(r0) : 0.0;
  } else {
    const double q = std::pow(r0, 2 * n);
    const double s = bc == AnnulusBc::SoundSoft ? -1.0 : 1.0;
    m.profile.a = 1.0 / (1.0 + s * q);
    m.profile.b = s * q * m.profile.a;
  }
  m.kappa = gamma * m.profile.derivative(1.0);
  return m;
}

double two_layer_mode(int n, double r0, double gamma_in, double gamma_out) {
  if (n < 1) fail(Errc::InvalidArgument, "two-layer mode number must be at least 1");
  check_radius(r0);
  check_positive(gamma_in, "inner conductivity");
  check_positive(gamma_out, "outer conductivity");
  const double mu = (gamma_in - gamma_out) / (gamma_in + gamma_out);
  const double q = mu * std::pow(r0, 2 * n);
  return gamma_out * n * (1.0 + q) / (1.0 - q);
}

double disk_green(Point x, Point y, double c) {
  check_positive(c, "conductivity");
  const double ry = norm(y);
  if (!(ry < 1.0)) fail(Errc::InvalidArgument, "source must lie inside the unit disk");
  const double d = distance(x, y);
  if (!(d > 0.0)) fail(Errc::CoincidentPoints, "Green function evaluated at its source");
  if (ry == 0.0) return -std::log(d) / (kTwoPi * c);
  const Point image = (1.0 / (ry * ry)) * y;
  return std::log(distance(x, image) * ry / d) / (kTwoPi * c);
}

}  // namespace eit
