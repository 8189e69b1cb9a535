#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "eit/point.hpp"
#include "eit/scenario.hpp"

namespace eit {

/// Complex bivariate polynomial sum c_{ij} x^i y^j.
class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial constant(Complex c);
  static Polynomial monomial(int i, int j, Complex c = 1.0);

  Complex operator()(Point p) const;
  Polynomial dx() const;
  Polynomial dy() const;
  int degree() const;
  bool is_zero(double tol = 0.0) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Complex s, const Polynomial& a);

  const std::map<std::pair<int, int>, Complex>& terms() const { return terms_; }

 private:
  void add(int i, int j, Complex c);
  std::map<std::pair<int, int>, Complex> terms_;
};

struct VectorPolynomial {
  Polynomial x;
  Polynomial y;

  static VectorPolynomial gradient(const Polynomial& p) { return {p.dx(), p.dy()}; }
  Polynomial divergence() const { return x.dx() + y.dy(); }
  /// Scalar curl d_x v_y - d_y v_x.
  Polynomial curl() const { return y.dx() - x.dy(); }
};

/// Gauss-Legendre nodes and weights on [a, b].
std::vector<std::pair<double, double>> gauss_legendre(int n, double a, double b);

/// Integral of a function over the disk of radius r centred at the origin,
/// exact for polynomials of total degree below `order`.
Complex integrate_disk(const std::function<Complex(Point)>& fn, double radius, int order = 24);
/// Integral over the circle of radius r with respect to arc length; fn
/// receives the point and its outward unit normal.
Complex integrate_circle(const std::function<Complex(Point, Point)>& fn, double radius, int order = 24);

}  // namespace eit
