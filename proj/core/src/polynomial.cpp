#include "eit/polynomial.hpp"

#include <cmath>
#include <functional>
#include <vector>

#include "eit/error.hpp"

namespace eit {

Polynomial Polynomial::constant(Complex c) { return monomial(0, 0, c); }

Polynomial Polynomial::monomial(int i, int j, Complex c) {
  if (i < 0 || j < 0) fail(Errc::InvalidArgument, "monomial exponents must be nonnegative");
  Polynomial p;
  p.add(i, j, c);
  return p;
}

void Polynomial::add(int i, int j, Complex c) {
  if (c == Complex{0.0, 0.0}) return;
  auto [it, inserted] = terms_.emplace(std::pair{i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{0.0, 0.0}) terms_.erase(it);
  }
}

Complex Polynomial::operator()(Point p) const {
  Complex s{0.0, 0.0};
  for (const auto& [e, c] : terms_) s += c * std::pow(p.x, e.first) * std::pow(p.y, e.second);
  return s;
}

Polynomial Polynomial::dx() const {
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    if (e.first > 0) out.add(e.first - 1, e.second, c * static_cast<double>(e.first));
  }
  return out;
}

Polynomial Polynomial::dy() const {
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    if (e.second > 0) out.add(e.first, e.second - 1, c * static_cast<double>(e.second));
  }
  return out;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
  return d;
}

bool Polynomial::is_zero(double tol) const {
  for (const auto& [e, c] : terms_) {
    if (std::abs(c) > tol) return false;
  }
  return true;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [e, c] : b.terms_) out.add(e.first, e.second, c);
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + Complex{-1.0, 0.0} * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) out.add(ea.first + eb.first, ea.second + eb.second, ca * cb);
  }
  return out;
}

Polynomial operator*(Complex s, const Polynomial& a) {
  Polynomial out;
  for (const auto& [e, c] : a.terms_) out.add(e.first, e.second, s * c);
  return out;
}

std::vector<std::pair<double, double>> gauss_legendre(int n, double a, double b) {
  if (n < 1) fail(Errc::InvalidArgument, "quadrature order must be positive");
  std::vector<std::pair<double, double>> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out[static_cast<std::size_t>(i)] = {0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * w};
  }
  return out;
}

Complex integrate_disk(const std::function<Complex(Point)>& fn, double radius, int order) {
  const auto radial = gauss_legendre(order / 2 + 2, 0.0, radius);
  const int m = order + 2;
  Complex s{0.0, 0.0};
  for (const auto& [r, w] : radial) {
    for (int k = 0; k < m; ++k) s += w * r * fn(from_polar(r, kTwoPi * k / m));
  }
  return s * (kTwoPi / m);
}

Complex integrate_circle(const std::function<Complex(Point, Point)>& fn, double radius, int order) {
  const int m = order + 2;
  Complex s{0.0, 0.0};
  for (int k = 0; k < m; ++k) {
    const double t = kTwoPi * k / m;
    s += fn(from_polar(radius, t), from_polar(1.0, t));
  }
  return s * (kTwoPi * radius / m);
}

}  // namespace eit
