#include "stgp/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "stgp/error.hpp"

namespace stgp {

namespace {

void add_point(QuadratureRule& r, Barycentric b, double w) {
  r.points.push_back(b);
  r.weights.push_back(w);
}

// Fully symmetric orbits on the triangle; w is normalized to area 1.
void orbit3(QuadratureRule& r, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  add_point(r, {a, a, b, 0}, 0.5 * w);
  add_point(r, {a, b, a, 0}, 0.5 * w);
  add_point(r, {b, a, a, 0}, 0.5 * w);
}

void orbit6(QuadratureRule& r, double a, double b, double w) {
  const double c = 1.0 - a - b;
  add_point(r, {a, b, c, 0}, 0.5 * w);
  add_point(r, {a, c, b, 0}, 0.5 * w);
  add_point(r, {b, a, c, 0}, 0.5 * w);
  add_point(r, {b, c, a, 0}, 0.5 * w);
  add_point(r, {c, a, b, 0}, 0.5 * w);
  add_point(r, {c, b, a, 0}, 0.5 * w);
}

// Dunavant rules; all weights positive.
QuadratureRule triangle_rule(int order) {
  QuadratureRule r;
  r.dim = 2;
  switch (order) {
    case 1:
      r.order = 1;
      add_point(r, {1.0 / 3, 1.0 / 3, 1.0 / 3, 0}, 0.5);
      break;
    case 2:
      r.order = 2;
      orbit3(r, 1.0 / 6.0, 1.0 / 3.0);
      break;
    case 3:
    case 4:
      r.order = 4;
      orbit3(r, 0.44594849091596488632, 0.22338158967801146570);
      orbit3(r, 0.091576213509770743460, 0.10995174365532186764);
      break;
    case 5:
      r.order = 5;
      add_point(r, {1.0 / 3, 1.0 / 3, 1.0 / 3, 0}, 0.5 * 0.225);
      orbit3(r, 0.47014206410511508977, 0.13239415278850618074);
      orbit3(r, 0.10128650732345633880, 0.12593918054482715260);
      break;
    default:
      r.order = 6;
      orbit3(r, 0.24928674517091042129, 0.11678627572637936603);
      orbit3(r, 0.063089014491502228340, 0.050844906370206816921);
      orbit6(r, 0.053145049844816947353, 0.31035245103378440542, 0.082851075618373575194);
      break;
  }
  return r;
}

// Collapsed-coordinate product rule: x = u, y = (1-u) v, z = (1-u)(1-v) w.
QuadratureRule tetrahedron_rule(int order) {
  QuadratureRule r;
  r.dim = 3;
  r.order = order;
  if (order == 1) {
    add_point(r, {0.25, 0.25, 0.25, 0.25}, 1.0 / 6.0);
    return r;
  }
  if (order == 2) {
    const double a = 0.13819660112501051518;
    const double b = 1.0 - 3.0 * a;
    add_point(r, {b, a, a, a}, 1.0 / 24.0);
    add_point(r, {a, b, a, a}, 1.0 / 24.0);
    add_point(r, {a, a, b, a}, 1.0 / 24.0);
    add_point(r, {a, a, a, b}, 1.0 / 24.0);
    return r;
  }
  const auto gu = gauss_legendre((order + 3 + 1) / 2);
  const auto gv = gauss_legendre((order + 2 + 1) / 2);
  const auto gw = gauss_legendre((order + 1 + 1) / 2);
  for (std::size_t i = 0; i < gu.size(); ++i) {
    const double u = gu.coordinate(i);
    for (std::size_t j = 0; j < gv.size(); ++j) {
      const double v = gv.coordinate(j);
      for (std::size_t k = 0; k < gw.size(); ++k) {
        const double w = gw.coordinate(k);
        const double x = u;
        const double y = (1.0 - u) * v;
        const double z = (1.0 - u) * (1.0 - v) * w;
        const double jac = (1.0 - u) * (1.0 - u) * (1.0 - v);
        add_point(r, {1.0 - x - y - z, x, y, z}, gu.weights[i] * gv.weights[j] * gw.weights[k] * jac);
      }
    }
  }
  return r;
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw ArgumentError("Gauss-Legendre needs at least one point");
  QuadratureRule r;
  r.dim = 1;
  r.order = 2 * n - 1;
  r.points.resize(n);
  r.weights.resize(n);
  // Newton iteration on P_n from the Chebyshev initial guess, on [-1, 1].
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
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Ascending order on [0, 1].
    const double s = 0.5 * (1.0 - x);
    r.points[i] = {1.0 - s, s, 0.0, 0.0};
    r.weights[i] = 0.5 * w;
  }
  return r;
}

QuadratureRule simplex_quadrature(int dim, int order) {
  if (order < 1 || order > kMaxQuadratureOrder) {
    throw ArgumentError("unsupported quadrature order " + std::to_string(order) +
                        " (supported: 1..6)");
  }
  switch (dim) {
    case 1:
      return gauss_legendre((order + 2) / 2);
    case 2:
      return triangle_rule(order);
    case 3:
      return tetrahedron_rule(order);
    default:
      throw ArgumentError("quadrature dimension must be 1, 2 or 3");
  }
}

}  // namespace stgp
