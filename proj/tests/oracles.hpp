#pragma once

// Reference computations that share no code with the library.

#include <cmath>
#include <functional>
#include <string>

namespace oracle {

inline std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

/// Five-point central difference, O(h^4).
inline double derivative(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

/// int_0^upper y^(p-1) (1-y)^(q-1) dy by the midpoint rule on `panels` cells.
/// The endpoint singularities are subtracted analytically:
/// y^(p-1)(1-y)^(q-1) = a + b - 1 + (a-1)(b-1), a = y^(p-1), b = (1-y)^(q-1).
inline double beta_midpoint(double upper, double p, double q, long panels = 1000000) {
  if (upper <= 0.0) return 0.0;
  const double analytic =
      std::pow(upper, p) / p + (1.0 - std::pow(1.0 - upper, q)) / q - upper;
  const double h = upper / panels;
  double sum = 0.0;
  for (long k = 0; k < panels; ++k) {
    const double y = (k + 0.5) * h;
    sum += (std::pow(y, p - 1) - 1.0) * (std::pow(1.0 - y, q - 1) - 1.0);
  }
  return analytic + sum * h;
}

/// Composite Simpson rule on n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// alpha(xi) straight from its closed form, with T evaluated independently.
inline double alpha_closed(double xi, double G, double h, double xi1) {
  const double x = xi + xi1;
  const double T = h > 0 ? std::sinh(h * x) / h : h < 0 ? std::sin(h * x) / h : x;
  const double A = G / (G + 1);
  return (A / 2) * (1.5 + 2 / G) * std::log(A / (G * T * T));
}

inline double relative(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace oracle
