#include "uncert/statefam.hpp"

#include <cmath>
#include <numbers>

namespace uncert {

StateVector fig1_state(const Fig1Params& p) {
  ComplexVector v(3);
  v << Complex(std::cos(p.theta), 0.0), Complex(0.0, 0.0),
      std::sin(p.theta) * std::exp(Complex(0.0, p.phi));
  return StateVector(v);
}

StateVector fig2_state(const Fig2Params& p) {
  ComplexVector v(3);
  v << Complex(std::sin(p.theta) * std::cos(p.phi), 0.0),
      Complex(std::sin(p.theta) * std::sin(p.phi), 0.0), Complex(std::cos(p.theta), 0.0);
  return StateVector(v);
}

StateVector fig2_perp(const Fig2Params& p) {
  Complex eg = std::exp(Complex(0.0, p.gamma));
  double cb = std::cos(p.beta), sb = std::sin(p.beta);
  double ct = std::cos(p.theta), st = std::sin(p.theta);
  double cp = std::cos(p.phi), sp = std::sin(p.phi);
  ComplexVector v(3);
  v << ct * cp * cb * eg - sp * sb, ct * sp * cb * eg + cp * sb, -st * cb * eg;
  return StateVector(v);
}

std::vector<double> theta_grid(int n) {
  if (n < 2) throw InvalidInput("theta grid needs at least 2 points");
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i)
    grid[i] = std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1);
  return grid;
}

}  // namespace uncert
