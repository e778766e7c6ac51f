#pragma once

#include <vector>

#include "uncert/qmcore.hpp"

namespace uncert {

/// Spin-1 probe family (cos theta, 0, sin theta e^{i phi}) in the basis of
/// descending Jz eigenvalue. Angles in radians.
struct Fig1Params {
  double theta = 0.0;
  double phi = 0.0;
};

/// Real spin-1 probe family (sin theta cos phi, sin theta sin phi, cos theta)
/// together with an orthogonal partner parameterized by (beta, gamma).
struct Fig2Params {
  double theta = 0.0;
  double phi = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

StateVector fig1_state(const Fig1Params& p);

StateVector fig2_state(const Fig2Params& p);

/// Unit vector orthogonal to fig2_state(p) for every (beta, gamma); the two
/// extra angles sweep the orthogonal plane.
StateVector fig2_perp(const Fig2Params& p);

/// Uniform n-point grid over [0, pi], endpoints included.
std::vector<double> theta_grid(int n);

}  // namespace uncert
