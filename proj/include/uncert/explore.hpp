#pragma once

#include <functional>

#include "uncert/statefam.hpp"
#include "uncert/triplebounds.hpp"

namespace uncert {

/// An orthogonal state chosen to maximize a bound, plus a degeneracy marker.
/// When the defining direction vanishes (norm < tol::degenerate_norm) the
/// bound is already tight for every orthogonal state; an arbitrary complement
/// vector is returned with degenerate = true.
struct PerpResult {
  StateVector state;
  bool degenerate = false;
};

/// Maximizer of the phased-overlap term of bound_new_sum: the normalized
/// complement projection of (A - e^{-i alpha} B) psi.
PerpResult optimal_perp_pair(const HermitianObservable& a, const HermitianObservable& b,
                             const StateVector& psi);

/// Maximizer of the overlap term of bound_mp_sum: same construction with
/// e^{i alpha} replaced by s i (the mp sign rule).
PerpResult optimal_perp_mp(const HermitianObservable& a, const HermitianObservable& b,
                           const StateVector& psi);

/// Maximizer of the overlap term of bound_th1: the normalized complement
/// projection of (A + e^{-s i 2pi/3} B + e^{-s i 4pi/3} C) psi.
PerpResult optimal_perp_triple(const HermitianObservable& a, const HermitianObservable& b,
                               const HermitianObservable& c, const StateVector& psi);

/// One point of a sweep: the value of a curve or of one random draw.
/// sample >= 0 numbers random draws; sample = -1 marks deterministic curves.
struct SweepRecord {
  double theta = 0.0;
  double phi = 0.0;
  std::string relation;
  int sample = -1;
  double value = 0.0;
  std::uint64_t seed = 0;
};

enum class StateFamily { fig1, fig2 };

/// Random-perp bound values over a theta grid: for each of n_theta grid
/// points (uniform over [0, pi]) and each of n_samples draws, evaluate the
/// rhs of the relation with a Haar-random orthogonal state. Draw seeds are
/// derived per (theta index, sample index) from the root seed, so results do
/// not depend on evaluation order. Supported relations: mp1, new_sum (two
/// observables) and th1 (three).
std::vector<SweepRecord> cloud_sample(Relation relation,
                                      const std::vector<HermitianObservable>& observables,
                                      StateFamily family, int n_theta, double phi, int n_samples,
                                      std::uint64_t seed);

/// Abscissas in [lo, hi] where f_lhs - f_rhs changes sign: bracketed on a
/// uniform grid of n_grid points (at least 2000 for reliable bracketing),
/// then refined by bisection to tol. Returned sorted ascending.
std::vector<double> crossing_scan(const std::function<double(double)>& f_lhs,
                                  const std::function<double(double)>& f_rhs, double lo, double hi,
                                  double tol = 1e-6, int n_grid = 2048);

}  // namespace uncert
