#include "uncert/explore.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace uncert {

namespace {

PerpResult perp_from_direction(const StateVector& psi, const ComplexVector& direction) {
  ComplexVector proj = project_complement(psi, direction);
  if (proj.norm() > tol::degenerate_norm) return PerpResult{StateVector::normalized(proj), false};
  // Bound already tight for every orthogonal state; return any complement vector.
  OrthonormalFrame frame = complete_basis(psi);
  if (frame.complement.empty()) throw InvalidInput("no orthogonal complement in dimension 1");
  return PerpResult{frame.complement.front(), true};
}

}  // namespace

PerpResult optimal_perp_pair(const HermitianObservable& a, const HermitianObservable& b,
                             const StateVector& psi) {
  PairMoments m = pair_moments(a, b, psi);
  double alpha = alpha_phase(m);
  ComplexVector dir =
      (a.matrix() - std::exp(Complex(0.0, -alpha)) * b.matrix()) * psi.amplitudes();
  return perp_from_direction(psi, dir);
}

PerpResult optimal_perp_mp(const HermitianObservable& a, const HermitianObservable& b,
                           const StateVector& psi) {
  PairMoments m = pair_moments(a, b, psi);
  double s = -m.w > 0.0 ? 1.0 : -1.0;
  ComplexVector dir = (a.matrix() - Complex(0.0, s) * b.matrix()) * psi.amplitudes();
  return perp_from_direction(psi, dir);
}

PerpResult optimal_perp_triple(const HermitianObservable& a, const HermitianObservable& b,
                               const HermitianObservable& c, const StateVector& psi) {
  using std::numbers::pi;
  TripleMoments m = triple_moments(a, b, c, psi);
  double s = m.kappa >= 0.0 ? 1.0 : -1.0;
  Complex f1 = std::exp(Complex(0.0, -s * 2.0 * pi / 3.0));
  Complex f2 = std::exp(Complex(0.0, -s * 4.0 * pi / 3.0));
  ComplexVector dir = (a.matrix() + f1 * b.matrix() + f2 * c.matrix()) * psi.amplitudes();
  return perp_from_direction(psi, dir);
}

std::vector<SweepRecord> cloud_sample(Relation relation,
                                      const std::vector<HermitianObservable>& observables,
                                      StateFamily family, int n_theta, double phi, int n_samples,
                                      std::uint64_t seed) {
  bool triple = relation == Relation::th1;
  if (!triple && relation != Relation::mp1 && relation != Relation::new_sum)
    throw InvalidInput("relation \"" + to_string(relation) + "\" is not cloud-sampleable");
  if (observables.size() != (triple ? 3u : 2u))
    throw InvalidInput("cloud sampling needs " + std::string(triple ? "three" : "two") +
                       " observables for " + to_string(relation));
  if (n_samples < 1) throw InvalidInput("cloud sampling needs at least one sample");

  std::vector<SweepRecord> out;
  out.reserve(static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_samples));
  std::vector<double> grid = theta_grid(n_theta);
  for (int i = 0; i < n_theta; ++i) {
    StateVector psi = family == StateFamily::fig1
                          ? fig1_state(Fig1Params{grid[i], phi})
                          : fig2_state(Fig2Params{grid[i], phi, 0.0, 0.0});
    for (int k = 0; k < n_samples; ++k) {
      StateVector perp = random_orthogonal_state(
          psi, derive_seed(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(k)));
      double value = 0.0;
      switch (relation) {
        case Relation::mp1:
          value = bound_mp_sum(observables[0], observables[1], psi, perp).rhs;
          break;
        case Relation::new_sum:
          value = bound_new_sum(observables[0], observables[1], psi, perp).rhs;
          break;
        default:
          value = bound_th1(observables[0], observables[1], observables[2], psi, perp).rhs;
          break;
      }
      out.push_back(SweepRecord{grid[i], phi, to_string(relation), k, value, seed});
    }
  }
  return out;
}

std::vector<double> crossing_scan(const std::function<double(double)>& f_lhs,
                                  const std::function<double(double)>& f_rhs, double lo, double hi,
                                  double tol, int n_grid) {
  if (!(hi > lo)) throw InvalidInput("crossing scan needs hi > lo");
  if (tol <= 0.0) throw InvalidInput("crossing scan needs a positive tolerance");
  n_grid = std::max(n_grid, 2);
  auto diff = [&](double t) { return f_lhs(t) - f_rhs(t); };

  std::vector<double> crossings;
  double step = (hi - lo) / static_cast<double>(n_grid - 1);
  double prev_t = lo;
  double prev_d = diff(lo);
  for (int i = 1; i < n_grid; ++i) {
    double t = lo + step * static_cast<double>(i);
    double d = diff(t);
    if (prev_d == 0.0) {
      crossings.push_back(prev_t);
    } else if ((prev_d > 0.0) != (d > 0.0) && d != 0.0) {
      double a = prev_t, b = t, da = prev_d;
      while (b - a > tol) {
        double mid = 0.5 * (a + b);
        double dm = diff(mid);
        if (dm == 0.0) {
          a = b = mid;
          break;
        }
        if ((da > 0.0) != (dm > 0.0)) {
          b = mid;
        } else {
          a = mid;
          da = dm;
        }
      }
      crossings.push_back(0.5 * (a + b));
    }
    prev_t = t;
    prev_d = d;
  }
  if (prev_d == 0.0) crossings.push_back(prev_t);
  return crossings;
}

}  // namespace uncert
