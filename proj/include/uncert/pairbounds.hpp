#pragma once

#include "uncert/report.hpp"

namespace uncert {

/// Second-moment data for an observable pair on a state. corr is the
/// central correlation <(A - <A>)(B - <B>)>; x = 2 Re corr recovers
/// <{A,B}> - 2<A><B> and w = 2 Im corr recovers -i<[A,B]>.
struct PairMoments {
  double mean_a = 0.0;
  double mean_b = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
  Complex corr;
  double x = 0.0;
  double w = 0.0;
};

PairMoments pair_moments(const HermitianObservable& a, const HermitianObservable& b,
                         const StateVector& psi);

/// Phase alpha = atan2(w, x), which makes e^{-i alpha} (x + i w) real and
/// nonnegative. Defined as 0 when x = w = 0 (see alpha_degenerate).
double alpha_phase(const PairMoments& m);
bool alpha_degenerate(const PairMoments& m);

/// Variance product vs squared commutator mean: var_a var_b >= (w/2)^2.
BoundReport bound_hr(const HermitianObservable& a, const HermitianObservable& b,
                     const StateVector& psi);
BoundReport bound_hr(const PairMoments& m);

/// Variance product vs full correlation: var_a var_b >= (w/2)^2 + (x/2)^2.
BoundReport bound_schrodinger(const HermitianObservable& a, const HermitianObservable& b,
                              const StateVector& psi);
BoundReport bound_schrodinger(const PairMoments& m);

/// Variance sum vs |<[A,B]>| plus the overlap with a state orthogonal to psi:
/// var_a + var_b >= |w| + |<psi|A + s i B|perp>|^2, s = +1 iff -w > 0.
BoundReport bound_mp_sum(const HermitianObservable& a, const HermitianObservable& b,
                         const StateVector& psi, const StateVector& perp);

/// Variance sum vs half the squared deviation overlap of A+B:
/// var_a + var_b >= |<perp_dev|A+B|psi>|^2 / 2 with perp_dev the normalized
/// deviation direction of A+B. Degenerate deviation gives rhs 0 with a flag.
BoundReport bound_mp_sum2(const HermitianObservable& a, const HermitianObservable& b,
                          const StateVector& psi);

/// Deviation product vs commutator over an overlap denominator:
/// da db >= (|w|/2) / (1 - |<psi|A/da + s i B/db|perp>|^2 / 2).
/// Requires da, db > tol::stddev_floor and a denominator > tol::denominator_floor.
BoundReport bound_amended_hr(const HermitianObservable& a, const HermitianObservable& b,
                             const StateVector& psi, const StateVector& perp);

/// Variance sum vs correlation modulus plus a phased overlap:
/// var_a + var_b >= sqrt(x^2 + w^2) + |<psi|A - e^{i alpha} B|perp>|^2.
BoundReport bound_new_sum(const HermitianObservable& a, const HermitianObservable& b,
                          const StateVector& psi, const StateVector& perp);

/// The overlap-free part: var_a + var_b >= sqrt(x^2 + w^2).
BoundReport bound_new_sum_reduced(const HermitianObservable& a, const HermitianObservable& b,
                                  const StateVector& psi);
BoundReport bound_new_sum_reduced(const PairMoments& m);

/// Variance product vs correlation over a squared overlap denominator:
/// var_a var_b >= ((w/2)^2 + (x/2)^2) / D^2 with
/// D = 1 - |<psi|A/da - e^{i alpha} B/db|perp>|^2 / 2.
/// Requires da, db > tol::stddev_floor and D > tol::denominator_floor.
BoundReport bound_new_product(const HermitianObservable& a, const HermitianObservable& b,
                              const StateVector& psi, const StateVector& perp);

}  // namespace uncert
