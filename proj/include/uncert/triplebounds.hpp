#pragma once

#include "uncert/operators.hpp"
#include "uncert/pairbounds.hpp"

namespace uncert {

/// Second-moment data for an observable triple on a state. kappa is the real
/// number i<[A,B]+[B,C]+[C,A]> = -(w_ab + w_bc + w_ca); var_sum_op is the
/// variance of A+B+C computed directly on the operator sum.
struct TripleMoments {
  PairMoments pair_ab, pair_bc, pair_ca;
  double kappa = 0.0;
  double var_sum_op = 0.0;
  double anticomm_sum = 0.0;

  double variance_sum() const { return pair_ab.var_a + pair_ab.var_b + pair_bc.var_b; }
};

TripleMoments triple_moments(const HermitianObservable& a, const HermitianObservable& b,
                             const HermitianObservable& c, const StateVector& psi);

/// Triple variance sum vs half the sum of pair correlation moduli:
/// V >= (R_ab + R_bc + R_ca)/2 with R = sqrt(x^2 + w^2) per pair.
BoundReport bound_sch_triple(const HermitianObservable& a, const HermitianObservable& b,
                             const HermitianObservable& c, const StateVector& psi);
BoundReport bound_sch_triple(const TripleMoments& m);

/// The perp-independent part of the th1 bound:
/// var_sum_op/3 + (sqrt3/3)|kappa|.
double th1_base_bound(const TripleMoments& m);

/// Triple variance sum vs deviation, commutator and phased-overlap terms:
/// V >= var_sum_op/3 + (sqrt3/3)|kappa|
///        + (2/3)|<psi|A + e^{s i 2pi/3} B + e^{s i 4pi/3} C|perp>|^2,
/// s = sign(kappa). For kappa = 0 both signs are evaluated and the larger
/// rhs is reported with a degenerate-sign flag.
BoundReport bound_th1(const HermitianObservable& a, const HermitianObservable& b,
                      const HermitianObservable& c, const StateVector& psi,
                      const StateVector& perp);

/// Triple variance sum vs scaled pair commutator moduli:
/// V >= (sqrt3/3)(|w_ab| + |w_bc| + |w_ca|).
BoundReport bound_thc(const HermitianObservable& a, const HermitianObservable& b,
                      const HermitianObservable& c, const StateVector& psi);
BoundReport bound_thc(const TripleMoments& m);

/// Quadrature-triple variance sum vs sqrt3 (hbar = 1). States failing the
/// truncation-tail guard are flagged "truncation-unsafe", not rejected.
BoundReport bound_kw_additive(const OscillatorTriple& t, const StateVector& psi);

/// Quadrature-triple deviation product vs 3^(-3/4).
BoundReport bound_kw_multiplicative(const OscillatorTriple& t, const StateVector& psi);

/// Exact decomposition of the triple variance sum over a full complement
/// frame: V = var_sum_op/3 + (sqrt3/3)|kappa| + sum of per-vector overlap
/// terms. residual records |lhs - rhs|.
struct EqualityDecomposition {
  BoundReport report;
  std::vector<double> terms;
  double residual = 0.0;
};

EqualityDecomposition equality_decomposition(const HermitianObservable& a,
                                             const HermitianObservable& b,
                                             const HermitianObservable& c, const StateVector& psi,
                                             const OrthonormalFrame& frame);

/// Coefficients of the two-angle bound family. Defined whenever
/// cos(rho) + cos(sigma) + cos(sigma - rho) != 3, i.e. away from
/// rho = sigma = 0 (mod 2pi).
struct TuningCoefficients {
  double rho = 0.0;
  double sigma = 0.0;
  double mu = 0.0;
  double nu = 0.0;
};

TuningCoefficients mu_nu(double rho, double sigma);

/// Two-angle family member: V >= mu * var_sum_op - nu * kappa.
BoundReport bound_general_family(const HermitianObservable& a, const HermitianObservable& b,
                                 const HermitianObservable& c, const StateVector& psi, double rho,
                                 double sigma);
BoundReport bound_general_family(const TripleMoments& m, double rho, double sigma);

}  // namespace uncert
