#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "uncert/explore.hpp"
#include "uncert/operators.hpp"
#include "uncert/statefam.hpp"
#include "uncert/triplebounds.hpp"

using namespace uncert;

namespace {

struct Fixture {
  SpinTriple spin = spin_operators(1.0);
  StateVector psi = fig2_state(Fig2Params{0.7, 0.9, 0.0, 0.0});
  TripleMoments m = triple_moments(spin.jx, spin.jy, spin.jz, psi);
};

// |<psi|(A + e^{s i 2pi/3} B + e^{s i 4pi/3} C)|perp>|^2 by the reference loop.
double phased_overlap_sq(const HermitianObservable& a, const HermitianObservable& b,
                         const HermitianObservable& c, const StateVector& psi,
                         const StateVector& perp, int s) {
  using std::numbers::pi;
  oracle::Mat op = oracle::from_library(a.matrix());
  oracle::Mat bm = oracle::from_library(b.matrix());
  oracle::Mat cm = oracle::from_library(c.matrix());
  oracle::C pb = std::exp(oracle::C(0, s * 2.0 * pi / 3.0));
  oracle::C pc = std::exp(oracle::C(0, s * 4.0 * pi / 3.0));
  for (std::size_t i = 0; i < op.size(); ++i)
    for (std::size_t j = 0; j < op.size(); ++j) op[i][j] += pb * bm[i][j] + pc * cm[i][j];
  oracle::C v = oracle::dot(oracle::from_library(psi.amplitudes()),
                            oracle::apply(op, oracle::from_library(perp.amplitudes())));
  return std::norm(v);
}

// A real symmetric triple with a real state: every commutator mean vanishes
// identically, so the sign degeneracy paths run.
struct RealFixture {
  HermitianObservable a{oracle::to_library(
      oracle::Mat{{oracle::C(1), oracle::C(2), oracle::C(0)},
                  {oracle::C(2), oracle::C(-1), oracle::C(1)},
                  {oracle::C(0), oracle::C(1), oracle::C(0.5)}})};
  HermitianObservable b{oracle::to_library(
      oracle::Mat{{oracle::C(0), oracle::C(1), oracle::C(1)},
                  {oracle::C(1), oracle::C(2), oracle::C(0)},
                  {oracle::C(1), oracle::C(0), oracle::C(-2)}})};
  HermitianObservable c{oracle::to_library(
      oracle::Mat{{oracle::C(0.5), oracle::C(0), oracle::C(2)},
                  {oracle::C(0), oracle::C(1), oracle::C(1)},
                  {oracle::C(2), oracle::C(1), oracle::C(1)}})};
  StateVector psi{StateVector::normalized([] {
    ComplexVector v(3);
    v << Complex(0.2, 0), Complex(-0.7, 0), Complex(0.4, 0);
    return v;
  }())};
};

}  // namespace

TEST_CASE("triple moments are frozen at the reference point") {
  Fixture f;
  CHECK(f.m.kappa == doctest::Approx(-0.40700101089477631).epsilon(1e-13));
  CHECK(f.m.variance_sum() == doctest::Approx(1.1281001838249334).epsilon(1e-13));
  CHECK(f.m.var_sum_op == doctest::Approx(1.5742999727971738).epsilon(1e-13));
}

TEST_CASE("triple moments close the sum-variance identity") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Eigen::Index dim = 2 + static_cast<Eigen::Index>(seed % 5);
    HermitianObservable a = random_hermitian(dim, derive_seed(910, seed, 0));
    HermitianObservable b = random_hermitian(dim, derive_seed(910, seed, 1));
    HermitianObservable c = random_hermitian(dim, derive_seed(910, seed, 2));
    StateVector psi = random_state(dim, derive_seed(910, seed, 3));
    TripleMoments m = triple_moments(a, b, c, psi);
    CHECK(m.var_sum_op ==
          doctest::Approx(m.variance_sum() + m.pair_ab.x + m.pair_bc.x + m.pair_ca.x)
              .epsilon(1e-10));
    CHECK(m.kappa ==
          doctest::Approx(-(m.pair_ab.w + m.pair_bc.w + m.pair_ca.w)).epsilon(1e-12));
  }
}

TEST_CASE("the triple correlation bound is frozen at the reference point") {
  Fixture f;
  BoundReport rep = bound_sch_triple(f.spin.jx, f.spin.jy, f.spin.jz, f.psi);
  CHECK(rep.lhs == doctest::Approx(1.1281001838249334).epsilon(1e-13));
  CHECK(rep.rhs == doctest::Approx(0.85122205805797768).epsilon(1e-13));
  CHECK(rep.satisfied);
  // Its rhs is half the sum of the pair correlation moduli.
  double expect = 0.5 * (std::hypot(f.m.pair_ab.x, f.m.pair_ab.w) +
                         std::hypot(f.m.pair_bc.x, f.m.pair_bc.w) +
                         std::hypot(f.m.pair_ca.x, f.m.pair_ca.w));
  CHECK(rep.rhs == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("the strengthened triple bound decomposes and meets its maximizer") {
  Fixture f;
  CHECK(th1_base_bound(f.m) == doctest::Approx(0.75974880079960683).epsilon(1e-13));

  PerpResult opt = optimal_perp_triple(f.spin.jx, f.spin.jy, f.spin.jz, f.psi);
  BoundReport tight = bound_th1(f.spin.jx, f.spin.jy, f.spin.jz, f.psi, opt.state);
  CHECK(std::abs(tight.slack) <= 1e-12);
  REQUIRE(tight.params.sign.has_value());
  CHECK(*tight.params.sign == -1);  // kappa < 0 here

  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    StateVector perp = random_orthogonal_state(f.psi, derive_seed(911, seed, 0));
    BoundReport rep = bound_th1(f.spin.jx, f.spin.jy, f.spin.jz, f.psi, perp);
    CHECK(rep.satisfied);
    CHECK(rep.rhs <= tight.rhs + 1e-12);
    double expect = f.m.var_sum_op / 3.0 + (std::sqrt(3.0) / 3.0) * std::abs(f.m.kappa) +
                    (2.0 / 3.0) * phased_overlap_sq(f.spin.jx, f.spin.jy, f.spin.jz, f.psi, perp,
                                                    *rep.params.sign);
    CHECK(rep.rhs == doctest::Approx(expect).epsilon(1e-11));
  }
}

TEST_CASE("a vanishing weighted commutator makes the sign ambiguous") {
  RealFixture r;
  TripleMoments m = triple_moments(r.a, r.b, r.c, r.psi);
  CHECK(m.kappa == 0.0);
  StateVector perp = random_orthogonal_state(r.psi, 3);
  BoundReport rep = bound_th1(r.a, r.b, r.c, r.psi, perp);
  CHECK(rep.params.has_flag("degenerate-sign"));
  CHECK(rep.satisfied);
  // Both phase orientations are admissible; the evaluator keeps the larger.
  double plus = phased_overlap_sq(r.a, r.b, r.c, r.psi, perp, 1);
  double minus = phased_overlap_sq(r.a, r.b, r.c, r.psi, perp, -1);
  double expect = m.var_sum_op / 3.0 + (2.0 / 3.0) * std::max(plus, minus);
  CHECK(rep.rhs == doctest::Approx(expect).epsilon(1e-11));
}

TEST_CASE("the commutator-only triple bound is frozen at the reference point") {
  Fixture f;
  BoundReport rep = bound_thc(f.spin.jx, f.spin.jy, f.spin.jz, f.psi);
  CHECK(rep.rhs == doctest::Approx(0.72529300044436396).epsilon(1e-13));
  CHECK(rep.satisfied);
  double expect = (std::sqrt(3.0) / 3.0) *
                  (std::abs(f.m.pair_ab.w) + std::abs(f.m.pair_bc.w) + std::abs(f.m.pair_ca.w));
  CHECK(rep.rhs == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("quadrature triple bounds hold on the ground state") {
  OscillatorTriple t = oscillator_triple(16);
  ComplexVector g = ComplexVector::Zero(16);
  g(0) = Complex(1, 0);
  StateVector ground(g);

  BoundReport add = bound_kw_additive(t, ground);
  CHECK(add.lhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(add.rhs == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(add.satisfied);
  CHECK_FALSE(add.params.has_flag("truncation-unsafe"));

  BoundReport mult = bound_kw_multiplicative(t, ground);
  CHECK(mult.lhs == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mult.rhs == doctest::Approx(std::pow(3.0, -0.75)).epsilon(1e-15));
  CHECK(mult.satisfied);

  // The weighted commutator of the quadrature triple is -3 on safe states.
  TripleMoments m = triple_moments(t.q, t.p, t.r, ground);
  CHECK(m.kappa == doctest::Approx(-3.0).epsilon(1e-12));
}

TEST_CASE("quadrature triple bounds flag truncation-dominated states") {
  OscillatorTriple t = oscillator_triple(16);
  ComplexVector top = ComplexVector::Zero(16);
  top(15) = Complex(1, 0);
  BoundReport rep = bound_kw_additive(t, StateVector(top));
  CHECK(rep.params.has_flag("truncation-unsafe"));
  CHECK(bound_kw_multiplicative(t, StateVector(top)).params.has_flag("truncation-unsafe"));
}

TEST_CASE("the variance identity closes over the full complement") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Eigen::Index dim = seed < 20 ? 3 : 8;
    HermitianObservable a = random_hermitian(dim, derive_seed(912, seed, 0));
    HermitianObservable b = random_hermitian(dim, derive_seed(912, seed, 1));
    HermitianObservable c = random_hermitian(dim, derive_seed(912, seed, 2));
    StateVector psi = random_state(dim, derive_seed(912, seed, 3));
    EqualityDecomposition eq = equality_decomposition(a, b, c, psi, complete_basis(psi));
    REQUIRE(eq.terms.size() == static_cast<std::size_t>(dim - 1));
    CHECK(eq.residual <= (dim == 3 ? 1e-11 : 1e-9));
    CHECK(eq.report.satisfied);
    // The recorded terms add up to the reported rhs.
    TripleMoments m = triple_moments(a, b, c, psi);
    double sum = th1_base_bound(m);
    for (double t : eq.terms) sum += t;
    CHECK(eq.report.rhs == doctest::Approx(sum).epsilon(1e-12));
  }
}

TEST_CASE("the identity check rejects a frame built on another state") {
  Fixture f;
  OrthonormalFrame frame = complete_basis(random_state(3, 999));
  CHECK_THROWS_AS(
      equality_decomposition(f.spin.jx, f.spin.jy, f.spin.jz, f.psi, frame), InvalidInput);
}

TEST_CASE("tuning coefficients are exact at the symmetric point") {
  using std::numbers::pi;
  TuningCoefficients tc = mu_nu(2.0 * pi / 3.0, 4.0 * pi / 3.0);
  CHECK(std::abs(tc.mu - 1.0 / 3.0) <= 1e-15);
  CHECK(std::abs(tc.nu + 1.0 / std::sqrt(3.0)) <= 1e-15);

  TuningCoefficients generic = mu_nu(1.0, 2.5);
  CHECK(generic.mu == doctest::Approx(0.059591819443665026).epsilon(1e-14));
  CHECK(generic.nu == doctest::Approx(-0.38885684771002516).epsilon(1e-14));

  CHECK_THROWS_AS(mu_nu(0.0, 0.0), InvalidInput);
  CHECK_THROWS_AS(mu_nu(2.0 * pi, 2.0 * pi), InvalidInput);
}

TEST_CASE("the tunable family reproduces its coefficients and holds") {
  Fixture f;
  BoundReport rep = bound_general_family(f.spin.jx, f.spin.jy, f.spin.jz, f.psi, 1.0, 2.5);
  REQUIRE(rep.params.rho.has_value());
  CHECK(*rep.params.rho == 1.0);
  CHECK(*rep.params.sigma == 2.5);
  double expect = 0.059591819443665026 * 1.5742999727971738 -
                  (-0.38885684771002516) * (-0.40700101089477631);
  CHECK(rep.rhs == doctest::Approx(expect).epsilon(1e-12));
  CHECK(rep.satisfied);

  using std::numbers::pi;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    HermitianObservable a = random_hermitian(4, derive_seed(913, seed, 0));
    HermitianObservable b = random_hermitian(4, derive_seed(913, seed, 1));
    HermitianObservable c = random_hermitian(4, derive_seed(913, seed, 2));
    StateVector psi = random_state(4, derive_seed(913, seed, 3));
    for (double rho : {0.5, 2.0 * pi / 3.0, 4.0})
      for (double sigma : {1.5, 4.0 * pi / 3.0, 5.5}) {
        BoundReport r = bound_general_family(a, b, c, psi, rho, sigma);
        CHECK(r.satisfied);
      }
  }
}

TEST_CASE("the symmetric family member matches the strengthened triple base") {
  // At the symmetric angles the family bound is the perp-free part of the
  // strengthened triple bound whenever the weighted commutator is negative.
  Fixture f;
  using std::numbers::pi;
  BoundReport rep = bound_general_family(f.m, 4.0 * pi / 3.0, 2.0 * pi / 3.0);
  // mu = 1/3 and nu = +1/sqrt3 at the mirrored angles, so with kappa < 0 the
  // rhs equals var/3 + |kappa|/sqrt3.
  CHECK(rep.rhs == doctest::Approx(th1_base_bound(f.m)).epsilon(1e-12));
}
