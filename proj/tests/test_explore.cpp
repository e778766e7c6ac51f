#include <doctest.h>

#include <cmath>
#include <numbers>

#include "uncert/explore.hpp"
#include "uncert/operators.hpp"

using namespace uncert;

TEST_CASE("maximizing perps are orthonormal to the base state") {
  SpinTriple t = spin_operators(1.0);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    StateVector psi = random_state(3, derive_seed(920, seed, 0));
    for (const PerpResult& r :
         {optimal_perp_pair(t.jx, t.jy, psi), optimal_perp_mp(t.jx, t.jy, psi),
          optimal_perp_triple(t.jx, t.jy, t.jz, psi)}) {
      CHECK_FALSE(r.degenerate);
      CHECK(std::abs(psi.amplitudes().dot(r.state.amplitudes())) <= 1e-12);
      CHECK(std::abs(r.state.amplitudes().norm() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("a joint eigenstate leaves no preferred perp direction") {
  SpinTriple t = spin_operators(1.0);
  ComplexVector e0 = ComplexVector::Zero(3);
  e0(0) = Complex(1, 0);
  StateVector psi(e0);

  PerpResult pair = optimal_perp_pair(t.jz, t.jz, psi);
  CHECK(pair.degenerate);
  CHECK(std::abs(psi.amplitudes().dot(pair.state.amplitudes())) <= 1e-12);

  CHECK(optimal_perp_mp(t.jz, t.jz, psi).degenerate);
  CHECK(optimal_perp_triple(t.jz, t.jz, t.jz, psi).degenerate);

  // One-dimensional spaces cannot host any perp at all.
  HermitianObservable scalar{ComplexMatrix::Constant(1, 1, Complex(2.0, 0.0))};
  CHECK_THROWS_AS(optimal_perp_pair(scalar, scalar, random_state(1, 1)), InvalidInput);
}

TEST_CASE("maximizing perps dominate random draws") {
  SpinTriple t = spin_operators(1.0);
  StateVector psi = random_state(3, 4242);

  double best_pair = bound_new_sum(t.jx, t.jy, psi, optimal_perp_pair(t.jx, t.jy, psi).state).rhs;
  double best_mp = bound_mp_sum(t.jx, t.jy, psi, optimal_perp_mp(t.jx, t.jy, psi).state).rhs;
  double best_triple =
      bound_th1(t.jx, t.jy, t.jz, psi, optimal_perp_triple(t.jx, t.jy, t.jz, psi).state).rhs;

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    StateVector perp = random_orthogonal_state(psi, derive_seed(921, seed, 0));
    CHECK(bound_new_sum(t.jx, t.jy, psi, perp).rhs <= best_pair + 1e-10);
    CHECK(bound_mp_sum(t.jx, t.jy, psi, perp).rhs <= best_mp + 1e-10);
    CHECK(bound_th1(t.jx, t.jy, t.jz, psi, perp).rhs <= best_triple + 1e-10);
  }
}

TEST_CASE("cloud samples cover the grid in theta-major order") {
  SpinTriple t = spin_operators(1.0);
  std::vector<SweepRecord> cloud =
      cloud_sample(Relation::mp1, {t.jx, t.jy}, StateFamily::fig1, 5, 0.3, 4, 99);
  REQUIRE(cloud.size() == 20);
  std::vector<double> grid = theta_grid(5);
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < 4; ++k) {
      const SweepRecord& r = cloud[static_cast<std::size_t>(i) * 4 + static_cast<std::size_t>(k)];
      CHECK(r.theta == grid[static_cast<std::size_t>(i)]);
      CHECK(r.phi == 0.3);
      CHECK(r.relation == "mp1");
      CHECK(r.sample == k);
      CHECK(r.seed == 99);
    }
}

TEST_CASE("cloud samples are reproducible and prefix-stable") {
  SpinTriple t = spin_operators(1.0);
  auto a = cloud_sample(Relation::new_sum, {t.jx, t.jy}, StateFamily::fig1, 4, 0.0, 3, 7);
  auto b = cloud_sample(Relation::new_sum, {t.jx, t.jy}, StateFamily::fig1, 4, 0.0, 3, 7);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].value == b[i].value);

  // Raising the sample count must not disturb the draws already taken.
  auto wide = cloud_sample(Relation::new_sum, {t.jx, t.jy}, StateFamily::fig1, 4, 0.0, 5, 7);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 3; ++k)
      CHECK(wide[static_cast<std::size_t>(i) * 5 + static_cast<std::size_t>(k)].value ==
            a[static_cast<std::size_t>(i) * 3 + static_cast<std::size_t>(k)].value);

  auto other = cloud_sample(Relation::new_sum, {t.jx, t.jy}, StateFamily::fig1, 4, 0.0, 3, 8);
  bool any_different = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].value != other[i].value) any_different = true;
  CHECK(any_different);
}

TEST_CASE("cloud sampled values never exceed the variance sum") {
  SpinTriple t = spin_operators(1.0);
  for (const SweepRecord& r :
       cloud_sample(Relation::th1, {t.jx, t.jy, t.jz}, StateFamily::fig2, 9, 0.6, 6, 11)) {
    TripleMoments m =
        triple_moments(t.jx, t.jy, t.jz, fig2_state(Fig2Params{r.theta, r.phi, 0.0, 0.0}));
    CHECK(r.value <= m.variance_sum() + 1e-9);
  }
}

TEST_CASE("cloud sampling rejects unsupported requests") {
  SpinTriple t = spin_operators(1.0);
  CHECK_THROWS_AS(cloud_sample(Relation::hr, {t.jx, t.jy}, StateFamily::fig1, 3, 0, 2, 1),
                  InvalidInput);
  CHECK_THROWS_AS(cloud_sample(Relation::mp1, {t.jx, t.jy, t.jz}, StateFamily::fig1, 3, 0, 2, 1),
                  InvalidInput);
  CHECK_THROWS_AS(cloud_sample(Relation::th1, {t.jx, t.jy}, StateFamily::fig2, 3, 0, 2, 1),
                  InvalidInput);
  CHECK_THROWS_AS(cloud_sample(Relation::mp1, {t.jx, t.jy}, StateFamily::fig1, 3, 0, 0, 1),
                  InvalidInput);
}

TEST_CASE("crossing scans recover analytic intersections") {
  std::vector<double> roots = crossing_scan([](double x) { return std::sin(x); },
                                            [](double) { return 0.5; }, 0.0, std::numbers::pi);
  REQUIRE(roots.size() == 2);
  CHECK(std::abs(roots[0] - std::numbers::pi / 6.0) <= 1e-6);
  CHECK(std::abs(roots[1] - 5.0 * std::numbers::pi / 6.0) <= 1e-6);
  CHECK(roots[0] < roots[1]);

  std::vector<double> single =
      crossing_scan([](double x) { return x; }, [](double) { return 0.25; }, 0.0, 1.0, 1e-10);
  REQUIRE(single.size() == 1);
  CHECK(std::abs(single[0] - 0.25) <= 1e-9);

  CHECK(crossing_scan([](double) { return 1.0; }, [](double) { return 0.0; }, 0.0, 1.0).empty());
  CHECK_THROWS_AS(crossing_scan([](double x) { return x; }, [](double x) { return x; }, 1.0, 1.0),
                  InvalidInput);
}

TEST_CASE("the triple bound curves cross twice at the tilted azimuth") {
  SpinTriple t = spin_operators(1.0);
  double phi = std::numbers::pi / 4.0;
  auto base = [&](double theta) {
    return th1_base_bound(
        triple_moments(t.jx, t.jy, t.jz, fig2_state(Fig2Params{theta, phi, 0.0, 0.0})));
  };
  auto corr = [&](double theta) {
    return bound_sch_triple(t.jx, t.jy, t.jz, fig2_state(Fig2Params{theta, phi, 0.0, 0.0})).rhs;
  };
  std::vector<double> roots = crossing_scan(base, corr, 0.0, std::numbers::pi);
  REQUIRE(roots.size() == 2);
  CHECK(std::abs(roots[0] - 0.30669261835066874) <= 2e-6);
  CHECK(std::abs(roots[1] - 0.6991125463007923) <= 2e-6);

  // Head-on the two curves never meet.
  auto base0 = [&](double theta) {
    return th1_base_bound(
        triple_moments(t.jx, t.jy, t.jz, fig2_state(Fig2Params{theta, 0.0, 0.0, 0.0})));
  };
  auto corr0 = [&](double theta) {
    return bound_sch_triple(t.jx, t.jy, t.jz, fig2_state(Fig2Params{theta, 0.0, 0.0, 0.0})).rhs;
  };
  CHECK(crossing_scan(base0, corr0, 0.0, std::numbers::pi).empty());
}
