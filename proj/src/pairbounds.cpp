#include "uncert/pairbounds.hpp"

#include <cmath>
#include <sstream>

namespace uncert {

namespace {

constexpr double kPerpTolerance = 1e-10;

void require_perp(const StateVector& psi, const StateVector& perp) {
  if (perp.dim() != psi.dim()) throw InvalidInput("orthogonal state has mismatched dimension");
  double overlap = std::abs(psi.amplitudes().dot(perp.amplitudes()));
  if (overlap > kPerpTolerance) {
    std::ostringstream msg;
    msg << "perp state is not orthogonal to psi: |<psi|perp>| = " << overlap;
    throw InvalidInput(msg.str());
  }
}

Complex overlap_through(const StateVector& psi, const ComplexMatrix& op, const StateVector& perp) {
  return psi.amplitudes().dot(op * perp.amplitudes());
}

int mp_sign(const PairMoments& m) { return -m.w > 0.0 ? 1 : -1; }

}  // namespace

PairMoments pair_moments(const HermitianObservable& a, const HermitianObservable& b,
                         const StateVector& psi) {
  if (a.dim() != psi.dim() || b.dim() != psi.dim())
    throw InvalidInput("pair moments need operators and state of equal dimension");
  PairMoments m;
  m.mean_a = expectation(psi, a.matrix()).real();
  m.mean_b = expectation(psi, b.matrix()).real();
  ComplexVector dev_a = a.matrix() * psi.amplitudes() - m.mean_a * psi.amplitudes();
  ComplexVector dev_b = b.matrix() * psi.amplitudes() - m.mean_b * psi.amplitudes();
  m.var_a = dev_a.squaredNorm();
  m.var_b = dev_b.squaredNorm();
  m.corr = dev_a.dot(dev_b);
  m.x = 2.0 * m.corr.real();
  m.w = 2.0 * m.corr.imag();
  if (std::norm(m.corr) > m.var_a * m.var_b + 1e-10)
    throw std::logic_error("correlation exceeds variance product; inputs are inconsistent");
  return m;
}

double alpha_phase(const PairMoments& m) {
  if (alpha_degenerate(m)) return 0.0;
  return std::atan2(m.w, m.x);
}

bool alpha_degenerate(const PairMoments& m) { return m.x == 0.0 && m.w == 0.0; }

BoundReport bound_hr(const PairMoments& m) {
  return make_report(Relation::hr, m.var_a * m.var_b, (m.w / 2.0) * (m.w / 2.0));
}

BoundReport bound_hr(const HermitianObservable& a, const HermitianObservable& b,
                     const StateVector& psi) {
  return bound_hr(pair_moments(a, b, psi));
}

BoundReport bound_schrodinger(const PairMoments& m) {
  double rhs = (m.w / 2.0) * (m.w / 2.0) + (m.x / 2.0) * (m.x / 2.0);
  return make_report(Relation::sc, m.var_a * m.var_b, rhs);
}

BoundReport bound_schrodinger(const HermitianObservable& a, const HermitianObservable& b,
                              const StateVector& psi) {
  return bound_schrodinger(pair_moments(a, b, psi));
}

BoundReport bound_mp_sum(const HermitianObservable& a, const HermitianObservable& b,
                         const StateVector& psi, const StateVector& perp) {
  require_perp(psi, perp);
  PairMoments m = pair_moments(a, b, psi);
  int s = mp_sign(m);
  ComplexMatrix op = a.matrix() + Complex(0.0, static_cast<double>(s)) * b.matrix();
  double term = std::norm(overlap_through(psi, op, perp));
  BoundParams params;
  params.sign = s;
  return make_report(Relation::mp1, m.var_a + m.var_b, s * (-m.w) + term, std::move(params));
}

BoundReport bound_mp_sum2(const HermitianObservable& a, const HermitianObservable& b,
                          const StateVector& psi) {
  PairMoments m = pair_moments(a, b, psi);
  ComplexMatrix sum = a.matrix() + b.matrix();
  Complex mean = expectation(psi, sum);
  ComplexVector dev = sum * psi.amplitudes() - mean.real() * psi.amplitudes();
  BoundParams params;
  double rhs = 0.0;
  if (dev.norm() <= tol::degenerate_norm) {
    params.flags.push_back("degenerate deviation vector");
  } else {
    StateVector u = StateVector::normalized(dev);
    rhs = std::norm(u.amplitudes().dot(sum * psi.amplitudes())) / 2.0;
  }
  return make_report(Relation::mp2, m.var_a + m.var_b, rhs, std::move(params));
}

BoundReport bound_amended_hr(const HermitianObservable& a, const HermitianObservable& b,
                             const StateVector& psi, const StateVector& perp) {
  require_perp(psi, perp);
  PairMoments m = pair_moments(a, b, psi);
  double da = std::sqrt(m.var_a), db = std::sqrt(m.var_b);
  if (da <= tol::stddev_floor || db <= tol::stddev_floor)
    throw InvalidInput("amended bound needs both deviations above the vanishing floor");
  int s = mp_sign(m);
  ComplexMatrix op = a.matrix() / da + Complex(0.0, static_cast<double>(s)) * b.matrix() / db;
  double denom = 1.0 - std::norm(overlap_through(psi, op, perp)) / 2.0;
  if (denom <= tol::denominator_floor) {
    std::ostringstream msg;
    msg << "amended bound denominator " << denom << " is numerically invalid";
    throw InvalidInput(msg.str());
  }
  BoundParams params;
  params.sign = s;
  return make_report(Relation::amended_hr, da * db, (s * (-m.w) / 2.0) / denom,
                     std::move(params));
}

BoundReport bound_new_sum(const HermitianObservable& a, const HermitianObservable& b,
                          const StateVector& psi, const StateVector& perp) {
  require_perp(psi, perp);
  PairMoments m = pair_moments(a, b, psi);
  double alpha = alpha_phase(m);
  ComplexMatrix op = a.matrix() - std::exp(Complex(0.0, alpha)) * b.matrix();
  double term = std::norm(overlap_through(psi, op, perp));
  BoundParams params;
  params.alpha = alpha;
  if (alpha_degenerate(m)) params.flags.push_back("degenerate-direction");
  return make_report(Relation::new_sum, m.var_a + m.var_b, std::hypot(m.x, m.w) + term,
                     std::move(params));
}

BoundReport bound_new_sum_reduced(const PairMoments& m) {
  return make_report(Relation::new_sum_reduced, m.var_a + m.var_b, std::hypot(m.x, m.w));
}

BoundReport bound_new_sum_reduced(const HermitianObservable& a, const HermitianObservable& b,
                                  const StateVector& psi) {
  return bound_new_sum_reduced(pair_moments(a, b, psi));
}

BoundReport bound_new_product(const HermitianObservable& a, const HermitianObservable& b,
                              const StateVector& psi, const StateVector& perp) {
  require_perp(psi, perp);
  PairMoments m = pair_moments(a, b, psi);
  double da = std::sqrt(m.var_a), db = std::sqrt(m.var_b);
  if (da <= tol::stddev_floor || db <= tol::stddev_floor)
    throw InvalidInput("product bound needs both deviations above the vanishing floor");
  double alpha = alpha_phase(m);
  ComplexMatrix op = a.matrix() / da - std::exp(Complex(0.0, alpha)) * b.matrix() / db;
  double denom = 1.0 - std::norm(overlap_through(psi, op, perp)) / 2.0;
  if (denom <= tol::denominator_floor) {
    std::ostringstream msg;
    msg << "product bound denominator " << denom << " is numerically invalid";
    throw InvalidInput(msg.str());
  }
  BoundParams params;
  params.alpha = alpha;
  if (alpha_degenerate(m)) params.flags.push_back("degenerate-direction");
  double rhs = std::norm(m.corr) / (denom * denom);
  return make_report(Relation::new_product, m.var_a * m.var_b, rhs, std::move(params));
}

}  // namespace uncert
