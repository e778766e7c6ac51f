#include "uncert/triplebounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace uncert {

namespace {

constexpr double kIdentityTolerance = 1e-10;
const double kSqrt3Third = std::sqrt(3.0) / 3.0;

double pair_modulus(const PairMoments& m) { return std::hypot(m.x, m.w); }

/// |<psi|A + e^{s i 2pi/3} B + e^{s i 4pi/3} C|perp>|^2
double phased_overlap(const HermitianObservable& a, const HermitianObservable& b,
                      const HermitianObservable& c, const StateVector& psi,
                      const StateVector& perp, int s) {
  using std::numbers::pi;
  Complex f1 = std::exp(Complex(0.0, s * 2.0 * pi / 3.0));
  Complex f2 = std::exp(Complex(0.0, s * 4.0 * pi / 3.0));
  ComplexMatrix op = a.matrix() + f1 * b.matrix() + f2 * c.matrix();
  return std::norm(psi.amplitudes().dot(op * perp.amplitudes()));
}

void require_perp(const StateVector& psi, const StateVector& perp) {
  if (perp.dim() != psi.dim()) throw InvalidInput("orthogonal state has mismatched dimension");
  double overlap = std::abs(psi.amplitudes().dot(perp.amplitudes()));
  if (overlap > 1e-10) {
    std::ostringstream msg;
    msg << "perp state is not orthogonal to psi: |<psi|perp>| = " << overlap;
    throw InvalidInput(msg.str());
  }
}

/// var_sum_op/3 computed through the normalized deviation vector of A+B+C,
/// cross-checked against the direct variance.
double deviation_first_term(const HermitianObservable& a, const HermitianObservable& b,
                            const HermitianObservable& c, const StateVector& psi,
                            double var_sum_op) {
  ComplexMatrix sum = a.matrix() + b.matrix() + c.matrix();
  Complex mean = expectation(psi, sum);
  ComplexVector dev = sum * psi.amplitudes() - mean.real() * psi.amplitudes();
  double first = 0.0;
  if (dev.norm() > tol::degenerate_norm) {
    StateVector u = StateVector::normalized(dev);
    first = std::norm(u.amplitudes().dot(sum * psi.amplitudes())) / 3.0;
  }
  if (std::abs(first - var_sum_op / 3.0) > kIdentityTolerance)
    throw std::logic_error("deviation-vector route disagrees with the direct variance");
  return first;
}

}  // namespace

TripleMoments triple_moments(const HermitianObservable& a, const HermitianObservable& b,
                             const HermitianObservable& c, const StateVector& psi) {
  TripleMoments m;
  m.pair_ab = pair_moments(a, b, psi);
  m.pair_bc = pair_moments(b, c, psi);
  m.pair_ca = pair_moments(c, a, psi);
  m.kappa = -(m.pair_ab.w + m.pair_bc.w + m.pair_ca.w);
  m.var_sum_op = variance(psi, HermitianObservable(a.matrix() + b.matrix() + c.matrix()));
  m.anticomm_sum = (m.pair_ab.x + 2.0 * m.pair_ab.mean_a * m.pair_ab.mean_b) +
                   (m.pair_bc.x + 2.0 * m.pair_bc.mean_a * m.pair_bc.mean_b) +
                   (m.pair_ca.x + 2.0 * m.pair_ca.mean_a * m.pair_ca.mean_b);
  double cross = m.pair_ab.x + m.pair_bc.x + m.pair_ca.x;
  if (std::abs(m.var_sum_op - (m.variance_sum() + cross)) > kIdentityTolerance)
    throw std::logic_error("triple variance identity violated; inputs are inconsistent");
  return m;
}

BoundReport bound_sch_triple(const TripleMoments& m) {
  double rhs = (pair_modulus(m.pair_ab) + pair_modulus(m.pair_bc) + pair_modulus(m.pair_ca)) / 2.0;
  return make_report(Relation::sch3, m.variance_sum(), rhs);
}

BoundReport bound_sch_triple(const HermitianObservable& a, const HermitianObservable& b,
                             const HermitianObservable& c, const StateVector& psi) {
  return bound_sch_triple(triple_moments(a, b, c, psi));
}

double th1_base_bound(const TripleMoments& m) {
  return m.var_sum_op / 3.0 + kSqrt3Third * std::abs(m.kappa);
}

BoundReport bound_th1(const HermitianObservable& a, const HermitianObservable& b,
                      const HermitianObservable& c, const StateVector& psi,
                      const StateVector& perp) {
  require_perp(psi, perp);
  TripleMoments m = triple_moments(a, b, c, psi);
  double first = deviation_first_term(a, b, c, psi, m.var_sum_op);
  double middle = kSqrt3Third * std::abs(m.kappa);
  BoundParams params;
  int s;
  double last;
  if (m.kappa == 0.0) {
    double plus = phased_overlap(a, b, c, psi, perp, 1);
    double minus = phased_overlap(a, b, c, psi, perp, -1);
    s = plus >= minus ? 1 : -1;
    last = std::max(plus, minus);
    params.flags.push_back("degenerate-sign");
  } else {
    s = m.kappa > 0.0 ? 1 : -1;
    last = phased_overlap(a, b, c, psi, perp, s);
  }
  params.sign = s;
  return make_report(Relation::th1, m.variance_sum(), first + middle + (2.0 / 3.0) * last,
                     std::move(params));
}

BoundReport bound_thc(const TripleMoments& m) {
  double rhs = kSqrt3Third * (std::abs(m.pair_ab.w) + std::abs(m.pair_bc.w) + std::abs(m.pair_ca.w));
  return make_report(Relation::thc, m.variance_sum(), rhs);
}

BoundReport bound_thc(const HermitianObservable& a, const HermitianObservable& b,
                      const HermitianObservable& c, const StateVector& psi) {
  return bound_thc(triple_moments(a, b, c, psi));
}

BoundReport bound_kw_additive(const OscillatorTriple& t, const StateVector& psi) {
  BoundParams params;
  if (!truncation_safe(psi, t.n_trunc)) params.flags.push_back("truncation-unsafe");
  double lhs = variance(psi, t.q) + variance(psi, t.p) + variance(psi, t.r);
  return make_report(Relation::kw_add, lhs, std::sqrt(3.0), std::move(params));
}

BoundReport bound_kw_multiplicative(const OscillatorTriple& t, const StateVector& psi) {
  BoundParams params;
  if (!truncation_safe(psi, t.n_trunc)) params.flags.push_back("truncation-unsafe");
  double lhs = std::sqrt(variance(psi, t.q)) * std::sqrt(variance(psi, t.p)) *
               std::sqrt(variance(psi, t.r));
  return make_report(Relation::kw_mult, lhs, std::pow(3.0, -0.75), std::move(params));
}

EqualityDecomposition equality_decomposition(const HermitianObservable& a,
                                             const HermitianObservable& b,
                                             const HermitianObservable& c, const StateVector& psi,
                                             const OrthonormalFrame& frame) {
  if (frame.base.dim() != psi.dim() ||
      (frame.base.amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff() > 1e-10)
    throw InvalidInput("frame mismatch: frame.base differs from psi");
  if (frame.complement.size() + 1 != static_cast<std::size_t>(psi.dim()))
    throw InvalidInput("frame mismatch: complement does not span d - 1 directions");
  TripleMoments m = triple_moments(a, b, c, psi);
  BoundParams params;
  int s = 1;
  if (m.kappa == 0.0)
    params.flags.push_back("degenerate-sign");
  else
    s = m.kappa > 0.0 ? 1 : -1;
  params.sign = s;
  EqualityDecomposition out;
  double rhs = th1_base_bound(m);
  out.terms.reserve(frame.complement.size());
  for (const StateVector& perp : frame.complement) {
    double term = (2.0 / 3.0) * phased_overlap(a, b, c, psi, perp, s);
    out.terms.push_back(term);
    rhs += term;
  }
  out.report = make_report(Relation::eq31, m.variance_sum(), rhs, std::move(params));
  out.residual = std::abs(out.report.slack);
  // This is an identity, not a one-sided bound: satisfied means both sides agree.
  out.report.satisfied = out.residual <= tol::slack_floor;
  return out;
}

TuningCoefficients mu_nu(double rho, double sigma) {
  double k = std::cos(rho) + std::cos(sigma) + std::cos(sigma - rho);
  double l = std::sin(rho) - std::sin(sigma) + std::sin(sigma - rho);
  if (k >= 3.0 - 1e-12)
    throw InvalidInput("tuning coefficients undefined at rho = sigma = 0 (mod 2pi)");
  return TuningCoefficients{rho, sigma, k / (k - 3.0), l / (k - 3.0)};
}

BoundReport bound_general_family(const TripleMoments& m, double rho, double sigma) {
  TuningCoefficients tc = mu_nu(rho, sigma);
  BoundParams params;
  params.rho = rho;
  params.sigma = sigma;
  return make_report(Relation::family, m.variance_sum(),
                     tc.mu * m.var_sum_op - tc.nu * m.kappa, std::move(params));
}

BoundReport bound_general_family(const HermitianObservable& a, const HermitianObservable& b,
                                 const HermitianObservable& c, const StateVector& psi, double rho,
                                 double sigma) {
  return bound_general_family(triple_moments(a, b, c, psi), rho, sigma);
}

}  // namespace uncert
