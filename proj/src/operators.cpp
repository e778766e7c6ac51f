#include "uncert/operators.hpp"

#include <cmath>
#include <sstream>

namespace uncert {

namespace {

bool is_half_integer_spin(double j, long& two_j) {
  double t = 2.0 * j;
  double r = std::round(t);
  if (std::abs(t - r) > 1e-9 || r < 1.0) return false;
  two_j = static_cast<long>(r);
  return true;
}

}  // namespace

SpinTriple spin_operators(double j) {
  long two_j = 0;
  if (!is_half_integer_spin(j, two_j)) {
    std::ostringstream msg;
    msg << "spin must be a positive integer or half-integer, got j = " << j;
    throw InvalidInput(msg.str());
  }
  Eigen::Index d = static_cast<Eigen::Index>(two_j + 1);
  ComplexMatrix jp = ComplexMatrix::Zero(d, d);
  ComplexMatrix jz = ComplexMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    double m = j - static_cast<double>(k);  // basis order: m = j, j-1, ..., -j
    jz(k, k) = m;
    if (k > 0) jp(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  ComplexMatrix jm = jp.adjoint();
  ComplexMatrix jx = (jp + jm) / 2.0;
  ComplexMatrix jy = (jp - jm) / Complex(0.0, 2.0);
  return SpinTriple{j, HermitianObservable(jx), HermitianObservable(jy), HermitianObservable(jz)};
}

OscillatorTriple oscillator_triple(int n_trunc) {
  if (n_trunc < 4) {
    std::ostringstream msg;
    msg << "oscillator truncation must be at least 4 levels, got " << n_trunc;
    throw InvalidInput(msg.str());
  }
  Eigen::Index d = n_trunc;
  ComplexMatrix a = ComplexMatrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  ComplexMatrix ad = a.adjoint();
  ComplexMatrix q = (a + ad) / std::sqrt(2.0);
  ComplexMatrix p = Complex(0.0, 1.0) * (ad - a) / std::sqrt(2.0);
  ComplexMatrix r = -q - p;
  return OscillatorTriple{n_trunc, HermitianObservable(q), HermitianObservable(p),
                          HermitianObservable(r)};
}

double truncation_tail_weight(const StateVector& psi, int n_trunc) {
  if (psi.dim() != n_trunc) throw InvalidInput("state dimension does not match truncation");
  int tail = std::max(1, n_trunc / 4);
  double w = 0.0;
  for (Eigen::Index k = n_trunc - tail; k < n_trunc; ++k) w += std::norm(psi.amplitudes()(k));
  return w;
}

bool truncation_safe(const StateVector& psi, int n_trunc) {
  return truncation_tail_weight(psi, n_trunc) < truncation_tail_gate;
}

HermitianObservable parse_observable(const std::string& spec) {
  const std::string usage =
      "valid presets: spin<j>:J{x,y,z} with j a positive integer or half-integer "
      "(e.g. spin1:Jx, spin1/2:Jz, spin0.5:Jy), osc<n>:{q,p,r} with n >= 4 (e.g. osc16:q)";
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw InvalidInput("preset \"" + spec + "\" has no ':' separator; " + usage);
  std::string family_param = spec.substr(0, colon);
  std::string component = spec.substr(colon + 1);

  if (family_param.rfind("spin", 0) == 0) {
    std::string param = family_param.substr(4);
    double j = 0.0;
    auto slash = param.find('/');
    try {
      if (slash != std::string::npos) {
        double num = std::stod(param.substr(0, slash));
        double den = std::stod(param.substr(slash + 1));
        if (den == 0.0) throw InvalidInput("zero denominator");
        j = num / den;
      } else {
        j = std::stod(param);
      }
    } catch (const std::exception&) {
      throw InvalidInput("cannot parse spin value in \"" + spec + "\"; " + usage);
    }
    SpinTriple t = spin_operators(j);
    if (component == "Jx") return t.jx;
    if (component == "Jy") return t.jy;
    if (component == "Jz") return t.jz;
    throw InvalidInput("unknown spin component \"" + component + "\"; " + usage);
  }

  if (family_param.rfind("osc", 0) == 0) {
    int n = 0;
    try {
      std::size_t pos = 0;
      n = std::stoi(family_param.substr(3), &pos);
      if (pos != family_param.size() - 3) throw InvalidInput("trailing characters");
    } catch (const std::exception&) {
      throw InvalidInput("cannot parse oscillator truncation in \"" + spec + "\"; " + usage);
    }
    OscillatorTriple t = oscillator_triple(n);
    if (component == "q") return t.q;
    if (component == "p") return t.p;
    if (component == "r") return t.r;
    throw InvalidInput("unknown oscillator component \"" + component + "\"; " + usage);
  }

  throw InvalidInput("unknown preset family in \"" + spec + "\"; " + usage);
}

}  // namespace uncert
