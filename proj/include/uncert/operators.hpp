#pragma once

#include <string>

#include "uncert/qmcore.hpp"

namespace uncert {

/// Angular momentum components for total spin j, built from the ladder
/// algebra in the basis of descending Jz eigenvalue (m = j, j-1, ..., -j).
/// hbar = 1 throughout.
struct SpinTriple {
  double j;
  HermitianObservable jx, jy, jz;
};

/// j must be a positive integer or half-integer (2j a positive integer).
SpinTriple spin_operators(double j);

/// Truncated harmonic-oscillator quadratures on the lowest n_trunc Fock
/// levels: q = (a + a^dag)/sqrt2, p = i(a^dag - a)/sqrt2, and the closing
/// triple member r = -q - p (exact by construction, so q + p + r = 0).
/// hbar = 1.
struct OscillatorTriple {
  int n_trunc;
  HermitianObservable q, p, r;
};

/// n_trunc must be at least 4.
OscillatorTriple oscillator_triple(int n_trunc);

/// Probability weight of psi on the top quarter of the Fock levels
/// (the highest max(1, n_trunc/4) levels). Used to decide whether
/// truncated-oscillator results can be trusted.
double truncation_tail_weight(const StateVector& psi, int n_trunc);

/// True when truncation_tail_weight < 1e-8.
bool truncation_safe(const StateVector& psi, int n_trunc);

/// Tail-weight threshold for truncation_safe.
inline constexpr double truncation_tail_gate = 1e-8;

/// Build an observable from a preset string "<family><param>:<component>",
/// e.g. "spin1:Jx", "spin1/2:Jz", "spin0.5:Jy", "osc16:q", "osc32:r".
/// Unknown presets raise InvalidInput listing the valid forms.
HermitianObservable parse_observable(const std::string& spec);

}  // namespace uncert
