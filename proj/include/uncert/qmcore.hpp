#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace uncert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Raised when an input fails a structural or numerical precondition:
/// mismatched dimensions, non-Hermitian matrices, unnormalizable vectors,
/// vanishing denominators, malformed configuration.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace tol {
/// Inputs farther than this from unit norm are rejected; closer ones are renormalized.
inline constexpr double unit_norm_gate = 1e-8;
/// Post-construction norm defect guaranteed by StateVector.
inline constexpr double unit_norm = 1e-12;
/// Hermiticity defect gate, scaled by (1 + max entry magnitude).
inline constexpr double hermiticity = 1e-10;
/// Negative variances above this magnitude are clamped to zero; below it they
/// indicate an internal inconsistency.
inline constexpr double variance_clamp = 1e-12;
/// A bound counts as satisfied when slack >= -slack_floor.
inline constexpr double slack_floor = 1e-9;
/// Vectors shorter than this cannot be normalized into a state.
inline constexpr double degenerate_norm = 1e-12;
/// Denominators at or below this signal a numerically invalid regime.
inline constexpr double denominator_floor = 1e-10;
/// Standard deviations at or below this count as vanishing for ratio bounds.
inline constexpr double stddev_floor = 1e-8;
}  // namespace tol

/// A validated Hermitian matrix. Construction rejects non-square or non-finite
/// input and anything whose hermiticity defect max|M - M^dagger| exceeds
/// tol::hermiticity * (1 + max entry magnitude); the diagnostic names the
/// offending entry.
class HermitianObservable {
 public:
  explicit HermitianObservable(ComplexMatrix m);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  double hermiticity_defect() const noexcept { return defect_; }

  HermitianObservable operator+(const HermitianObservable& other) const;
  HermitianObservable operator-(const HermitianObservable& other) const;

 private:
  ComplexMatrix m_;
  double defect_ = 0.0;
};

/// A unit-norm complex state. The public constructor tolerates serialization
/// rounding (renormalizes within tol::unit_norm_gate) and rejects anything
/// farther from unit norm; normalized() accepts any vector longer than
/// tol::degenerate_norm. After construction the norm defect is below
/// tol::unit_norm.
class StateVector {
 public:
  explicit StateVector(const ComplexVector& v);

  /// Normalize an arbitrary nonzero vector into a state.
  static StateVector normalized(const ComplexVector& v);

  Eigen::Index dim() const noexcept { return v_.size(); }
  const ComplexVector& amplitudes() const noexcept { return v_; }

 private:
  struct AlreadyUnit {};
  StateVector(AlreadyUnit, ComplexVector v) : v_(std::move(v)) {}
  ComplexVector v_;
};

/// A state together with an orthonormal basis of its orthogonal complement.
struct OrthonormalFrame {
  StateVector base;
  std::vector<StateVector> complement;
};

/// <psi|M|psi>. M need not be Hermitian (operator products are fine); the
/// result is real within 1e-12 when it is.
Complex expectation(const StateVector& psi, const ComplexMatrix& m);

/// <A^2> - <A>^2, clamped to zero when within tol::variance_clamp below it.
/// A more negative value throws std::logic_error.
double variance(const StateVector& psi, const HermitianObservable& a);

/// <[A,B]> = <AB> - <BA>; purely imaginary for Hermitian A, B.
Complex commutator_mean(const StateVector& psi, const HermitianObservable& a,
                        const HermitianObservable& b);

/// <{A,B}> = <AB> + <BA>; real for Hermitian A, B.
Complex anticommutator_mean(const StateVector& psi, const HermitianObservable& a,
                            const HermitianObservable& b);

/// v - psi <psi|v>: the component of v orthogonal to psi.
ComplexVector project_complement(const StateVector& psi, const ComplexVector& v);

/// Deterministic completion of psi to an orthonormal basis via a Householder
/// reflection; complement vectors come in a fixed order for fixed input.
OrthonormalFrame complete_basis(const StateVector& psi);

/// Derive a well-mixed child seed from a root seed and two indices, so that
/// per-cell draws are independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b);

/// Haar-distributed state: complex standard Gaussian draw, normalized.
/// Identical seed gives identical output.
StateVector random_state(Eigen::Index dim, std::uint64_t seed);

/// Haar-distributed state on the orthogonal complement of psi (dim >= 2):
/// Gaussian draw, projected off psi, normalized.
StateVector random_orthogonal_state(const StateVector& psi, std::uint64_t seed);

/// Random Hermitian matrix (G + G^dagger)/2 with complex standard Gaussian G.
HermitianObservable random_hermitian(Eigen::Index dim, std::uint64_t seed);

}  // namespace uncert
