#include "uncert/qmcore.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace uncert {

namespace {

void require_finite_square(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << "matrix must be square, got " << m.rows() << "x" << m.cols();
    throw InvalidInput(msg.str());
  }
  if (m.size() == 0) throw InvalidInput("matrix must be nonempty");
  if (!m.allFinite()) throw InvalidInput("matrix has a non-finite entry");
}

}  // namespace

HermitianObservable::HermitianObservable(ComplexMatrix m) : m_(std::move(m)) {
  require_finite_square(m_);
  double max_abs = 0.0;
  Eigen::Index wi = 0, wj = 0;
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    for (Eigen::Index j = 0; j < m_.cols(); ++j) {
      max_abs = std::max(max_abs, std::abs(m_(i, j)));
      double d = std::abs(m_(i, j) - std::conj(m_(j, i)));
      if (d > defect_) {
        defect_ = d;
        wi = i;
        wj = j;
      }
    }
  }
  if (defect_ > tol::hermiticity * (1.0 + max_abs)) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: |M(" << wi << "," << wj << ") - conj(M(" << wj << "," << wi
        << "))| = " << defect_;
    throw InvalidInput(msg.str());
  }
}

HermitianObservable HermitianObservable::operator+(const HermitianObservable& other) const {
  return HermitianObservable(m_ + other.m_);
}

HermitianObservable HermitianObservable::operator-(const HermitianObservable& other) const {
  return HermitianObservable(m_ - other.m_);
}

StateVector::StateVector(const ComplexVector& v) : v_(v) {
  if (v_.size() == 0) throw InvalidInput("state must be nonempty");
  if (!v_.allFinite()) throw InvalidInput("state has a non-finite amplitude");
  double n = v_.norm();
  if (std::abs(n - 1.0) > tol::unit_norm_gate) {
    std::ostringstream msg;
    msg << "state norm " << n << " is farther than " << tol::unit_norm_gate << " from 1";
    throw InvalidInput(msg.str());
  }
  v_ /= n;
}

StateVector StateVector::normalized(const ComplexVector& v) {
  if (v.size() == 0) throw InvalidInput("state must be nonempty");
  if (!v.allFinite()) throw InvalidInput("state has a non-finite amplitude");
  double n = v.norm();
  if (n <= tol::degenerate_norm) throw InvalidInput("vector norm too small to normalize");
  return StateVector(AlreadyUnit{}, v / n);
}

Complex expectation(const StateVector& psi, const ComplexMatrix& m) {
  require_finite_square(m);
  if (m.rows() != psi.dim()) {
    std::ostringstream msg;
    msg << "dimension mismatch: state dim " << psi.dim() << ", operator dim " << m.rows();
    throw InvalidInput(msg.str());
  }
  return psi.amplitudes().dot(m * psi.amplitudes());
}

double variance(const StateVector& psi, const HermitianObservable& a) {
  Complex mean = expectation(psi, a.matrix());
  Complex second = expectation(psi, a.matrix() * a.matrix());
  double var = second.real() - mean.real() * mean.real();
  if (var < 0.0) {
    if (var < -tol::variance_clamp) {
      std::ostringstream msg;
      msg << "variance " << var << " below clamp window; inputs are inconsistent";
      throw std::logic_error(msg.str());
    }
    var = 0.0;
  }
  return var;
}

Complex commutator_mean(const StateVector& psi, const HermitianObservable& a,
                        const HermitianObservable& b) {
  return expectation(psi, a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

Complex anticommutator_mean(const StateVector& psi, const HermitianObservable& a,
                            const HermitianObservable& b) {
  return expectation(psi, a.matrix() * b.matrix() + b.matrix() * a.matrix());
}

ComplexVector project_complement(const StateVector& psi, const ComplexVector& v) {
  if (v.size() != psi.dim()) throw InvalidInput("dimension mismatch in complement projection");
  return v - psi.amplitudes() * psi.amplitudes().dot(v);
}

OrthonormalFrame complete_basis(const StateVector& psi) {
  const ComplexVector& s = psi.amplitudes();
  Eigen::Index d = s.size();
  // Householder reflection H = I - 2 u u^dagger / |u|^2 with u = psi + phase*e0
  // maps e0 to -conj(phase)*psi, so -phase*H is unitary with first column psi.
  Complex phase = std::abs(s(0)) > tol::degenerate_norm ? s(0) / std::abs(s(0)) : Complex(1.0, 0.0);
  ComplexVector u = s;
  u(0) += phase;
  double u2 = u.squaredNorm();
  std::vector<StateVector> complement;
  complement.reserve(static_cast<std::size_t>(d > 0 ? d - 1 : 0));
  for (Eigen::Index k = 1; k < d; ++k) {
    ComplexVector col = ComplexVector::Zero(d);
    col(k) = 1.0;
    col -= u * (2.0 / u2) * std::conj(u(k));
    complement.push_back(StateVector::normalized(-phase * col));
  }
  return OrthonormalFrame{psi, std::move(complement)};
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  };
  return mix(mix(root ^ (0x9E3779B97F4A7C15ULL + a)) ^ (0xC2B2AE3D27D4EB4FULL + b));
}

StateVector random_state(Eigen::Index dim, std::uint64_t seed) {
  if (dim < 1) throw InvalidInput("state dimension must be positive");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    double re = normal(gen);
    double im = normal(gen);
    v(i) = Complex(re, im);
  }
  return StateVector::normalized(v);
}

HermitianObservable random_hermitian(Eigen::Index dim, std::uint64_t seed) {
  if (dim < 1) throw InvalidInput("matrix dimension must be positive");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      double re = normal(gen);
      double im = normal(gen);
      g(i, j) = Complex(re, im);
    }
  }
  return HermitianObservable((g + g.adjoint()) / 2.0);
}

StateVector random_orthogonal_state(const StateVector& psi, std::uint64_t seed) {
  if (psi.dim() < 2) throw InvalidInput("orthogonal complement is empty for dim < 2");
  std::uint64_t s = seed;
  for (int attempt = 0; attempt < 64; ++attempt) {
    ComplexVector v = project_complement(psi, random_state(psi.dim(), s).amplitudes());
    if (v.norm() > tol::degenerate_norm) return StateVector::normalized(v);
    s = derive_seed(s, 0x5eedULL, static_cast<std::uint64_t>(attempt));
  }
  throw std::logic_error("failed to draw a state in the orthogonal complement");
}

}  // namespace uncert
