#pragma once

// Two-qubit states: validation, Fano (Bloch vectors + correlation matrix)
// representation, and the Bell-diagonal family rho = (I + sum c_i s_i x s_i) / 4.

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "qcorr/qmat.hpp"

namespace qcorr {

/// Global PSD / trace tolerance.
inline constexpr double kStateTol = 1e-10;

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

enum class StateViolation { NonHermitian, TraceNotOne, NotPSD };

inline const char* to_string(StateViolation v) {
  switch (v) {
    case StateViolation::NonHermitian: return "NonHermitian";
    case StateViolation::TraceNotOne: return "TraceNotOne";
    case StateViolation::NotPSD: return "NotPSD";
  }
  return "?";
}

/// A state failed validation. violation() is the measured defect: the
/// Hermiticity norm, |Tr - 1|, or the most negative eigenvalue.
class InvalidState : public std::invalid_argument {
 public:
  InvalidState(StateViolation kind, double violation)
      : std::invalid_argument(std::string(to_string(kind)) +
                              " (measured violation " + std::to_string(violation) + ")"),
        kind_(kind),
        violation_(violation) {}

  StateViolation kind() const noexcept { return kind_; }
  double violation() const noexcept { return violation_; }

 private:
  StateViolation kind_;
  double violation_;
};

class NotBellDiagonal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

// Checks a square operator against the density-operator invariants and
// returns its symmetrized form.
inline CMat checked_state(const CMat& m) {
  if (!m.is_square()) throw DimensionError("state must be square");
  const double herm = hermiticity_defect(m);
  if (!(herm <= kHermitianTol)) throw InvalidState(StateViolation::NonHermitian, herm);
  CMat sym = (m + adjoint(m)) * Complex{0.5, 0.0};
  const double tr_err = std::abs(trace(sym).real() - 1.0);
  if (!(tr_err <= kStateTol)) throw InvalidState(StateViolation::TraceNotOne, tr_err);
  const double lowest = hermitian_eigenvalues(sym).back();
  if (lowest < -kStateTol) throw InvalidState(StateViolation::NotPSD, lowest);
  return sym;
}

}  // namespace detail

/// A validated 4x4 two-qubit density operator. Only validate() creates one.
class DensityMatrix {
 public:
  const CMat& mat() const noexcept { return mat_; }

  friend DensityMatrix validate(const CMat& rho);

 private:
  explicit DensityMatrix(CMat m) : mat_(std::move(m)) {}
  CMat mat_;
};

inline DensityMatrix validate(const CMat& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw DimensionError("validate: expected a 4x4 matrix");
  return DensityMatrix(detail::checked_state(rho));
}

struct FanoDecomposition {
  Vec3 a{};  ///< <s_i x I>
  Vec3 b{};  ///< <I x s_j>
  Mat3 t{};  ///< <s_i x s_j> - a_i b_j
};

inline double expectation(const CMat& op, const CMat& rho) { return trace(op * rho).real(); }

inline FanoDecomposition fano_decompose(const DensityMatrix& rho) {
  const CMat id = CMat::identity(2);
  FanoDecomposition f;
  for (int i = 0; i < 3; ++i) {
    f.a[i] = expectation(kron(pauli(i + 1), id), rho.mat());
    f.b[i] = expectation(kron(id, pauli(i + 1)), rho.mat());
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      f.t[i][j] = expectation(kron(pauli(i + 1), pauli(j + 1)), rho.mat()) - f.a[i] * f.b[j];
  return f;
}

/// rho_A x rho_B + (1/4) sum T_ij s_i x s_j. Throws InvalidState(NotPSD) for
/// unphysical triples.
inline DensityMatrix fano_compose(const FanoDecomposition& f) {
  const CMat id = CMat::identity(2);
  CMat rho_a = id;
  CMat rho_b = id;
  for (int i = 0; i < 3; ++i) {
    rho_a += pauli(i + 1) * Complex{f.a[i], 0.0};
    rho_b += pauli(i + 1) * Complex{f.b[i], 0.0};
  }
  CMat rho = kron(rho_a, rho_b) * Complex{0.25, 0.0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      rho += kron(pauli(i + 1), pauli(j + 1)) * Complex{0.25 * f.t[i][j], 0.0};
  return validate(rho);
}

/// Coefficients (c1, c2, c3) of a Bell-diagonal state.
struct BDState {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  Vec3 coefficients() const noexcept { return {c1, c2, c3}; }
  double operator[](int axis) const {
    switch (axis) {
      case 1: return c1;
      case 2: return c2;
      case 3: return c3;
      default: throw std::out_of_range("BDState axis must be 1, 2 or 3");
    }
  }

  friend bool operator==(const BDState&, const BDState&) = default;
};

using BDSpectrum = std::array<double, 4>;

/// Closed-form spectrum (lambda_0 .. lambda_3), unordered.
inline BDSpectrum bd_eigenvalues(const BDState& c) {
  return {0.25 * (1.0 - c.c1 - c.c2 - c.c3), 0.25 * (1.0 - c.c1 + c.c2 + c.c3),
          0.25 * (1.0 + c.c1 - c.c2 + c.c3), 0.25 * (1.0 + c.c1 + c.c2 - c.c3)};
}

inline constexpr double kBDTol = 1e-12;

inline bool is_valid(const BDState& c) {
  for (double l : bd_eigenvalues(c))
    if (!(l >= -kBDTol && l <= 1.0 + kBDTol)) return false;
  return true;
}

inline void require_valid(const BDState& c) {
  const auto ev = bd_eigenvalues(c);
  double lowest = ev[0];
  for (double l : ev) lowest = std::min(lowest, l);
  if (!is_valid(c)) throw InvalidState(StateViolation::NotPSD, lowest);
}

/// Inverse of bd_eigenvalues for a probability vector.
inline BDState bd_from_eigenvalues(const BDSpectrum& l) {
  return {1.0 - 2.0 * (l[0] + l[1]), 1.0 - 2.0 * (l[0] + l[2]), 1.0 - 2.0 * (l[0] + l[3])};
}

/// Assembled 4x4 matrix; no validity check.
inline CMat bd_matrix(const BDState& c) {
  CMat rho = CMat::identity(4);
  const Vec3 cs = c.coefficients();
  for (int i = 0; i < 3; ++i) rho += kron(pauli(i + 1), pauli(i + 1)) * Complex{cs[i], 0.0};
  return rho * Complex{0.25, 0.0};
}

inline DensityMatrix bd_density(const BDState& c) { return validate(bd_matrix(c)); }

/// Reads (T11, T22, T33) off a state whose marginals are maximally mixed and
/// whose correlation matrix is already diagonal. No local rotation is attempted.
inline BDState bd_extract(const DensityMatrix& rho) {
  const FanoDecomposition f = fano_decompose(rho);
  for (int i = 0; i < 3; ++i) {
    if (std::abs(f.a[i]) > kStateTol || std::abs(f.b[i]) > kStateTol) {
      throw NotBellDiagonal("state has non-vanishing local Bloch vectors");
    }
    for (int j = 0; j < 3; ++j)
      if (i != j && std::abs(f.t[i][j]) > kStateTol) {
        throw NotBellDiagonal("correlation matrix is not diagonal");
      }
  }
  return {f.t[0][0], f.t[1][1], f.t[2][2]};
}

/// Uniform sample over valid BD states: spectrum drawn uniformly from the
/// 3-simplex, then mapped to coefficients.
template <class Rng>
BDState sample_bd_state(Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  BDSpectrum l{};
  double sum = 0.0;
  for (auto& v : l) {
    v = expo(rng);
    sum += v;
  }
  for (auto& v : l) v /= sum;
  return bd_from_eigenvalues(l);
}

}  // namespace qcorr
