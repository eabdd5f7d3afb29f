#pragma once

// Non-commutativity measure of quantum correlations. A state is written as
// rho = sum_ij A_ij x |i_B><j_B| for a basis {|i_B>} = {U|i>_c} of qubit B;
// D_A sums the Hilbert-Schmidt norms of the six pairwise commutators of the
// A_ij, and d_A minimizes D_A over the basis. For BD states D_A depends on the
// basis only through z(s), which gives the closed forms below.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "qcorr/measurement.hpp"
#include "qcorr/qmat.hpp"
#include "qcorr/search.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

/// Basis of qubit B given by the columns of U(s).
struct RepresentationBasis {
  MeasurementParam s;
};

/// A_ij stored at index 2*i + j.
using AOperators = std::array<CMat, 4>;

inline AOperators a_operators(const DensityMatrix& rho, const RepresentationBasis& basis) {
  const CMat u = unitary_from_s(basis.s);
  const CMat id = CMat::identity(2);
  AOperators ops;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      // |j_B><i_B| = U |j><i| U^dagger
      CMat ket_bra(2, 2);
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) ket_bra(r, c) = u(r, j) * std::conj(u(c, i));
      ops[2 * i + j] = partial_trace(kron(id, ket_bra) * rho.mat(), Subsystem::A);
    }
  return ops;
}

/// sum_ij A_ij x |i_B><j_B|.
inline CMat reconstruct(const AOperators& ops, const RepresentationBasis& basis) {
  const CMat u = unitary_from_s(basis.s);
  CMat rho(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      CMat ket_bra(2, 2);
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) ket_bra(r, c) = u(r, i) * std::conj(u(c, j));
      rho += kron(ops[2 * i + j], ket_bra);
    }
  return rho;
}

/// The six unordered pairs of distinct A_ij, as flat indices.
inline constexpr std::array<std::pair<int, int>, 6> kOperatorPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

inline double d_A_basis(const DensityMatrix& rho, const RepresentationBasis& basis) {
  const auto ops = a_operators(rho, basis);
  double total = 0.0;
  for (auto [p, q] : kOperatorPairs) total += hs_norm(commutator(ops[p], ops[q]));
  return total;
}

struct AlphaTriple {
  double a1 = 0.0;  ///< (c2 c3)^2
  double a2 = 0.0;  ///< (c1 c3)^2
  double a3 = 0.0;  ///< (c1 c2)^2

  double sum() const noexcept { return a1 + a2 + a3; }
};

inline AlphaTriple alpha_triple(const BDState& c) {
  return {(c.c2 * c.c3) * (c.c2 * c.c3), (c.c1 * c.c3) * (c.c1 * c.c3),
          (c.c1 * c.c2) * (c.c1 * c.c2)};
}

/// sqrt(sum a_i x_i^2) + 2 sqrt(sum a_i (1 - x_i^2)) for unit x.
inline double alpha_objective(const Vec3& x, const AlphaTriple& a) {
  const double along = a.a1 * x[0] * x[0] + a.a2 * x[1] * x[1] + a.a3 * x[2] * x[2];
  const double across =
      a.a1 * (1.0 - x[0] * x[0]) + a.a2 * (1.0 - x[1] * x[1]) + a.a3 * (1.0 - x[2] * x[2]);
  return std::sqrt(std::max(0.0, along)) + 2.0 * std::sqrt(std::max(0.0, across));
}

inline const double kInvSqrt8 = 1.0 / std::sqrt(8.0);

inline double d_A_bd_closed_z(const BDState& c, const Vec3& z) {
  return kInvSqrt8 * alpha_objective(z, alpha_triple(c));
}

inline double d_A_bd_closed(const BDState& c, const MeasurementParam& s) {
  require_valid(c);
  return d_A_bd_closed_z(c, z_vector(s));
}

struct OptimizedDA {
  double value = 0.0;
  /// 1-based position of the minimizing candidate (1: z = e3, 2: z = e1, 3: z = e2).
  int candidate = 1;
};

/// Minimum over the three axis-aligned z; the first candidate wins ties.
inline OptimizedDA d_a_optimized_detail(const BDState& c) {
  require_valid(c);
  const double p12 = std::abs(c.c1 * c.c2);
  const double p23 = std::abs(c.c2 * c.c3);
  const double p13 = std::abs(c.c1 * c.c3);
  const std::array<double, 3> cand{p12 + 2.0 * std::sqrt(p23 * p23 + p13 * p13),
                                   p23 + 2.0 * std::sqrt(p12 * p12 + p13 * p13),
                                   p13 + 2.0 * std::sqrt(p12 * p12 + p23 * p23)};
  std::size_t best = 0;
  for (std::size_t k = 1; k < 3; ++k)
    if (cand[k] < cand[best]) best = k;
  return {kInvSqrt8 * cand[best], static_cast<int>(best) + 1};
}

inline double d_a_optimized(const BDState& c) { return d_a_optimized_detail(c).value; }

struct NumericOptimumZ {
  double value = 0.0;
  MeasurementParam s_best;
  Vec3 z_best{0.0, 0.0, 1.0};
};

/// Minimizes the closed-form D_A over the z-sphere (two local coordinates).
inline NumericOptimumZ d_a_numeric(const BDState& c, const SearchConfig& cfg = {}) {
  require_valid(c);
  const AlphaTriple a = alpha_triple(c);
  const auto best =
      minimize_on_sphere<3>([&](const Vec3& z) { return kInvSqrt8 * alpha_objective(z, a); }, cfg);
  return {best.value, s_from_z(best.point), best.point};
}

/// d_A of an arbitrary state, minimized over the bases U(s)|i>.
inline NumericOptimum d_a_numeric_general(const DensityMatrix& rho, const SearchConfig& cfg = {}) {
  const auto best = minimize_on_sphere<4>(
      [&](const std::array<double, 4>& s) {
        return d_A_basis(rho, RepresentationBasis{MeasurementParam::normalized(s)});
      },
      cfg);
  return {best.value, MeasurementParam::normalized(best.point)};
}

/// sqrt(theta) + 2 sqrt(alpha - theta) on [0, alpha]; maximal at alpha / 5.
inline double f_hat(double th, const AlphaTriple& a) {
  const double total = a.sum();
  if (!(th >= 0.0 && th <= total)) {
    throw std::domain_error("f_hat: theta must lie in [0, alpha]");
  }
  return std::sqrt(th) + 2.0 * std::sqrt(total - th);
}

/// ||[A_p, A_q]||_2^2 from the Pauli expansion for BD states:
/// (1/32)(|c1c2|^2 |a12|^2 + |c1c3|^2 |a31|^2 + |c2c3|^2 |a23|^2) with
/// a_mn = s_m^{ij} s_n^{kl} - s_n^{ij} s_m^{kl} and s_m^{ij} = <i_B|s_m|j_B>.
inline double commutator_norm_sq_bd(const BDState& c, const RepresentationBasis& basis, int p, int q) {
  const CMat u = unitary_from_s(basis.s);
  const CMat ud = adjoint(u);
  std::array<CMat, 3> sig;
  for (int m = 0; m < 3; ++m) sig[m] = ud * pauli(m + 1) * u;
  const std::size_t i = p / 2, j = p % 2, k = q / 2, l = q % 2;
  auto alpha = [&](int m, int n) {
    return sig[m](i, j) * sig[n](k, l) - sig[n](i, j) * sig[m](k, l);
  };
  const double c12 = c.c1 * c.c2, c13 = c.c1 * c.c3, c23 = c.c2 * c.c3;
  return (c12 * c12 * std::norm(alpha(0, 1)) + c13 * c13 * std::norm(alpha(2, 0)) +
          c23 * c23 * std::norm(alpha(1, 2))) /
         32.0;
}

}  // namespace qcorr
