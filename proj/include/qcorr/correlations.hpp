#pragma once

// Entropic correlation measures (all in bits): von Neumann entropy, mutual
// information, classical correlations J_S with measurement on A, and discord.
// BD states have closed forms; general states go through a sphere search over
// measurement parameters, which also serves as the oracle for the closed forms.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qcorr/measurement.hpp"
#include "qcorr/qmat.hpp"
#include "qcorr/search.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

/// -sum p log2 p with 0 log 0 = 0; entries in [-kStateTol, 0) count as 0.
inline double shannon_bits(const std::vector<double>& probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p < -kStateTol) throw InvalidState(StateViolation::NotPSD, p);
    const double q = std::clamp(p, 0.0, 1.0);
    if (q > 0.0) h -= q * std::log2(q);
  }
  return h;
}

inline double binary_entropy(double p) { return shannon_bits({p, 1.0 - p}); }

/// Entropy of any square density operator (2x2 marginals or 4x4 joint states).
inline double von_neumann_entropy(const CMat& state) {
  return shannon_bits(hermitian_eigenvalues(detail::checked_state(state)));
}

inline double von_neumann_entropy(const DensityMatrix& rho) {
  return shannon_bits(hermitian_eigenvalues(rho.mat()));
}

inline double mutual_information(const DensityMatrix& rho) {
  return von_neumann_entropy(partial_trace(rho.mat(), Subsystem::A)) +
         von_neumann_entropy(partial_trace(rho.mat(), Subsystem::B)) - von_neumann_entropy(rho);
}

/// 2 - S(rho) from the closed-form spectrum.
inline double bd_mutual_information(const BDState& c) {
  require_valid(c);
  const auto l = bd_eigenvalues(c);
  return 2.0 - shannon_bits({l.begin(), l.end()});
}

struct ClassicalBd {
  double value = 0.0;
  int axis = 3;
};

/// J_S = 1 - H2((1 + c_max) / 2), attained by the axis measurement on max |c_i|.
inline ClassicalBd classical_correlations_bd(const BDState& c) {
  require_valid(c);
  const auto opt = optimal_s(c);
  return {1.0 - binary_entropy((1.0 + opt.c_max) / 2.0), opt.axis};
}

/// sum_j p'_j S(rho_B|j) for one measurement; impossible outcomes contribute 0.
inline double conditional_entropy_after(const DensityMatrix& rho, const MeasurementParam& s) {
  double h = 0.0;
  for (const auto& outcome : conditional_states_general(rho, pvm_from_s(s)))
    if (outcome.state) h += outcome.probability * von_neumann_entropy(*outcome.state);
  return h;
}

inline NumericOptimum classical_correlations_numeric(const DensityMatrix& rho,
                                                     const SearchConfig& cfg = {}) {
  const double s_b = von_neumann_entropy(partial_trace(rho.mat(), Subsystem::B));
  const auto best = minimize_on_sphere<4>(
      [&](const std::array<double, 4>& s) {
        return conditional_entropy_after(rho, MeasurementParam::normalized(s));
      },
      cfg);
  return {s_b - best.value, MeasurementParam::normalized(best.point)};
}

/// max over s of I(rho^{M(s)}).
inline NumericOptimum max_post_measurement_information(const DensityMatrix& rho,
                                                       const SearchConfig& cfg = {}) {
  const auto best = maximize_on_sphere<4>(
      [&](const std::array<double, 4>& s) {
        return mutual_information(
            post_measurement_state(rho, pvm_from_s(MeasurementParam::normalized(s))));
      },
      cfg);
  return {best.value, MeasurementParam::normalized(best.point)};
}

enum class DiscordMethod {
  ClosedBd,  ///< I - J_S with the BD closed forms
  Numeric,   ///< I - J_S with J_S from the measurement search
  ViaMutualInformation,  ///< I(rho) - max_M I(rho^M)
};

inline double discord(const BDState& c, DiscordMethod method, const SearchConfig& cfg = {}) {
  require_valid(c);
  switch (method) {
    case DiscordMethod::ClosedBd:
      return bd_mutual_information(c) - classical_correlations_bd(c).value;
    case DiscordMethod::Numeric: {
      const auto rho = bd_density(c);
      return mutual_information(rho) - classical_correlations_numeric(rho, cfg).value;
    }
    case DiscordMethod::ViaMutualInformation: {
      const auto rho = bd_density(c);
      return mutual_information(rho) - max_post_measurement_information(rho, cfg).value;
    }
  }
  throw std::invalid_argument("unknown discord method");
}

/// ClosedBd requires a BD state and throws NotBellDiagonal otherwise.
inline double discord(const DensityMatrix& rho, DiscordMethod method, const SearchConfig& cfg = {}) {
  switch (method) {
    case DiscordMethod::ClosedBd:
      return discord(bd_extract(rho), method, cfg);
    case DiscordMethod::Numeric:
      return mutual_information(rho) - classical_correlations_numeric(rho, cfg).value;
    case DiscordMethod::ViaMutualInformation:
      return mutual_information(rho) - max_post_measurement_information(rho, cfg).value;
  }
  throw std::invalid_argument("unknown discord method");
}

struct CorrelationReport {
  double mutual_info = 0.0;
  double classical = 0.0;
  double discord = 0.0;
  int optimal_axis = 3;
  double theta_star = 0.0;
};

/// Closed-form report for a BD state; discord is I - J_S by construction.
inline CorrelationReport correlation_report(const BDState& c) {
  const double i = bd_mutual_information(c);
  const auto j = classical_correlations_bd(c);
  const auto opt = optimal_s(c);
  return {i, j.value, i - j.value, j.axis, theta(c, opt.s)};
}

/// Numeric report for an arbitrary state. The axis is the largest |z_i| of the
/// best measurement and theta_star is |T^T z| at that measurement.
inline CorrelationReport correlation_report(const DensityMatrix& rho, const SearchConfig& cfg = {}) {
  const double i = mutual_information(rho);
  const auto j = classical_correlations_numeric(rho, cfg);
  const Vec3 z = z_vector(j.s_best);
  const auto f = fano_decompose(rho);
  int axis = 1;
  for (int k = 1; k < 3; ++k)
    if (std::abs(z[k]) > std::abs(z[axis - 1]) + kAxisTieTol) axis = k + 1;
  double th = 0.0;
  for (int col = 0; col < 3; ++col) {
    double v = 0.0;
    for (int row = 0; row < 3; ++row) v += f.t[row][col] * z[row];
    th += v * v;
  }
  return {i, j.value, i - j.value, axis, std::sqrt(th)};
}

}  // namespace qcorr
