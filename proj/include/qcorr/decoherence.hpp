#pragma once

// Identical local Pauli channels on both qubits (bit flip, bit-phase flip,
// phase flip). BD states stay BD: the protected coefficient c_k is constant
// and the other two decay as exp(-2 gamma t).

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qcorr/correlations.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/ncmqc.hpp"
#include "qcorr/qmat.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

struct ChannelSpec {
  int k = 3;           ///< 1 bit flip, 2 bit-phase flip, 3 phase flip
  double gamma = 1.0;  ///< decoherence rate
};

inline void require_valid(const ChannelSpec& spec) {
  if (spec.k < 1 || spec.k > 3) throw std::invalid_argument("channel axis k must be 1, 2 or 3");
  if (!(spec.gamma >= 0.0)) throw std::invalid_argument("channel rate gamma must be >= 0");
}

inline void require_time(double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be >= 0");
}

/// {sqrt((1 - e^{-gamma t})/2) s_k, sqrt((1 + e^{-gamma t})/2) I}.
inline std::array<CMat, 2> kraus_ops(const ChannelSpec& spec, double t) {
  require_valid(spec);
  require_time(t);
  const double decay = std::exp(-spec.gamma * t);
  return {pauli(spec.k) * Complex{std::sqrt((1.0 - decay) / 2.0), 0.0},
          CMat::identity(2) * Complex{std::sqrt((1.0 + decay) / 2.0), 0.0}};
}

inline DensityMatrix apply_channel(const DensityMatrix& rho, const ChannelSpec& spec, double t) {
  const auto ops = kraus_ops(spec, t);
  CMat out(4, 4);
  for (const auto& ea : ops)
    for (const auto& eb : ops) {
      const CMat k = kron(ea, eb);
      out += k * rho.mat() * adjoint(k);
    }
  return validate(out);
}

inline BDState c_trajectory(const BDState& c0, const ChannelSpec& spec, double t) {
  require_valid(spec);
  require_time(t);
  const double decay = std::exp(-2.0 * spec.gamma * t);
  BDState c{c0.c1 * decay, c0.c2 * decay, c0.c3 * decay};
  switch (spec.k) {
    case 1: c.c1 = c0.c1; break;
    case 2: c.c2 = c0.c2; break;
    default: c.c3 = c0.c3; break;
  }
  return c;
}

inline constexpr double kFreezingTol = 1e-12;

/// One decaying coefficient is +-1 and the other equals -+c_k(0).
inline bool is_freezing_initial(const BDState& c0, const ChannelSpec& spec) {
  require_valid(spec);
  const int others[3][2] = {{2, 3}, {1, 3}, {1, 2}};
  const auto [i, j] = others[spec.k - 1];
  const double ck = c0[spec.k];
  auto holds = [&](int unit, int partner) {
    const double cu = c0[unit];
    if (std::abs(std::abs(cu) - 1.0) > kFreezingTol) return false;
    const double sign = cu > 0.0 ? 1.0 : -1.0;
    return std::abs(c0[partner] + sign * ck) <= kFreezingTol;
  };
  return holds(i, j) || holds(j, i);
}

/// t* = -ln(c_0) / (2 gamma) with c_0 = |c_k(0)|, the time at which the unit
/// coefficient has decayed to c_0. Empty when the freezing conditions fail,
/// c_0 = 0, or gamma = 0.
inline std::optional<double> freezing_time(const BDState& c0, const ChannelSpec& spec) {
  if (!is_freezing_initial(c0, spec)) return std::nullopt;
  const double cz = std::abs(c0[spec.k]);
  if (cz == 0.0 || spec.gamma == 0.0) return std::nullopt;
  return -std::log(cz) / (2.0 * spec.gamma);
}

struct TrajectoryPoint {
  double t = 0.0;
  BDState c;
  CorrelationReport report;
  double d_a = 0.0;
  Mat3 t_matrix_after{};
  int optimal_axis = 3;
};

/// Static analysis of one BD state (a trajectory point at t = 0 with no channel).
inline TrajectoryPoint analyze_bd(const BDState& c, double t = 0.0) {
  require_valid(c);
  const auto opt = optimal_s(c);
  return {t, c, correlation_report(c), d_a_optimized(c), t_after_measurement(c, opt.s), opt.axis};
}

/// Points are evaluated independently from the closed-form coefficients.
inline std::vector<TrajectoryPoint> trajectory(const BDState& c0, const ChannelSpec& spec,
                                               const std::vector<double>& times) {
  require_valid(c0);
  require_valid(spec);
  for (std::size_t n = 0; n < times.size(); ++n) {
    require_time(times[n]);
    if (n > 0 && times[n] < times[n - 1]) throw std::invalid_argument("time grid must be sorted");
  }
  std::vector<TrajectoryPoint> points;
  points.reserve(times.size());
  for (double t : times) points.push_back(analyze_bd(c_trajectory(c0, spec, t), t));
  return points;
}

/// `steps` equally spaced times covering [0, t_max].
inline std::vector<double> uniform_grid(double t_max, std::size_t steps) {
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (!(t_max >= 0.0)) throw std::invalid_argument("t_max must be >= 0");
  std::vector<double> times(steps, 0.0);
  if (steps == 1) return times;
  for (std::size_t n = 0; n < steps; ++n)
    times[n] = t_max * static_cast<double>(n) / static_cast<double>(steps - 1);
  return times;
}

}  // namespace qcorr
