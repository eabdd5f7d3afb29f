#pragma once

// Rank-1 projective measurements on qubit A parametrized by a unit vector
// s in R^4 through V = s0 I + i (s1 s1 + s2 s2 + s3 s3), M_j = V|j><j|V^dagger.

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qcorr/qmat.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

inline constexpr double kUnitTol = 1e-12;

class MeasurementParam {
 public:
  /// Axis-3 measurement (computational basis).
  MeasurementParam() = default;

  /// Throws std::invalid_argument unless |s| = 1 within kUnitTol.
  explicit MeasurementParam(const std::array<double, 4>& s) : s_(s) {
    const double n2 = s[0] * s[0] + s[1] * s[1] + s[2] * s[2] + s[3] * s[3];
    if (!(std::abs(n2 - 1.0) <= kUnitTol)) {
      throw std::invalid_argument("MeasurementParam: s is not a unit vector (|s|^2 = " +
                                  std::to_string(n2) + ")");
    }
  }

  /// Projects any nonzero vector onto the unit 3-sphere.
  static MeasurementParam normalized(const std::array<double, 4>& x) {
    const double n = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
    if (!(n > 0.0)) throw std::invalid_argument("MeasurementParam: zero vector");
    MeasurementParam p;
    for (int k = 0; k < 4; ++k) p.s_[k] = x[k] / n;
    return p;
  }

  const std::array<double, 4>& s() const noexcept { return s_; }
  double operator[](int k) const { return s_.at(k); }

 private:
  std::array<double, 4> s_{1.0, 0.0, 0.0, 0.0};
};

/// Result of a search over measurement parameters.
struct NumericOptimum {
  double value = 0.0;
  MeasurementParam s_best;
};

struct Pvm {
  CMat m0;
  CMat m1;
};

inline CMat unitary_from_s(const MeasurementParam& p) {
  const auto& s = p.s();
  using namespace std::complex_literals;
  CMat v = CMat::identity(2) * Complex{s[0], 0.0};
  for (int k = 1; k <= 3; ++k) v += pauli(k) * (1i * s[k]);
  return v;
}

inline Pvm pvm_from_s(const MeasurementParam& p) {
  const CMat v = unitary_from_s(p);
  const CMat vd = adjoint(v);
  return {v * CMat::diagonal({1.0, 0.0}) * vd, v * CMat::diagonal({0.0, 1.0}) * vd};
}

/// Bloch vector of M_0; the measured direction.
inline Vec3 z_vector(const MeasurementParam& p) {
  const auto& s = p.s();
  return {2.0 * (-s[0] * s[2] + s[1] * s[3]), 2.0 * (s[0] * s[1] + s[2] * s[3]),
          s[0] * s[0] + s[3] * s[3] - s[1] * s[1] - s[2] * s[2]};
}

/// One parameter whose z_vector is the given unit vector.
inline MeasurementParam s_from_z(const Vec3& z) {
  const double n = std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2]);
  if (!(n > 0.0)) throw std::invalid_argument("s_from_z: zero vector");
  const Vec3 u{z[0] / n, z[1] / n, z[2] / n};
  const double s0 = std::sqrt(std::max(0.0, (1.0 + u[2]) / 2.0));
  if (s0 < 1e-8) return MeasurementParam::normalized({0.0, 1.0, 0.0, 0.0});
  return MeasurementParam::normalized({s0, u[1] / (2.0 * s0), -u[0] / (2.0 * s0), 0.0});
}

struct BdConditionals {
  CMat rho0;
  CMat rho1;
  double p0 = 0.5;
  double p1 = 0.5;
};

/// Conditional states of B for a BD state: (I +- sum c_i z_i s_i) / 2, p = 1/2.
inline BdConditionals conditional_states_bd(const BDState& c, const MeasurementParam& p) {
  require_valid(c);
  const Vec3 z = z_vector(p);
  const Vec3 cs = c.coefficients();
  CMat bloch(2, 2);
  for (int i = 0; i < 3; ++i) bloch += pauli(i + 1) * Complex{cs[i] * z[i], 0.0};
  const CMat id = CMat::identity(2);
  return {(id + bloch) * Complex{0.5, 0.0}, (id - bloch) * Complex{0.5, 0.0}, 0.5, 0.5};
}

inline constexpr double kZeroProbability = 1e-14;

/// Outcome j of a measurement on A. state is empty when p_j <= 1e-14; the
/// outcome is kept so callers see it was impossible rather than dropped.
struct ConditionalOutcome {
  std::optional<CMat> state;
  double probability = 0.0;
};

inline std::vector<ConditionalOutcome> conditional_states_general(const DensityMatrix& rho,
                                                                  const Pvm& m) {
  const CMat id = CMat::identity(2);
  std::vector<ConditionalOutcome> out;
  for (const CMat* mj : {&m.m0, &m.m1}) {
    const CMat weighted = kron(*mj, id) * rho.mat();
    const double pj = trace(weighted).real();
    if (pj > kZeroProbability) {
      out.push_back({partial_trace(weighted, Subsystem::B) * Complex{1.0 / pj, 0.0}, pj});
    } else {
      out.push_back({std::nullopt, 0.0});
    }
  }
  return out;
}

/// rho^M = sum_j (M_j x I) rho (M_j x I).
inline DensityMatrix post_measurement_state(const DensityMatrix& rho, const Pvm& m) {
  const CMat id = CMat::identity(2);
  const CMat k0 = kron(m.m0, id);
  const CMat k1 = kron(m.m1, id);
  return validate(k0 * rho.mat() * k0 + k1 * rho.mat() * k1);
}

/// Correlation matrix after measuring a BD state along s: T_ij = c_j z_i z_j.
inline Mat3 t_after_measurement(const BDState& c, const MeasurementParam& p) {
  const Vec3 z = z_vector(p);
  const Vec3 cs = c.coefficients();
  Mat3 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = cs[j] * z[i] * z[j];
  return t;
}

/// sqrt(sum |c_i z_i|^2); bounded by max |c_i|.
inline double theta(const BDState& c, const MeasurementParam& p) {
  const Vec3 z = z_vector(p);
  const Vec3 cs = c.coefficients();
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += (cs[i] * z[i]) * (cs[i] * z[i]);
  return std::sqrt(s);
}

/// |c_i| values closer than this to the maximum count as tied.
inline constexpr double kAxisTieTol = 1e-12;

/// Index (1-based) of the largest |c_i|, smallest index among ties.
inline int dominant_axis(const BDState& c) {
  const Vec3 cs = c.coefficients();
  double best = std::max({std::abs(cs[0]), std::abs(cs[1]), std::abs(cs[2])});
  if (best == 0.0) return 3;
  for (int i = 0; i < 3; ++i)
    if (std::abs(cs[i]) >= best - kAxisTieTol) return i + 1;
  return 3;
}

/// Fixed representative s with z = e_axis.
inline MeasurementParam axis_measurement(int axis) {
  const double h = 1.0 / std::sqrt(2.0);
  switch (axis) {
    case 1: return MeasurementParam::normalized({h, 0.0, -h, 0.0});
    case 2: return MeasurementParam::normalized({h, h, 0.0, 0.0});
    case 3: return MeasurementParam::normalized({1.0, 0.0, 0.0, 0.0});
    default: throw std::invalid_argument("axis must be 1, 2 or 3");
  }
}

struct OptimalMeasurement {
  MeasurementParam s;
  double c_max = 0.0;
  int axis = 3;
};

/// Measurement maximizing theta (and hence the classical correlations).
inline OptimalMeasurement optimal_s(const BDState& c) {
  const int axis = dominant_axis(c);
  return {axis_measurement(axis), std::abs(c[axis]), axis};
}

}  // namespace qcorr
