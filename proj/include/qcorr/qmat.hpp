#pragma once

// Small dense complex matrices (2x2, 3x3, 4x4) and the handful of kernels
// the correlation measures need: products, adjoints, Kronecker products,
// partial traces, Hermitian spectra, Hilbert-Schmidt norms and commutators.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcorr {

using Complex = std::complex<double>;

/// Hermiticity tolerance on ||h - h^dagger||_2 shared by the whole library.
inline constexpr double kHermitianTol = 1e-10;

/// Off-diagonal Frobenius norm at which the Jacobi sweeps stop.
inline constexpr double kJacobiTol = 1e-13;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Row-major dense complex matrix with value semantics and inline storage
/// for up to 4x4 entries.
class CMat {
 public:
  static constexpr std::size_t kMaxDim = 4;

  CMat() = default;

  CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0 || rows > kMaxDim || cols > kMaxDim) {
      throw DimensionError("CMat: dimensions must lie in [1, 4]");
    }
  }

  CMat(std::size_t rows, std::size_t cols, std::initializer_list<Complex> values)
      : CMat(rows, cols) {
    if (values.size() != rows * cols) {
      throw DimensionError("CMat: initializer has " + std::to_string(values.size()) +
                           " entries, expected " + std::to_string(rows * cols));
    }
    std::copy(values.begin(), values.end(), data_.begin());
  }

  static CMat identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static CMat diagonal(std::initializer_list<double> diag) {
    CMat m(diag.size(), diag.size());
    std::size_t i = 0;
    for (double d : diag) {
      m(i, i) = d;
      ++i;
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> entries() const noexcept { return {data_.data(), rows_ * cols_}; }

  CMat& operator+=(const CMat& o) {
    require_same_shape(o, "operator+=");
    for (std::size_t k = 0; k < rows_ * cols_; ++k) data_[k] += o.data_[k];
    return *this;
  }

  CMat& operator-=(const CMat& o) {
    require_same_shape(o, "operator-=");
    for (std::size_t k = 0; k < rows_ * cols_; ++k) data_[k] -= o.data_[k];
    return *this;
  }

  CMat& operator*=(Complex s) {
    for (std::size_t k = 0; k < rows_ * cols_; ++k) data_[k] *= s;
    return *this;
  }

  friend CMat operator+(CMat a, const CMat& b) { return a += b; }
  friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
  friend CMat operator*(CMat a, Complex s) { return a *= s; }
  friend CMat operator*(Complex s, CMat a) { return a *= s; }
  friend CMat operator-(CMat a) { return a *= -1.0; }

  friend CMat operator*(const CMat& a, const CMat& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionError("CMat product: inner dimensions " + std::to_string(a.cols_) +
                           " and " + std::to_string(b.rows_) + " differ");
    }
    CMat r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend bool operator==(const CMat&, const CMat&) = default;

 private:
  void require_same_shape(const CMat& o, const char* what) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionError(std::string("CMat ") + what + ": shape mismatch");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::array<Complex, kMaxDim * kMaxDim> data_{};
};

inline CMat adjoint(const CMat& a) {
  CMat r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
  return r;
}

inline Complex trace(const CMat& a) {
  if (!a.is_square()) throw DimensionError("trace: matrix is not square");
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

/// Largest entrywise modulus of a - b.
inline double max_abs_diff(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  double m = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) m = std::max(m, std::abs(ea[k] - eb[k]));
  return m;
}

/// sqrt(Tr[a^dagger a]).
inline double hs_norm(const CMat& a) {
  double s = 0.0;
  for (const auto& v : a.entries()) s += std::norm(v);
  return std::sqrt(s);
}

inline CMat commutator(const CMat& a, const CMat& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw DimensionError("commutator: operands must be square with equal dimensions");
  }
  return a * b - b * a;
}

/// Pauli matrix sigma_k for k in {1, 2, 3}.
inline CMat pauli(int k) {
  using namespace std::complex_literals;
  switch (k) {
    case 1: return CMat(2, 2, {0.0, 1.0, 1.0, 0.0});
    case 2: return CMat(2, 2, {0.0, -1i, 1i, 0.0});
    case 3: return CMat(2, 2, {1.0, 0.0, 0.0, -1.0});
    default: throw std::invalid_argument("pauli: index must be 1, 2 or 3");
  }
}

/// Kronecker product of two single-qubit operators: r[2i+k][2j+l] = a[i][j] b[k][l].
inline CMat kron(const CMat& a, const CMat& b) {
  if (a.rows() != 2 || a.cols() != 2 || b.rows() != 2 || b.cols() != 2) {
    throw DimensionError("kron: both operands must be 2x2");
  }
  CMat r(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return r;
}

enum class Subsystem { A, B };

/// Reduced operator of the kept qubit of a 4x4 two-qubit operator (A is the
/// high-order index).
inline CMat partial_trace(const CMat& rho, Subsystem keep) {
  if (rho.rows() != 4 || rho.cols() != 4) throw DimensionError("partial_trace: expected 4x4");
  CMat r(2, 2);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t k = 0; k < 2; ++k) {
        if (keep == Subsystem::A) {
          r(x, y) += rho(2 * x + k, 2 * y + k);
        } else {
          r(x, y) += rho(2 * k + x, 2 * k + y);
        }
      }
  return r;
}

/// ||h - h^dagger||_2.
inline double hermiticity_defect(const CMat& h) {
  if (!h.is_square()) throw DimensionError("hermiticity_defect: matrix is not square");
  return hs_norm(h - adjoint(h));
}

class NotHermitianError : public std::invalid_argument {
 public:
  explicit NotHermitianError(double defect)
      : std::invalid_argument("matrix is not Hermitian: ||h - h^dagger||_2 = " +
                              std::to_string(defect)),
        defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

namespace detail {

inline double off_diagonal_norm(const CMat& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Zeroes a(p,q) with a diagonal phase followed by a real plane rotation.
inline void jacobi_rotate(CMat& a, std::size_t p, std::size_t q) {
  const std::size_t n = a.rows();
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;

  // Phase step: column q *= conj(u), row q *= u, with u = apq / |apq|.
  const Complex u = apq / mag;
  for (std::size_t k = 0; k < n; ++k) a(k, q) *= std::conj(u);
  for (std::size_t k = 0; k < n; ++k) a(q, k) *= u;

  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
}

}  // namespace detail

/// Eigenvalues of a Hermitian matrix in descending order, by cyclic complex
/// Jacobi rotations. Inputs within kHermitianTol are symmetrized first.
inline std::vector<double> hermitian_eigenvalues(const CMat& h) {
  if (!h.is_square()) throw DimensionError("hermitian_eigenvalues: matrix is not square");
  const double defect = hermiticity_defect(h);
  if (!(defect <= kHermitianTol)) throw NotHermitianError(defect);

  CMat a = (h + adjoint(h)) * Complex{0.5, 0.0};
  const std::size_t n = a.rows();
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && detail::off_diagonal_norm(a) > kJacobiTol; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) detail::jacobi_rotate(a, p, q);
  }

  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i).real();
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

}  // namespace qcorr
