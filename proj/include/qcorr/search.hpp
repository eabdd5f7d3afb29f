#pragma once

// Derivative-free optimization on unit spheres: a seeded random grid
// (normalized Gaussian samples) followed by Nelder-Mead refinement in local
// tangent-plane coordinates around the best few well-separated grid points.

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <vector>

namespace qcorr {

struct SearchConfig {
  std::size_t grid_points = 1000;
  std::uint64_t seed = 42;
  /// Nelder-Mead stops when the simplex characteristic size falls below this.
  double simplex_tol = 1e-9;
  double initial_step = 0.15;
  std::size_t max_iterations = 4000;
  /// Also stop once the best value has moved by less than value_tol over
  /// stall_iterations iterations. Objectives on S^3 that depend only on the
  /// measured direction are flat along one tangent direction, so the simplex
  /// never shrinks there.
  double value_tol = 1e-15;
  std::size_t stall_iterations = 100;
  /// Refinement starts taken from the grid, pairwise at least min_separation apart.
  std::size_t starts = 4;
  double min_separation = 0.5;
};

template <std::size_t N>
struct SphereOptimum {
  std::array<double, N> point{};
  double value = 0.0;
};

namespace detail {

template <std::size_t N>
using Point = std::array<double, N>;

template <std::size_t N>
double dot(const Point<N>& a, const Point<N>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < N; ++k) s += a[k] * b[k];
  return s;
}

template <std::size_t N>
Point<N> normalize(Point<N> x) {
  const double n = std::sqrt(dot(x, x));
  for (auto& v : x) v /= n;
  return x;
}

template <std::size_t N>
std::vector<Point<N>> sphere_grid(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Point<N>> pts;
  pts.reserve(count);
  while (pts.size() < count) {
    Point<N> x{};
    for (auto& v : x) v = gauss(rng);
    if (dot(x, x) > 1e-12) pts.push_back(normalize(x));
  }
  return pts;
}

// Orthonormal basis of the tangent space at unit vector p (Gram-Schmidt on
// the canonical basis, skipping the most p-aligned direction).
template <std::size_t N>
std::array<Point<N>, N - 1> tangent_basis(const Point<N>& p) {
  std::size_t skip = 0;
  for (std::size_t k = 1; k < N; ++k)
    if (std::abs(p[k]) > std::abs(p[skip])) skip = k;
  std::array<Point<N>, N - 1> basis{};
  std::size_t filled = 0;
  for (std::size_t k = 0; k < N && filled < N - 1; ++k) {
    if (k == skip) continue;
    Point<N> e{};
    e[k] = 1.0;
    const double pe = dot(e, p);
    for (std::size_t m = 0; m < N; ++m) e[m] -= pe * p[m];
    for (std::size_t f = 0; f < filled; ++f) {
      const double be = dot(e, basis[f]);
      for (std::size_t m = 0; m < N; ++m) e[m] -= be * basis[f][m];
    }
    basis[filled++] = normalize(e);
  }
  return basis;
}

template <std::size_t N>
struct LocalChart {
  Point<N> origin;
  std::array<Point<N>, N - 1> basis;
  const std::function<double(const Point<N>&)>* objective;

  Point<N> lift(const double* u) const {
    Point<N> x = origin;
    for (std::size_t k = 0; k < N - 1; ++k)
      for (std::size_t m = 0; m < N; ++m) x[m] += u[k] * basis[k][m];
    return normalize(x);
  }
};

template <std::size_t N>
double chart_eval(const gsl_vector* u, void* params) {
  const auto* chart = static_cast<const LocalChart<N>*>(params);
  return (*chart->objective)(chart->lift(gsl_vector_const_ptr(u, 0)));
}

template <std::size_t N>
SphereOptimum<N> refine(const std::function<double(const Point<N>&)>& objective,
                        const Point<N>& start, const SearchConfig& cfg) {
  LocalChart<N> chart{start, tangent_basis(start), &objective};
  constexpr std::size_t dim = N - 1;

  gsl_multimin_function fn;
  fn.n = dim;
  fn.f = &chart_eval<N>;
  fn.params = &chart;

  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> x(gsl_vector_calloc(dim), gsl_vector_free);
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> step(gsl_vector_alloc(dim), gsl_vector_free);
  gsl_vector_set_all(step.get(), cfg.initial_step);
  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> solver(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim),
      gsl_multimin_fminimizer_free);
  gsl_multimin_fminimizer_set(solver.get(), &fn, x.get(), step.get());

  double anchor = gsl_multimin_fminimizer_minimum(solver.get());
  std::size_t stalled = 0;
  for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
    if (gsl_multimin_fminimizer_iterate(solver.get()) != GSL_SUCCESS) break;
    const double size = gsl_multimin_fminimizer_size(solver.get());
    if (gsl_multimin_test_size(size, cfg.simplex_tol) == GSL_SUCCESS) break;
    const double current = gsl_multimin_fminimizer_minimum(solver.get());
    if (anchor - current > cfg.value_tol) {
      anchor = current;
      stalled = 0;
    } else if (++stalled >= cfg.stall_iterations) {
      break;
    }
  }

  SphereOptimum<N> best;
  best.point = chart.lift(gsl_vector_const_ptr(gsl_multimin_fminimizer_x(solver.get()), 0));
  best.value = objective(best.point);
  const double at_start = objective(start);
  if (at_start < best.value) best = {start, at_start};
  return best;
}

}  // namespace detail

/// Minimizes a function on the unit sphere S^{N-1} in R^N. The result depends
/// only on the objective and cfg; ties in the grid resolve to the lower index.
template <std::size_t N>
SphereOptimum<N> minimize_on_sphere(const std::function<double(const std::array<double, N>&)>& objective,
                                    const SearchConfig& cfg = {}) {
  static_assert(N >= 2);
  gsl_error_handler_t* previous = gsl_set_error_handler_off();

  const auto grid = detail::sphere_grid<N>(std::max<std::size_t>(cfg.grid_points, 1), cfg.seed);
  std::vector<double> values(grid.size());
  std::transform(grid.begin(), grid.end(), values.begin(), [&](const auto& p) { return objective(p); });

  std::vector<std::size_t> order(grid.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  // Antipodal points count as close: the objectives used here are even in the point.
  std::vector<std::size_t> starts;
  const double max_cos = std::cos(cfg.min_separation);
  for (std::size_t idx : order) {
    if (starts.size() >= std::max<std::size_t>(cfg.starts, 1)) break;
    bool far = true;
    for (std::size_t s : starts)
      if (std::abs(detail::dot(grid[idx], grid[s])) > max_cos) far = false;
    if (far) starts.push_back(idx);
  }

  SphereOptimum<N> best{grid[order.front()], values[order.front()]};
  for (std::size_t s : starts) {
    const auto r = detail::refine<N>(objective, grid[s], cfg);
    if (r.value < best.value) best = r;
  }

  gsl_set_error_handler(previous);
  return best;
}

template <std::size_t N>
SphereOptimum<N> maximize_on_sphere(const std::function<double(const std::array<double, N>&)>& objective,
                                    const SearchConfig& cfg = {}) {
  auto r = minimize_on_sphere<N>([&](const std::array<double, N>& p) { return -objective(p); }, cfg);
  r.value = -r.value;
  return r;
}

}  // namespace qcorr
