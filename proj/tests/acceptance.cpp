// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qcorr/qcorr.hpp"

namespace {

using namespace qcorr;
using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

int failures = 0;

void report(int id, const char* title, double budget_s, const std::function<Check()>& body) {
  const auto start = Clock::now();
  Check c = body();
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  c.require(secs < budget_s, "runtime over budget");
  if (!c.ok) ++failures;
  std::printf("[%s] AC%d %s (%.3f s, budget %.0f s)%s%s\n", c.ok ? "PASS" : "FAIL", id, title, secs, budget_s,
              c.ok ? "" : ": ", c.detail.c_str());
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

bool strictly_decreasing(const std::vector<double>& v, std::size_t from = 0, std::size_t to = SIZE_MAX) {
  to = std::min(to, v.size());
  for (std::size_t n = from + 1; n < to; ++n)
    if (!(v[n] < v[n - 1])) return false;
  return true;
}

bool only_diagonal_entry(const Mat3& t, int axis) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const bool here = i == axis - 1 && j == axis - 1;
      if (here != (std::abs(t[i][j]) > 1e-12)) return false;
    }
  return true;
}

std::vector<BDState> seeded_states(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<BDState> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample_bd_state(rng));
  return out;
}

Check example_one() {
  Check c;
  const auto pts = trajectory({0.6, -0.6, 0.6}, {3, 1.0}, uniform_grid(1.0, 101));
  std::vector<double> d, i, da;
  double j_dev = 0.0;
  for (const auto& p : pts) {
    d.push_back(p.report.discord);
    i.push_back(p.report.mutual_info);
    da.push_back(p.d_a);
    j_dev = std::max(j_dev, std::abs(p.report.classical - pts[0].report.classical));
  }
  c.require(std::abs(pts[0].report.classical - 0.278072) <= 1e-6, "J_S(0) = " + num(pts[0].report.classical));
  c.require(j_dev <= 1e-9, "J_S deviation " + num(j_dev));
  c.require(std::abs(i[0] - 0.643221) <= 1e-6, "I(0) = " + num(i[0]));
  c.require(std::abs(d[0] - 0.365148) <= 1e-6, "D(0) = " + num(d[0]));
  c.require(std::abs(da[0] - 0.487279) <= 1e-6, "d_A(0) = " + num(da[0]));
  c.require(strictly_decreasing(d), "D not strictly decreasing");
  c.require(strictly_decreasing(i), "I not strictly decreasing");
  c.require(strictly_decreasing(da), "d_A not strictly decreasing");
  return c;
}

Check example_two() {
  Check c;
  const BDState c0{1, -0.6, 0.6};
  const ChannelSpec spec{3, 1.0};
  const auto ts = freezing_time(c0, spec);
  c.require(ts.has_value(), "no freezing time");
  if (!ts) return c;
  c.require(std::abs(*ts + 0.5 * std::log(0.6)) <= 1e-9, "t* = " + num(*ts));
  c.require(std::abs(*ts - 0.255413) <= 1e-6, "t* = " + num(*ts));

  const auto times = uniform_grid(1.0, 101);
  const auto pts = trajectory(c0, spec, times);
  const double frozen = 1.0 - binary_entropy(0.8);
  double lo = 1e9, hi = -1e9;
  std::vector<double> j_before, da_before;
  for (const auto& p : pts) {
    if (p.t < *ts) {
      lo = std::min(lo, p.report.discord);
      hi = std::max(hi, p.report.discord);
      j_before.push_back(p.report.classical);
      da_before.push_back(p.d_a);
      c.require(only_diagonal_entry(p.t_matrix_after, 1), "T(s_M) not T11-only at t=" + num(p.t));
    } else if (p.t > *ts) {
      c.require(std::abs(p.report.classical - frozen) <= 1e-9, "J_S not constant at t=" + num(p.t));
      c.require(only_diagonal_entry(p.t_matrix_after, 3), "T(s_M) not T33-only at t=" + num(p.t));
    }
  }
  c.require(hi - lo <= 1e-9, "D spread on [0,t*) " + num(hi - lo));
  c.require(std::abs(hi - 0.278072) <= 1e-6, "frozen D = " + num(hi));
  c.require(strictly_decreasing(j_before), "J_S not decaying before t*");
  c.require(strictly_decreasing(da_before), "d_A not strictly decreasing before t*");

  // Axis switches exactly once, at the grid point nearest t*.
  std::size_t switches = 0;
  double switch_at = -1.0;
  for (std::size_t n = 1; n < pts.size(); ++n)
    if (pts[n].optimal_axis != pts[n - 1].optimal_axis) {
      ++switches;
      switch_at = std::abs(pts[n].t - *ts) < std::abs(pts[n - 1].t - *ts) ? pts[n].t : pts[n - 1].t;
    }
  const double nearest = *std::min_element(times.begin(), times.end(), [&](double a, double b) {
    return std::abs(a - *ts) < std::abs(b - *ts);
  });
  c.require(switches == 1 && switch_at == nearest, "axis switches " + std::to_string(switches));

  // Continuity across t*.
  const double eps = 1e-12;
  const auto left = analyze_bd(c_trajectory(c0, spec, *ts - eps));
  const auto right = analyze_bd(c_trajectory(c0, spec, *ts + eps));
  c.require(std::abs(left.report.classical - right.report.classical) <= 1e-9, "J_S jumps at t*");
  c.require(std::abs(left.report.discord - right.report.discord) <= 1e-9, "D jumps at t*");
  return c;
}

const std::vector<BDState>& oracle_states() {
  static const std::vector<BDState> states = seeded_states(200, 42);
  return states;
}

Check discord_definitions() {
  Check c;
  double worst = 0.0;
  for (const auto& s : oracle_states())
    worst = std::max(worst, std::abs(discord(s, DiscordMethod::ClosedBd) -
                                     discord(s, DiscordMethod::ViaMutualInformation)));
  c.require(worst <= 1e-5, "max gap " + num(worst));
  std::printf("       max |D closed - D via mutual information| = %.3g\n", worst);
  return c;
}

Check closed_vs_numeric() {
  Check c;
  double j_gap = 0.0, da_gap = 0.0;
  for (const auto& s : oracle_states()) {
    j_gap = std::max(j_gap, std::abs(classical_correlations_bd(s).value -
                                     classical_correlations_numeric(bd_density(s)).value));
    da_gap = std::max(da_gap, std::abs(d_a_optimized(s) - d_a_numeric(s).value));
  }
  c.require(j_gap <= 1e-5, "J_S gap " + num(j_gap));
  c.require(da_gap <= 1e-5, "d_A gap " + num(da_gap));
  std::printf("       max J_S gap = %.3g, max d_A gap = %.3g\n", j_gap, da_gap);
  return c;
}

Check appendix_structure() {
  Check c;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 100; ++n) {
    const AlphaTriple a{u(rng), u(rng), u(rng)};
    const double top = f_hat(a.sum() / 5.0, a);
    for (int m = 0; m < 1000; ++m) {
      const double th = u(rng) * a.sum();
      c.require(f_hat(th, a) <= top, "f_hat(" + num(th) + ") above interior point");
    }
  }
  double worst = 0.0;
  for (const auto& s : seeded_states(100, 7)) {
    const double axis_min = std::min({d_A_bd_closed_z(s, {1, 0, 0}), d_A_bd_closed_z(s, {0, 1, 0}),
                                      d_A_bd_closed_z(s, {0, 0, 1})});
    worst = std::max(worst, std::abs(d_a_numeric(s).value - axis_min));
  }
  c.require(worst <= 1e-8, "sphere minimum off axis points by " + num(worst));
  std::printf("       max |numeric min - axis min| = %.3g\n", worst);
  return c;
}

Check channel_laws() {
  Check c;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  double kraus = 0.0, agree = 0.0, offdiag = 0.0;
  for (int n = 0; n < 100; ++n) {
    const ChannelSpec spec{1 + static_cast<int>(rng() % 3), u(rng)};
    const double t = u(rng);
    const auto ops = kraus_ops(spec, t);
    kraus = std::max(kraus, max_abs_diff(adjoint(ops[0]) * ops[0] + adjoint(ops[1]) * ops[1], CMat::identity(2)));
    const BDState c0 = sample_bd_state(rng);
    const auto evolved = apply_channel(bd_density(c0), spec, t);
    agree = std::max(agree, max_abs_diff(evolved.mat(), bd_matrix(c_trajectory(c0, spec, t))));
    const auto f = fano_decompose(evolved);
    for (int i = 0; i < 3; ++i) {
      offdiag = std::max({offdiag, std::abs(f.a[i]), std::abs(f.b[i])});
      for (int j = 0; j < 3; ++j)
        if (i != j) offdiag = std::max(offdiag, std::abs(f.t[i][j]));
    }
  }
  c.require(kraus <= 1e-12, "Kraus completeness " + num(kraus));
  c.require(agree <= 1e-12, "channel vs closed form " + num(agree));
  c.require(offdiag <= 1e-12, "evolved state not BD " + num(offdiag));
  return c;
}

Check measurement_bound() {
  Check c;
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g;
  for (int n = 0; n < 10000; ++n) {
    const BDState s = sample_bd_state(rng);
    const auto p = MeasurementParam::normalized({g(rng), g(rng), g(rng), g(rng)});
    const double cmax = std::max({std::abs(s.c1), std::abs(s.c2), std::abs(s.c3)});
    c.require(theta(s, p) <= cmax + 1e-12, "theta above max|c_i|");
    c.require(std::abs(theta(s, optimal_s(s).s) - cmax) <= 1e-12, "optimal_s misses the bound");
  }
  return c;
}

Check pure_state_anchors() {
  Check c;
  const auto bell = correlation_report(BDState{1, -1, 1});
  c.require(std::abs(bell.mutual_info - 2.0) <= 1e-9, "I = " + num(bell.mutual_info));
  c.require(std::abs(bell.classical - 1.0) <= 1e-9, "J_S = " + num(bell.classical));
  c.require(std::abs(bell.discord - 1.0) <= 1e-9, "D = " + num(bell.discord));
  const auto mixed = correlation_report(BDState{0, 0, 0});
  for (double v : {mixed.mutual_info, mixed.classical, mixed.discord, d_a_optimized({0, 0, 0})})
    c.require(std::abs(v) <= 1e-12, "maximally mixed measure " + num(v));
  const auto dense = validate(CMat::identity(4) * Complex{0.25, 0.0});
  c.require(std::abs(mutual_information(dense)) <= 1e-12, "maximally mixed I (matrix path)");
  return c;
}

}  // namespace

int main() {
  const auto start = Clock::now();
  report(1, "Example 1 trajectory (no freezing)", 1, example_one);
  report(2, "Example 2 trajectory (frozen discord, sudden transition)", 1, example_two);
  report(3, "Discord definitions agree on 200 BD states", 30, discord_definitions);
  report(4, "Closed forms match numeric oracles on 200 BD states", 60, closed_vs_numeric);
  report(5, "Interior maximum and axis-point minimum of d_A", 60, appendix_structure);
  report(6, "Channel laws", 10, channel_laws);
  report(7, "Measurement bound theta <= max|c_i|", 10, measurement_bound);
  report(8, "Pure and maximally mixed anchors", 1, pure_state_anchors);
  const double total = std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("%d failure(s), total %.2f s\n", failures, total);
  return failures == 0 && total < 120.0 ? 0 : 1;
}
