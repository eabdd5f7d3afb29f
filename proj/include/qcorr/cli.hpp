#pragma once

// Command implementations behind the qcorr tool. Each command takes a parsed
// RunConfig plus output streams and returns the process exit code:
// 0 success, 1 invalid input, 2 oracle tolerance breach.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "qcorr/correlations.hpp"
#include "qcorr/decoherence.hpp"
#include "qcorr/io.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/ncmqc.hpp"
#include "qcorr/states.hpp"

namespace qcorr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 1;
inline constexpr int kExitToleranceBreach = 2;

enum class OutputFormat { Csv, Json };

struct RunConfig {
  std::optional<BDState> bd;
  std::string state_path;
  int k = 3;
  double gamma = 1.0;
  double t_max = 1.0;
  std::size_t steps = 101;
  std::uint64_t seed = 42;
  std::optional<OutputFormat> format;
  std::string out;
  double tol = 1e-5;
  std::size_t n = 200;
  /// Test-only: perturbs the closed-form J_S so the oracle must fail.
  bool inject_bug = false;
};

/// Parses "c1,c2,c3" (comma separated, no spaces).
inline BDState parse_bd_triple(const std::string& text) {
  if (text.find_first_of(" \t\n\r") != std::string::npos) throw FormatError("--bd must not contain spaces");
  std::array<double, 3> c{};
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t end = i < 2 ? text.find(',', pos) : text.size();
    if (end == std::string::npos) throw FormatError("--bd expects c1,c2,c3");
    const std::string item = text.substr(pos, end - pos);
    std::size_t used = 0;
    try {
      c[i] = std::stod(item, &used);
    } catch (const std::exception&) {
      throw FormatError("--bd: cannot parse \"" + item + "\"");
    }
    if (used != item.size() || item.empty()) throw FormatError("--bd: cannot parse \"" + item + "\"");
    pos = end + 1;
  }
  return {c[0], c[1], c[2]};
}

inline StateSpec load_state(const RunConfig& cfg) {
  if (cfg.bd && !cfg.state_path.empty()) throw FormatError("give either --bd or --state, not both");
  if (cfg.bd) return *cfg.bd;
  if (cfg.state_path.empty()) throw FormatError("a state is required (--bd or --state)");
  std::ifstream in(cfg.state_path);
  if (!in) throw FormatError("cannot open state file " + cfg.state_path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed state JSON: ") + e.what());
  }
  return parse_state(j);
}

/// Returns BD coefficients when the state is (exactly) Bell-diagonal.
inline std::optional<BDState> as_bd(const StateSpec& spec, std::optional<DensityMatrix>& dense) {
  if (const auto* c = std::get_if<BDState>(&spec)) {
    require_valid(*c);
    return *c;
  }
  dense = validate(std::get<CMat>(spec));
  try {
    return bd_extract(*dense);
  } catch (const NotBellDiagonal&) {
    return std::nullopt;
  }
}

inline std::string fmt(double v) { return format_number(v); }

inline void write_text(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot write " + path);
  f << content;
}

inline SearchConfig search_config(const RunConfig& cfg) {
  SearchConfig s;
  s.seed = cfg.seed;
  return s;
}

inline int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const StateSpec spec = load_state(cfg);
    std::optional<DensityMatrix> dense;
    const std::optional<BDState> bd = as_bd(spec, dense);
    const DensityMatrix rho = bd ? bd_density(*bd) : *dense;
    const auto fano = fano_decompose(rho);

    json doc;
    doc["state"] = bd ? to_json(*bd) : to_json(rho.mat());
    doc["fano"] = {{"a", fano.a}, {"b", fano.b}, {"t", to_json(fano.t)}};

    std::optional<TrajectoryPoint> point;
    CorrelationReport report;
    double d_a = 0.0;
    Mat3 t_after{};
    if (bd) {
      point = analyze_bd(*bd);
      report = point->report;
      d_a = point->d_a;
      t_after = point->t_matrix_after;
      const auto l = bd_eigenvalues(*bd);
      doc["bd_eigenvalues"] = {l[0], l[1], l[2], l[3]};
      doc["method"] = "closed_bd";
    } else {
      const SearchConfig scfg = search_config(cfg);
      report = correlation_report(rho, scfg);
      d_a = d_a_numeric_general(rho, scfg).value;
      const auto j = classical_correlations_numeric(rho, scfg);
      t_after = fano_decompose(post_measurement_state(rho, pvm_from_s(j.s_best))).t;
      doc["bd_eigenvalues"] = nullptr;
      doc["method"] = "numeric";
    }
    doc["report"] = to_json(report);
    doc["d_a"] = d_a;
    doc["optimal_axis"] = report.optimal_axis;
    doc["t_matrix_after"] = to_json(t_after);

    out << "I   = " << fmt(report.mutual_info) << '\n'
        << "J_S = " << fmt(report.classical) << '\n'
        << "D   = " << fmt(report.discord) << '\n'
        << "d_A = " << fmt(d_a) << '\n'
        << "optimal axis = " << report.optimal_axis << '\n';
    if (bd) {
      const auto l = bd_eigenvalues(*bd);
      out << "BD eigenvalues = " << fmt(l[0]) << ' ' << fmt(l[1]) << ' ' << fmt(l[2]) << ' '
          << fmt(l[3]) << '\n';
    }
    out << "T =";
    for (const auto& row : fano.t) out << " [" << fmt(row[0]) << ' ' << fmt(row[1]) << ' ' << fmt(row[2]) << ']';
    out << "\nT(s_M) =";
    for (const auto& row : t_after) out << " [" << fmt(row[0]) << ' ' << fmt(row[1]) << ' ' << fmt(row[2]) << ']';
    out << '\n';

    if (!cfg.out.empty()) {
      if (cfg.format.value_or(OutputFormat::Json) == OutputFormat::Csv) {
        if (!point) throw FormatError("CSV output requires a Bell-diagonal state");
        std::ostringstream csv;
        write_trajectory_csv(csv, {*point});
        write_text(cfg.out, csv.str());
      } else {
        write_text(cfg.out, doc.dump(2) + "\n");
      }
    }
    return kExitOk;
  } catch (const InvalidState& e) {
    err << "error: invalid state: " << to_string(e.kind()) << " (violation " << e.violation() << ")\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInvalidInput;
}

inline int cmd_evolve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const StateSpec spec = load_state(cfg);
    std::optional<DensityMatrix> dense;
    const std::optional<BDState> c0 = as_bd(spec, dense);
    if (!c0) throw NotBellDiagonal("evolve requires a Bell-diagonal initial state");
    const ChannelSpec channel{cfg.k, cfg.gamma};
    require_valid(channel);
    const auto points = trajectory(*c0, channel, uniform_grid(cfg.t_max, cfg.steps));

    std::ostringstream body;
    if (cfg.format.value_or(OutputFormat::Csv) == OutputFormat::Csv) {
      write_trajectory_csv(body, points);
    } else {
      json arr = json::array();
      for (const auto& p : points) arr.push_back(to_json(p));
      body << arr.dump(2) << '\n';
    }

    const auto t_star = freezing_time(*c0, channel);
    if (cfg.out.empty()) {
      out << body.str();
    } else {
      write_text(cfg.out, body.str());
      json meta = {{"c0", {c0->c1, c0->c2, c0->c3}},
                   {"k", channel.k},
                   {"gamma", channel.gamma},
                   {"freezing", is_freezing_initial(*c0, channel)},
                   {"t_star", t_star ? json(*t_star) : json(nullptr)}};
      write_text(cfg.out + ".meta.json", meta.dump(2) + "\n");
    }
    if (t_star) err << "freezing conditions hold: t* = " << fmt(*t_star) << '\n';
    return kExitOk;
  } catch (const InvalidState& e) {
    err << "error: invalid state: " << to_string(e.kind()) << " (violation " << e.violation() << ")\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInvalidInput;
}

/// Largest closed-form vs numeric gaps over a sample of BD states.
struct OracleGaps {
  double classical = 0.0;
  double discord = 0.0;
  double d_a = 0.0;
  double discord_definitions = 0.0;
  std::array<BDState, 4> worst{};

  double max() const { return std::max({classical, discord, d_a, discord_definitions}); }
};

inline OracleGaps run_oracle(const std::vector<BDState>& states, const SearchConfig& scfg,
                             bool inject_bug = false) {
  OracleGaps g;
  auto track = [](double gap, double& slot, BDState& worst, const BDState& c) {
    if (gap > slot) {
      slot = gap;
      worst = c;
    }
  };
  for (const auto& c : states) {
    const DensityMatrix rho = bd_density(c);
    const double j_closed = classical_correlations_bd(c).value + (inject_bug ? 1e-3 : 0.0);
    const double i_closed = bd_mutual_information(c);
    const double j_num = classical_correlations_numeric(rho, scfg).value;
    const double d_num = mutual_information(rho) - j_num;
    const double d_mi = discord(rho, DiscordMethod::ViaMutualInformation, scfg);
    const double d_closed = i_closed - j_closed;
    track(std::abs(j_closed - j_num), g.classical, g.worst[0], c);
    track(std::abs(d_closed - d_num), g.discord, g.worst[1], c);
    track(std::abs(d_a_optimized(c) - d_a_numeric(c, scfg).value), g.d_a, g.worst[2], c);
    track(std::abs(d_closed - d_mi), g.discord_definitions, g.worst[3], c);
  }
  return g;
}

inline int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (!(cfg.tol >= 0.0)) throw FormatError("--tol must be >= 0");
    if (!cfg.state_path.empty()) throw FormatError("oracle samples BD states; use --bd to pin one");
    std::vector<BDState> states;
    if (cfg.bd) {
      require_valid(*cfg.bd);
      states.assign(cfg.n, *cfg.bd);
    } else {
      std::mt19937_64 rng(cfg.seed);
      for (std::size_t i = 0; i < cfg.n; ++i) states.push_back(sample_bd_state(rng));
    }
    const OracleGaps g = run_oracle(states, search_config(cfg), cfg.inject_bug);

    static constexpr const char* kNames[4] = {"J_S closed vs numeric", "D closed vs numeric",
                                              "d_A closed vs numeric", "D mutual-info form vs closed"};
    const double gaps[4] = {g.classical, g.discord, g.d_a, g.discord_definitions};
    out << "oracle: " << states.size() << " states, seed " << cfg.seed << ", tol " << fmt(cfg.tol) << '\n';
    for (int m = 0; m < 4; ++m) {
      out << "  " << std::left << std::setw(30) << kNames[m] << " max gap " << fmt(gaps[m])
          << (gaps[m] <= cfg.tol ? "  ok" : "  BREACH") << '\n';
    }
    if (!cfg.out.empty()) {
      json doc = {{"n", states.size()},
                  {"seed", cfg.seed},
                  {"tol", cfg.tol},
                  {"gap_classical", g.classical},
                  {"gap_discord", g.discord},
                  {"gap_d_a", g.d_a},
                  {"gap_discord_definitions", g.discord_definitions},
                  {"pass", g.max() <= cfg.tol}};
      write_text(cfg.out, doc.dump(2) + "\n");
    }
    if (g.max() <= cfg.tol) return kExitOk;
    for (int m = 0; m < 4; ++m)
      if (gaps[m] > cfg.tol) {
        const auto& w = g.worst[m];
        err << "tolerance breach in " << kNames[m] << ": worst state c = (" << fmt(w.c1) << ", "
            << fmt(w.c2) << ", " << fmt(w.c3) << ")\n";
      }
    return kExitToleranceBreach;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInvalidInput;
}

}  // namespace qcorr::cli
