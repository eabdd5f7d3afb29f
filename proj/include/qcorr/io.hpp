#pragma once

// JSON and CSV formats:
//   state   {"kind":"bd","c":[c1,c2,c3]} or {"kind":"dense","re":[[..]],"im":[[..]]}
//   report  {"mutual_info","classical","discord","optimal_axis","theta_star"}
//   CSV     t,c1,c2,c3,I,J,D,dA,axis,T11,T22,T33 with 9 significant digits, LF

#include <array>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "qcorr/correlations.hpp"
#include "qcorr/decoherence.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

using nlohmann::json;

/// A parsed state description: BD coefficients or a raw 4x4 matrix (not yet validated).
using StateSpec = std::variant<BDState, CMat>;

class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline StateSpec parse_state(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw FormatError("state JSON needs a \"kind\" field");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "bd") {
    const auto& c = j.at("c");
    if (!c.is_array() || c.size() != 3) throw FormatError("\"c\" must hold three numbers");
    return BDState{c[0].get<double>(), c[1].get<double>(), c[2].get<double>()};
  }
  if (kind == "dense") {
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    auto check = [](const json& m, const char* name) {
      if (!m.is_array() || m.size() != 4) throw FormatError(std::string(name) + " must be 4x4");
      for (const auto& row : m)
        if (!row.is_array() || row.size() != 4) throw FormatError(std::string(name) + " must be 4x4");
    };
    check(re, "\"re\"");
    check(im, "\"im\"");
    CMat m(4, 4);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) m(r, c) = Complex{re[r][c].get<double>(), im[r][c].get<double>()};
    return m;
  }
  throw FormatError("unknown state kind \"" + kind + "\"");
}

inline json to_json(const BDState& c) { return {{"kind", "bd"}, {"c", {c.c1, c.c2, c.c3}}}; }

inline json to_json(const CMat& m) {
  json re = json::array();
  json im = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json rr = json::array();
    json ii = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return {{"kind", "dense"}, {"re", re}, {"im", im}};
}

inline json to_json(const Mat3& t) {
  json out = json::array();
  for (const auto& row : t) out.push_back({row[0], row[1], row[2]});
  return out;
}

inline json to_json(const CorrelationReport& r) {
  return {{"mutual_info", r.mutual_info},
          {"classical", r.classical},
          {"discord", r.discord},
          {"optimal_axis", r.optimal_axis},
          {"theta_star", r.theta_star}};
}

inline CorrelationReport report_from_json(const json& j) {
  return {j.at("mutual_info").get<double>(), j.at("classical").get<double>(),
          j.at("discord").get<double>(), j.at("optimal_axis").get<int>(),
          j.at("theta_star").get<double>()};
}

inline json to_json(const TrajectoryPoint& p) {
  return {{"t", p.t},
          {"c", {p.c.c1, p.c.c2, p.c.c3}},
          {"report", to_json(p.report)},
          {"d_a", p.d_a},
          {"t_matrix_after", to_json(p.t_matrix_after)},
          {"optimal_axis", p.optimal_axis}};
}

/// %.9g formatting, locale independent for the "C" locale the CLI runs in.
inline std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline constexpr const char* kTrajectoryCsvHeader = "t,c1,c2,c3,I,J,D,dA,axis,T11,T22,T33";

inline std::string csv_row(const TrajectoryPoint& p) {
  std::string row;
  auto add = [&](const std::string& s) {
    if (!row.empty()) row += ',';
    row += s;
  };
  add(format_number(p.t));
  add(format_number(p.c.c1));
  add(format_number(p.c.c2));
  add(format_number(p.c.c3));
  add(format_number(p.report.mutual_info));
  add(format_number(p.report.classical));
  add(format_number(p.report.discord));
  add(format_number(p.d_a));
  add(std::to_string(p.optimal_axis));
  for (int i = 0; i < 3; ++i) add(format_number(p.t_matrix_after[i][i]));
  return row;
}

inline void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& points) {
  os << kTrajectoryCsvHeader << '\n';
  for (const auto& p : points) os << csv_row(p) << '\n';
}

}  // namespace qcorr
