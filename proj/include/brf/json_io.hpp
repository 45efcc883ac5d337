#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "brf/brf_solver.hpp"
#include "brf/grflow.hpp"
#include "brf/group_brf.hpp"
#include "brf/scalar.hpp"

namespace brf {

/// Insertion-ordered JSON keeps report fields in a stable, readable order.
using Json = nlohmann::ordered_json;

/// Rounds to twelve significant digits so serialized reports are
/// byte-identical across runs and platforms.
inline double fixed_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

/// Exact values carry their integers as strings (they can exceed 64 bits)
/// next to a rounded decimal; floating values are plain rounded numbers.
template <class S>
Json scalar_json(const S& v) {
  if constexpr (scalar_traits<S>::exact) {
    const Rational r = v;
    return Json{{"num", r.get_num().get_str()},
                {"den", r.get_den().get_str()},
                {"decimal", fixed_precision(to_double(v))}};
  } else {
    return fixed_precision(to_double(v));
  }
}

template <class S>
Json metric_json(const DiagonalMetric<S>& m) {
  return Json{{"x1", scalar_json(m.x1)},
              {"x2", scalar_json(m.x2)},
              {"x3", scalar_json(m.x3)}};
}

template <class S>
Json triple_json(const S& a, const S& b, const S& c) {
  return Json::array({scalar_json(a), scalar_json(b), scalar_json(c)});
}

/// Corrected BRF solutions over a grid of section parameters.
template <class S>
Json solve_report_json(const std::string& space_id,
                       const std::vector<S>& grid,
                       const std::vector<CorrectedSolveResult<S>>& rows) {
  Json out;
  out["report"] = "solve";
  out["space_id"] = space_id;
  out["exact"] = scalar_traits<S>::exact;
  out["z1_grid"] = Json::array();
  for (const auto& z1 : grid) out["z1_grid"].push_back(scalar_json(z1));
  out["solutions"] = Json::array();
  for (const auto& row : rows) {
    Json r;
    r["metric"] = metric_json(row.solution.metric);
    r["gk_coordinates"] = triple_json(row.solution.gk[0], row.solution.gk[1],
                                      row.solution.gk[2]);
    r["residual"] = fixed_precision(row.solution.residual);
    r["certificates"] = Json::array();
    for (const auto& c : row.certificates)
      r["certificates"].push_back(scalar_json(c));
    out["solutions"].push_back(std::move(r));
  }
  return out;
}

/// Legacy curve data at one section parameter, including the derivative
/// pack used by the corrected account.
template <class S>
Json legacy_report_json(const std::string& space_id, const S& z1,
                        const S& x3, const CurveDerivatives<S>& der,
                        const RicciRatios<S>& ratios) {
  Json out;
  out["report"] = "legacy";
  out["space_id"] = space_id;
  out["exact"] = scalar_traits<S>::exact;
  out["z1"] = scalar_json(z1);
  out["x3"] = scalar_json(x3);
  out["f_x"] = scalar_json(der.f_x);
  out["f_z"] = scalar_json(der.f_z);
  out["x3_prime"] = scalar_json(der.x3_prime);
  out["r12"] = scalar_json(der.r12);
  out["r13"] = scalar_json(der.r13);
  out["r12_prime"] = scalar_json(der.r12_prime);
  out["r13_prime"] = scalar_json(der.r13_prime);
  out["ricci_ratios"] = triple_json(ratios.r1, ratios.r2, ratios.r3);
  return out;
}

inline Json corrigendum_report_json(const CorrigendumReport& rep) {
  Json out;
  out["report"] = "corrigendum";
  out["space_id"] = rep.space;
  out["canonical_z1"] = fixed_precision(rep.canonical_z1);
  out["rows"] = Json::array();
  for (const auto& row : rep.rows) {
    Json r;
    r["z1"] = scalar_json(row.z1);
    r["legacy_metric"] = metric_json(row.legacy_point);
    r["legacy_residual"] = fixed_precision(row.legacy_residual);
    r["corrected_gk"] = triple_json(row.corrected_gk[0], row.corrected_gk[1],
                                    row.corrected_gk[2]);
    r["h2_p3_delta"] = fixed_precision(row.h2_p3_delta);
    out["rows"].push_back(std::move(r));
  }
  Json at;
  at["r12_prime"] = scalar_json(rep.at_canonical.r12_prime);
  at["r13_prime"] = scalar_json(rep.at_canonical.r13_prime);
  out["at_canonical"] = std::move(at);
  out["notes"] = rep.notes;
  return out;
}

inline Json rigidity_report_json(const std::string& algebra,
                                 const RigidityReport& rep) {
  Json out;
  out["report"] = "group";
  out["algebra"] = algebra;
  out["trials"] = rep.trials;
  out["converged"] = rep.converged;
  out["solutions_found"] = static_cast<int>(rep.solutions.size());
  out["degenerate_abelian"] = rep.degenerate_abelian;
  out["hull_certified"] = rep.hull_certified;
  out["max_deviation_from_ones"] = fixed_precision(rep.max_deviation_from_ones);
  out["solutions"] = Json::array();
  for (const auto& s : rep.solutions) {
    Json row = Json::array();
    for (int i = 0; i < s.size(); ++i) row.push_back(fixed_precision(s(i)));
    out["solutions"].push_back(std::move(row));
  }
  return out;
}

inline Json flow_report_json(const std::string& space_id, double z1,
                             double h_scale, const FlowResult& res) {
  Json out;
  out["report"] = "flow";
  out["space_id"] = space_id;
  out["z1"] = fixed_precision(z1);
  out["h_scale"] = fixed_precision(h_scale);
  switch (res.status) {
    case FlowStatus::blow_up: out["status"] = "blow_up"; break;
    case FlowStatus::positivity_loss: out["status"] = "positivity_loss"; break;
    case FlowStatus::equilibrium: out["status"] = "equilibrium"; break;
    case FlowStatus::reached_t_end: out["status"] = "reached_t_end"; break;
  }
  out["steps"] = static_cast<int>(res.points.size());
  if (!res.points.empty()) {
    const auto& last = res.points.back();
    out["final_t"] = fixed_precision(last.t);
    Json x = Json::array();
    for (double xi : last.x) x.push_back(fixed_precision(xi));
    out["final_x"] = std::move(x);
    out["final_rhs_norm"] = fixed_precision(last.rhs_norm);
  }
  return out;
}

inline Json error_json(const std::string& type, const std::string& message) {
  Json out;
  out["error"] = Json{{"type", type}, {"message", message}};
  return out;
}

/// Trajectory as plain CSV; columns suit external plotting.
inline std::string trajectory_csv(const FlowResult& res) {
  std::string out = "t,x1,x2,x3,residual,codifferential\n";
  char buf[160];
  for (const auto& pt : res.points) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                  pt.t, pt.x[0], pt.x[1], pt.x[2], pt.rhs_norm,
                  pt.codiff_residual);
    out += buf;
  }
  return out;
}

namespace detail {

inline std::string markdown_cell(const Json& v) {
  if (v.is_object() && v.contains("num") && v.contains("den")) {
    std::string s = v["num"].get<std::string>();
    if (v["den"].get<std::string>() != "1")
      s += "/" + v["den"].get<std::string>();
    return s;
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace detail

/// Renders {"columns": [...], "rows": [[...], ...]} as a markdown table.
/// Human output is always derived from the machine report.
inline std::string markdown_table(const Json& table) {
  std::string out;
  const auto& cols = table.at("columns");
  out += "|";
  for (const auto& c : cols) out += " " + c.get<std::string>() + " |";
  out += "\n|";
  for (size_t i = 0; i < cols.size(); ++i) out += " --- |";
  out += "\n";
  for (const auto& row : table.at("rows")) {
    out += "|";
    for (const auto& cell : row) out += " " + detail::markdown_cell(cell) + " |";
    out += "\n";
  }
  return out;
}

}  // namespace brf
