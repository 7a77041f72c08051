#pragma once

#include <polyent/measures.hpp>
#include <polyent/numeric_policy.hpp>
#include <polyent/polygamy.hpp>

#include <json.hpp>

#include <array>
#include <charconv>
#include <optional>
#include <string>

namespace polyent {

inline constexpr const char* kToolName = "polyent";
inline constexpr const char* kToolVersion = "0.1.0";

/// 9 significant digits, '.' separator, independent of the C locale.
inline std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 9);
  return std::string(buf.data(), res.ptr);
}

inline nlohmann::json policy_to_json(const NumericPolicy& pol) {
  return {{"norm_tol", pol.norm_tol},         {"hermitian_tol", pol.hermitian_tol},
          {"trace_tol", pol.trace_tol},       {"psd_tol", pol.psd_tol},
          {"eig_clamp", pol.eig_clamp},       {"sqrt_fail", pol.sqrt_fail},
          {"isometry_tol", pol.isometry_tol}, {"agreement_tol", pol.agreement_tol},
          {"slack_tol", pol.slack_tol},       {"zero_measure", pol.zero_measure},
          {"file_norm_tol", pol.file_norm_tol}};
}

inline nlohmann::json tool_json() { return {{"name", kToolName}, {"version", kToolVersion}}; }

inline nlohmann::json measure_to_json(const MeasureResult& m) {
  nlohmann::json diag = nlohmann::json::object();
  for (const auto& [k, v] : m.diagnostics) diag[k] = v;
  return {{"value", m.value}, {"mode", to_string(m.mode)}, {"diagnostics", diag}};
}

inline nlohmann::json report_to_json(const PolygamyReport& r) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : r.terms) {
    terms.push_back({{"label", t.label}, {"value", t.value}, {"weight", t.weight}, {"tentative", t.tentative}});
  }
  nlohmann::json j{{"inequality", to_string(r.id)},
                   {"exponent", r.exponent},
                   {"direction", r.direction == Direction::upper ? "upper" : "lower"},
                   {"lhs_measure", r.lhs_measure},
                   {"lhs", r.lhs},
                   {"terms", terms},
                   {"rhs", r.rhs},
                   {"slack", r.slack},
                   {"holds", r.holds},
                   {"permutation", r.permutation},
                   {"mode_flags", r.mode_flags},
                   {"tentative", r.tentative},
                   {"escalated", r.escalated},
                   {"tol", r.tol}};
  j["condition_status"] = r.condition_status ? nlohmann::json(*r.condition_status) : nlohmann::json(nullptr);
  return j;
}

inline PolygamyReport report_from_json(const nlohmann::json& j) {
  PolygamyReport r;
  r.id = parse_inequality(j.at("inequality").get<std::string>());
  r.exponent = j.at("exponent").get<double>();
  r.direction = j.at("direction").get<std::string>() == "upper" ? Direction::upper : Direction::lower;
  r.lhs_measure = j.at("lhs_measure").get<double>();
  r.lhs = j.at("lhs").get<double>();
  for (const auto& t : j.at("terms")) {
    r.terms.push_back({t.at("label").get<std::string>(), t.at("value").get<double>(), t.at("weight").get<double>(),
                       t.at("tentative").get<bool>()});
  }
  r.rhs = j.at("rhs").get<double>();
  r.slack = j.at("slack").get<double>();
  r.holds = j.at("holds").get<bool>();
  r.permutation = j.at("permutation").get<std::vector<int>>();
  r.mode_flags = j.at("mode_flags").get<std::vector<std::string>>();
  r.tentative = j.at("tentative").get<bool>();
  r.escalated = j.at("escalated").get<bool>();
  r.tol = j.at("tol").get<double>();
  if (!j.at("condition_status").is_null()) r.condition_status = j.at("condition_status").get<bool>();
  return r;
}

/// Exit-code contract of `check`: 0 holds, 2 confirmed violation, 3 tentative violation.
inline int verdict_exit_code(const PolygamyReport& r) {
  if (r.holds) return 0;
  return r.tentative ? 3 : 2;
}

}  // namespace polyent
