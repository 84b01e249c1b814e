// Copyright 2026 The ballq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON and CSV serialization. Rationals are written as "p/q" strings, doubles
// in shortest round-trip form, and object keys in a fixed order so equal
// inputs give byte-identical output.

#ifndef BALLQ_REPORT_HPP
#define BALLQ_REPORT_HPP

#include <charconv>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ballq/exactnum.hpp"
#include "ballq/group.hpp"
#include "ballq/kernel.hpp"
#include "ballq/lemmas.hpp"
#include "ballq/numeric.hpp"

namespace ballq {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline Json to_json(const Rational& q) { return q.to_string(); }

inline Json to_json(const GroupSpec& s) {
  return Json{{"m", s.m()}, {"n", s.n()}, {"t", s.t()}, {"t_sum", s.t_sum()}};
}

inline Json to_json(const CasePrediction& p) {
  Json j;
  j["case_tag"] = std::string(to_string(p.case_tag));
  j["k"] = p.k;
  j["a"] = p.a;
  j["lhs_degree"] = p.lhs_degree;
  j["lhs_coeff"] = to_json(p.lhs_coeff);
  j["pq_degree"] = p.pq_degree ? Json(*p.pq_degree) : Json("infinity");
  j["pq_coeff"] = to_json(p.pq_coeff);
  j["residual_degree"] = p.residual_degree;
  j["residual_coeff"] = to_json(p.residual_coeff);
  return j;
}

inline Json to_json(const ResidualReport& r) {
  Json j;
  j["spec"] = to_json(r.spec);
  j["order_used"] = r.order_used;
  if (r.observed)
    j["observed"] = Json{{"degree", r.observed->degree}, {"coeff", to_json(r.observed->coeff)}};
  else
    j["observed"] = "zero to " + std::to_string(r.order_used);
  j["prediction"] = r.prediction ? to_json(*r.prediction) : Json("trivial");
  j["degree_match"] = r.degree_match;
  j["coeff_match"] = r.coeff_match;
  return j;
}

inline Json to_json(const LemmaCheckResult& r) {
  Json params = Json::object();
  for (const auto& p : r.params) params[p.name] = p.is_vector ? Json(p.values) : Json(p.values.front());
  return Json{{"lemma_id", std::string(to_string(r.lemma_id))},
              {"params", params},
              {"lhs", to_json(r.lhs)},
              {"rhs", to_json(r.rhs)},
              {"holds", r.holds}};
}

// Suites can hold tens of thousands of instances; the JSON keeps counts, the
// counterexamples and the explicitly requested highlights.
inline Json to_json(const LemmaSuiteResult& s, const std::vector<LemmaCheckResult>& highlights = {}) {
  Json j;
  j["suite"] = s.name;
  j["bounds"] = s.bounds;
  j["checked"] = s.checked;
  j["counterexamples"] = Json::array();
  for (const auto& c : s.counterexamples) j["counterexamples"].push_back(to_json(c));
  j["highlights"] = Json::array();
  for (const auto& h : highlights) j["highlights"].push_back(to_json(h));
  j["notes"] = s.notes;
  j["passed"] = s.passed();
  return j;
}

inline Json to_json(const cplx& c) { return Json::array({c.real(), c.imag()}); }

inline Json to_json(const NumericDefectSample& s) {
  Json z = Json::array();
  for (const auto& v : s.z) z.push_back(to_json(v));
  return Json{{"z", z},         {"phi", to_json(s.phi)},       {"J", s.J},
              {"defect", s.defect}, {"rel_defect", s.rel_defect}};
}

struct RunReport {
  std::string command;
  Json inputs = Json::object();
  Json results = Json::array();
  bool overall_pass = true;
  std::int64_t wall_time_ms = 0;

  Json to_json() const {
    return Json{{"tool_version", kToolVersion}, {"command", command},           {"inputs", inputs},
                {"results", results},           {"overall_pass", overall_pass}, {"wall_time_ms", wall_time_ms}};
  }
};

// ---------------------------------------------------------------------------
// CSV

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string residual_csv_header() {
  return "m,n,t,case,order_used,observed_degree,observed_coeff,predicted_degree,predicted_coeff,degree_match,"
         "coeff_match\n";
}

inline std::string residual_csv_row(const ResidualReport& r) {
  std::string row = std::to_string(r.spec.m()) + ',' + std::to_string(r.spec.n()) + ',' + csv_quote(r.spec.t_string()) +
                    ',' + (r.prediction ? std::string(to_string(r.prediction->case_tag)) : "Trivial") + ',' +
                    std::to_string(r.order_used) + ',';
  row += r.observed ? std::to_string(r.observed->degree) + ',' + r.observed->coeff.to_string() : std::string(",zero");
  row += ',';
  row += r.prediction ? std::to_string(r.prediction->residual_degree) + ',' + r.prediction->residual_coeff.to_string()
                      : std::string(",zero");
  row += std::string(",") + (r.degree_match ? "true" : "false") + ',' + (r.coeff_match ? "true" : "false") + '\n';
  return row;
}

inline std::string lemma_csv_header() { return "lemma_id,params,lhs,rhs,holds\n"; }

inline std::string lemma_csv_row(const LemmaCheckResult& r) {
  return std::string(to_string(r.lemma_id)) + ',' + csv_quote(r.params_string()) + ',' + r.lhs.to_string() + ',' +
         r.rhs.to_string() + ',' + (r.holds ? "true" : "false") + '\n';
}

inline std::string samples_csv_header(int n) {
  std::string h;
  for (int i = 1; i <= n; ++i) h += "z" + std::to_string(i) + "_re,z" + std::to_string(i) + "_im,";
  return h + "phi_re,phi_im,J,defect,rel_defect\n";
}

inline std::string samples_csv_row(const NumericDefectSample& s) {
  std::string row;
  for (const auto& v : s.z) row += format_double(v.real()) + ',' + format_double(v.imag()) + ',';
  row += format_double(s.phi.real()) + ',' + format_double(s.phi.imag()) + ',' + format_double(s.J) + ',' +
         format_double(s.defect) + ',' + format_double(s.rel_defect) + '\n';
  return row;
}

inline std::string samples_csv(int n, const std::vector<NumericDefectSample>& samples) {
  std::string out = samples_csv_header(n);
  for (const auto& s : samples) out += samples_csv_row(s);
  return out;
}

inline Json samples_json(const std::vector<NumericDefectSample>& samples) {
  Json arr = Json::array();
  for (const auto& s : samples) arr.push_back(to_json(s));
  return arr;
}

}  // namespace ballq

#endif  // BALLQ_REPORT_HPP
