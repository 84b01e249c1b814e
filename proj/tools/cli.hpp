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

#ifndef BALLQ_TOOLS_CLI_HPP
#define BALLQ_TOOLS_CLI_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ballq/error.hpp"
#include "ballq/exactnum.hpp"
#include "ballq/group.hpp"
#include "ballq/kernel.hpp"
#include "ballq/lemmas.hpp"
#include "ballq/numeric.hpp"
#include "ballq/report.hpp"

namespace ballq::cli {

enum ExitCode : int { kPass = 0, kMathFailure = 1, kUsage = 2 };

inline constexpr const char* kOutputDirEnv = "BALLQ_OUTPUT_DIR";

inline constexpr double kSliceTolerance = 1e-8;
inline constexpr double kDerivativeTolerance = 1e-6;
inline constexpr double kTrivialDefectTolerance = 1e-9;

inline std::vector<long long> parse_int_list(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw UsageError("empty entry in list '" + text + "'");
    item = item.substr(first, last - first + 1);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || used == 0) throw UsageError("'" + item + "' is not an integer");
    out.push_back(v);
  }
  if (out.empty() || text.back() == ',') throw UsageError("malformed list '" + text + "'");
  return out;
}

inline std::optional<int> parse_order(const std::string& text) {
  if (text == "auto") return std::nullopt;
  std::size_t used = 0;
  long long v = -1;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || v < 0 || v > 100000) throw UsageError("--order must be 'auto' or an integer in [0, 100000]");
  return static_cast<int>(v);
}

inline std::string order_echo(const std::optional<int>& order) { return order ? std::to_string(*order) : "auto"; }

inline std::string lemma_line(const LemmaCheckResult& r) {
  const char* rel = r.holds ? "holds" : "FAILS";
  return std::string(to_string(r.lemma_id)) + " " + r.params_string() + ": lhs " + r.lhs.to_string() + ", rhs " +
         r.rhs.to_string() + ", " + rel;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  long long m = 0;
  std::string t;
  std::string order = "auto";
  std::string format = "text";
};

inline int cmd_verify(const VerifyOptions& o, RunReport& report, std::ostream& out) {
  const std::vector<long long> t_raw = parse_int_list(o.t);
  const std::optional<int> order = parse_order(o.order);
  report.inputs = Json{{"m", o.m}, {"t", t_raw}, {"order", order_echo(order)}, {"format", o.format}};
  const GroupSpec spec = validate_spec(o.m, t_raw);
  const ResidualReport r = ke_residual(spec, order);
  std::optional<LemmaCheckResult> instance;
  if (r.prediction) instance = lemma_instance(spec, *r.prediction);

  Json entry = to_json(r);
  entry["lemma_instance"] = instance ? to_json(*instance) : Json(nullptr);
  report.results.push_back(entry);
  report.overall_pass = r.passed() && (!instance || instance->holds);

  if (o.format == "csv") {
    out << residual_csv_header() << residual_csv_row(r);
  } else if (o.format == "text") {
    out << "spec        " << spec.to_string() << "  (n=" << spec.n() << ", |T|=" << spec.t_sum() << ")\n";
    out << "order       " << r.order_used << "\n";
    if (!r.prediction) {
      out << "residual    " << (r.observed ? "degree " + std::to_string(r.observed->degree) + ", coeff " +
                                                 r.observed->coeff.to_string()
                                           : "zero to " + std::to_string(r.order_used))
          << "\n";
      out << "prediction  trivial group, R = 0\n";
    } else {
      const CasePrediction& p = *r.prediction;
      const std::string pq = p.pq_degree ? "degree " + std::to_string(*p.pq_degree) + ", coeff " + p.pq_coeff.to_string()
                                         : std::string("absent");
      out << "case        " << to_string(p.case_tag) << " (k=" << p.k << ", a=" << p.a << ")\n";
      out << "phi^{n+2}   degree " << p.lhs_degree << ", coeff " << p.lhs_coeff.to_string() << "\n";
      out << "P*Q         " << pq << "\n";
      out << "residual    degree " << r.observed->degree << ", coeff " << r.observed->coeff.to_string()
          << "    predicted degree " << p.residual_degree << ", coeff " << p.residual_coeff.to_string() << "\n";
      out << "inequality  " << (instance ? lemma_line(*instance) : std::string("none needed, the degrees differ"))
          << "\n";
    }
    out << "result      " << (report.overall_pass ? "match" : "MISMATCH") << "\n";
  }
  return report.overall_pass ? kPass : kMathFailure;
}

// ---------------------------------------------------------------------------
// scan

struct ScanOptions {
  int max_m = 8;
  int max_n = 4;
  std::string order = "auto";
  int jobs = 1;
  std::string format = "text";
};

inline int cmd_scan(const ScanOptions& o, RunReport& report, std::ostream& out, std::ostream& err) {
  if (o.max_m < 1 || o.max_n < 2) throw UsageError("--max-m must be >= 1 and --max-n >= 2");
  if (o.jobs < 1) throw UsageError("--jobs must be >= 1");
  const std::optional<int> order = parse_order(o.order);
  report.inputs = Json{{"max_m", o.max_m}, {"max_n", o.max_n}, {"order", order_echo(order)}, {"jobs", o.jobs},
                       {"format", o.format}};

  const std::vector<GroupSpec> specs = enumerate_specs(o.max_m, o.max_n);
  std::vector<std::optional<ResidualReport>> reports(specs.size());
  std::vector<std::exception_ptr> failures(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < specs.size();) {
      try {
        reports[i] = ke_residual(specs[i], order);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const int threads = std::min<int>(o.jobs, static_cast<int>(std::max<std::size_t>(specs.size(), 1)));
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<std::string> offending;
  std::map<std::string, int> case_counts;
  std::string csv = residual_csv_header();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (failures[i]) {
      try {
        std::rethrow_exception(failures[i]);
      } catch (const UsageError&) {
        throw;
      } catch (const std::exception& e) {
        offending.push_back(specs[i].to_string() + ": " + e.what());
        report.results.push_back(Json{{"spec", to_json(specs[i])}, {"error", e.what()}});
        continue;
      }
    }
    const ResidualReport& r = *reports[i];
    report.results.push_back(to_json(r));
    csv += residual_csv_row(r);
    ++case_counts[r.prediction ? std::string(to_string(r.prediction->case_tag)) : "Trivial"];
    if (!r.passed()) offending.push_back(specs[i].to_string());
  }
  report.overall_pass = offending.empty();

  if (o.format == "csv") {
    out << csv;
  } else if (o.format == "text") {
    for (const auto& entry : report.results) {
      if (entry.contains("error")) continue;
      out << "m=" << entry["spec"]["m"].get<int>() << " n=" << entry["spec"]["n"].get<int>() << " t=(";
      const auto& t = entry["spec"]["t"];
      for (std::size_t j = 0; j < t.size(); ++j) out << (j ? "," : "") << t[j].get<int>();
      out << ")  ";
      if (entry["observed"].is_string())
        out << entry["observed"].get<std::string>();
      else
        out << "degree " << entry["observed"]["degree"].get<int>() << " coeff "
            << entry["observed"]["coeff"].get<std::string>();
      const bool ok = entry["degree_match"].get<bool>() && entry["coeff_match"].get<bool>();
      out << "  " << (entry["prediction"].is_string() ? std::string("Trivial")
                                                        : entry["prediction"]["case_tag"].get<std::string>())
          << "  " << (ok ? "ok" : "MISMATCH") << "\n";
    }
    out << specs.size() << " specs;";
    for (const auto& [tag, count] : case_counts) out << " " << tag << "=" << count;
    out << "; " << offending.size() << " failing\n";
  }
  for (const auto& s : offending) err << "failing spec: " << s << "\n";
  return report.overall_pass ? kPass : kMathFailure;
}

// ---------------------------------------------------------------------------
// lemmas

struct LemmasOptions {
  std::string which = "all";
  std::optional<int> max;
  std::string format = "text";
};

// --max N scales the primary range of each suite: comb1 m, rearrange n and k,
// fmono k, main m, simplified k, elementary n and k, lmono n and k.
inline LemmaBounds bounds_for(const std::string& suite, std::optional<int> max) {
  LemmaBounds b;
  if (!max) return b;
  const int v = *max;
  if (suite == "comb1") b.comb1_max_m = v;
  if (suite == "rearrange") b.rearrange_max = v;
  if (suite == "fmono") b.fmono_max_k = v;
  if (suite == "main") b.main_max_m = v;
  if (suite == "simplified") b.simplified_max_k = v;
  if (suite == "elementary") b.elementary_max = v;
  if (suite == "lmono") b.lmono_max_n = b.lmono_max_k = v;
  return b;
}

inline bool param_is(const LemmaCheckResult& r, const std::string& name, std::vector<long long> values) {
  for (const auto& p : r.params)
    if (p.name == name) return p.values == values;
  return false;
}

// The tight instances worth showing next to the counts.
inline std::vector<LemmaCheckResult> highlights(const LemmaSuiteResult& s) {
  std::vector<LemmaCheckResult> out;
  for (const auto& r : s.results) {
    const bool pick =
        (s.name == "comb1") ||
        (s.name == "main" && param_is(r, "k", {1}) && param_is(r, "m", {2}) && param_is(r, "n", {2}) &&
         param_is(r, "lambda", {1, 0})) ||
        (s.name == "lmono" && r.lemma_id == LemmaId::L2ClosedForm && param_is(r, "k", {1})) ||
        (s.name == "lmono" && r.lemma_id == LemmaId::Lmono && param_is(r, "n", {1}) && param_is(r, "k", {1}));
    if (pick) out.push_back(r);
  }
  return out;
}

inline int cmd_lemmas(const LemmasOptions& o, RunReport& report, std::ostream& out, std::ostream& err) {
  if (o.max && *o.max < 1) throw UsageError("--max must be positive");
  if (o.max && *o.max > 200) throw UsageError("--max above 200 is not supported");
  report.inputs = Json{{"which", o.which}, {"max", o.max ? Json(*o.max) : Json("default")}, {"format", o.format}};
  std::vector<std::string> suites = o.which == "all" ? lemma_suite_names() : std::vector<std::string>{o.which};

  std::string csv = lemma_csv_header();
  for (const auto& name : suites) {
    const LemmaSuiteResult s = run_lemma_suite(name, bounds_for(name, o.max));
    const auto shown = highlights(s);
    report.results.push_back(to_json(s, shown));
    report.overall_pass = report.overall_pass && s.passed();
    for (const auto& r : s.results) csv += lemma_csv_row(r);
    if (o.format == "text") {
      out << name << ": " << s.checked << " instances (" << s.bounds << "), " << s.counterexamples.size()
          << " counterexamples\n";
      for (const auto& h : shown) out << "  " << lemma_line(h) << "\n";
      for (const auto& note : s.notes) out << "  note: " << note << "\n";
    }
    for (const auto& c : s.counterexamples) err << "counterexample: " << lemma_line(c) << "\n";
  }
  if (o.format == "csv") out << csv;
  return report.overall_pass ? kPass : kMathFailure;
}

// ---------------------------------------------------------------------------
// numeric

struct NumericOptions {
  long long m = 0;
  std::string t;
  double radius = 0.5;
  int grid = 20;
  std::uint64_t seed = 0;
  std::string out_file;
  std::string format = "text";
};

inline std::filesystem::path resolve_output(const std::string& file) {
  std::filesystem::path p(file);
  if (p.is_relative())
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') p = std::filesystem::path(dir) / p;
  return p;
}

inline int cmd_numeric(const NumericOptions& o, RunReport& report, std::ostream& out) {
  const std::vector<long long> t_raw = parse_int_list(o.t);
  report.inputs = Json{{"m", o.m},         {"t", t_raw},   {"radius", o.radius}, {"grid", o.grid},
                       {"seed", o.seed},   {"out", o.out_file}, {"format", o.format}};
  if (o.grid > 100000) throw UsageError("--grid above 100000 is not supported");
  const GroupSpec spec = validate_spec(o.m, t_raw);

  std::filesystem::path target;
  if (!o.out_file.empty()) {
    target = resolve_output(o.out_file);
    const auto ext = target.extension().string();
    if (ext != ".csv" && ext != ".json") throw UsageError("--out must end in .csv or .json");
  }

  const GridScanResult scan = residual_grid_scan(spec, o.radius, o.grid, o.seed);
  const int n = spec.n();
  const double scale = std::pow(double(n + 1), n);

  // Slice samples against the exact residual R(x) in Q(eps), relative to the
  // larger of the two terms whose difference is the defect.
  double slice_err = 0;
  for (std::size_t i = 0; i < scan.slice_count; ++i) {
    const NumericDefectSample& s = scan.samples[i];
    const Rational x1 = Rational::from_double(s.z[0].real());
    const double exact = -scale * residual_value(spec, x1 * x1).to_double();
    const double target = s.J - s.defect;
    slice_err = std::max(slice_err, std::abs(s.defect - exact) / std::max({1.0, std::abs(exact), std::abs(target)}));
  }
  const bool slice_ok = slice_err <= kSliceTolerance;

  // Derivatives at up to five samples spread over the list.
  double grad_err = 0, hess_err = 0;
  const std::size_t total = scan.samples.size();
  const std::size_t picks = std::min<std::size_t>(5, total);
  for (std::size_t j = 0; j < picks; ++j) {
    const auto c = derivative_check(spec, scan.samples[j * total / picks].z);
    grad_err = std::max(grad_err, c.grad_rel_err);
    hess_err = std::max(hess_err, c.hess_rel_err);
  }
  const bool deriv_ok = grad_err <= kDerivativeTolerance && hess_err <= kDerivativeTolerance;
  const bool trivial_ok = !spec.is_trivial() || scan.max_abs_rel_defect <= kTrivialDefectTolerance;

  const NumericDefectSample& worst = scan.samples[scan.argmax];
  report.results.push_back(Json{{"spec", to_json(spec)},
                                {"samples", total},
                                {"slice_samples", scan.slice_count},
                                {"max_abs_rel_defect", scan.max_abs_rel_defect},
                                {"argmax", to_json(worst)},
                                {"slice_max_rel_err", slice_err},
                                {"slice_ok", slice_ok},
                                {"grad_max_rel_err", grad_err},
                                {"hess_max_rel_err", hess_err},
                                {"derivatives_ok", deriv_ok},
                                {"trivial_control_ok", trivial_ok},
                                {"kernel_normalization", "phi omits the factor n!/pi^n"}});
  report.overall_pass = slice_ok && deriv_ok && trivial_ok;

  if (!target.empty()) {
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    std::ofstream file(target, std::ios::binary);
    if (!file) throw UsageError("cannot open '" + target.string() + "' for writing");
    if (target.extension() == ".csv")
      file << samples_csv(n, scan.samples);
    else
      file << Json{{"spec", to_json(spec)}, {"samples", samples_json(scan.samples)}}.dump(2) << "\n";
    if (!file) throw UsageError("failed writing '" + target.string() + "'");
  }

  if (o.format == "csv") {
    out << samples_csv(n, scan.samples);
  } else if (o.format == "text") {
    out << "spec                 " << spec.to_string() << "\n";
    out << "samples              " << total << " (" << scan.slice_count << " on the slice)\n";
    out << "max |rel_defect|     " << format_double(scan.max_abs_rel_defect) << " at z=(";
    for (std::size_t i = 0; i < worst.z.size(); ++i)
      out << (i ? ", " : "") << format_double(worst.z[i].real()) << (worst.z[i].imag() < 0 ? "-" : "+")
          << format_double(std::abs(worst.z[i].imag())) << "i";
    out << ")\n";
    out << "slice vs exact R     " << format_double(slice_err) << (slice_ok ? "  ok" : "  FAIL") << "\n";
    out << "derivatives          grad " << format_double(grad_err) << ", hess " << format_double(hess_err)
        << (deriv_ok ? "  ok" : "  FAIL") << "\n";
    if (spec.is_trivial()) out << "trivial control      " << (trivial_ok ? "ok" : "FAIL") << "\n";
    if (!target.empty()) out << "wrote                " << target.string() << "\n";
  }
  return report.overall_pass ? kPass : kMathFailure;
}

// ---------------------------------------------------------------------------

// args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and numeric checks of the Kahler-Einstein condition for Bergman metrics of cyclic ball quotients",
               "ballq"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  const std::vector<std::string> formats{"json", "csv", "text"};

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "residual of one spec against its case prediction");
  verify->add_option("--m", vo.m, "group order")->required();
  verify->add_option("--t", vo.t, "comma-separated exponents")->required();
  verify->add_option("--order", vo.order, "truncation degree or 'auto'");
  verify->add_option("--format", vo.format)->check(CLI::IsMember(formats));

  ScanOptions so;
  auto* scan = app.add_subcommand("scan", "residuals of every canonical spec in a box");
  scan->add_option("--max-m", so.max_m, "largest group order")->capture_default_str();
  scan->add_option("--max-n", so.max_n, "largest dimension")->capture_default_str();
  scan->add_option("--order", so.order, "truncation degree or 'auto'");
  scan->add_option("--jobs", so.jobs, "worker threads");
  scan->add_option("--format", so.format)->check(CLI::IsMember(formats));

  LemmasOptions lo;
  std::vector<std::string> which_values{"all"};
  for (const auto& name : lemma_suite_names()) which_values.push_back(name);
  auto* lemmas = app.add_subcommand("lemmas", "exhaustive checks of the inequalities");
  lemmas->add_option("--which", lo.which)->check(CLI::IsMember(which_values));
  lemmas->add_option("--max", lo.max, "primary bound of the selected suites");
  lemmas->add_option("--format", lo.format)->check(CLI::IsMember(formats));

  NumericOptions no;
  auto* numeric = app.add_subcommand("numeric", "floating-point defect scan with cross-checks");
  numeric->add_option("--m", no.m, "group order")->required();
  numeric->add_option("--t", no.t, "comma-separated exponents")->required();
  numeric->add_option("--radius", no.radius, "sampling radius in (0, 1)")->capture_default_str();
  numeric->add_option("--grid", no.grid, "slice points and random points each")->capture_default_str();
  numeric->add_option("--seed", no.seed, "random seed")->capture_default_str();
  numeric->add_option("--out", no.out_file, std::string("sample file (.csv or .json), relative to $") + kOutputDirEnv);
  numeric->add_option("--format", no.format)->check(CLI::IsMember(formats));

  std::vector<const char*> argv{"ballq"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  RunReport report;
  std::string format = "text";
  const auto start = std::chrono::steady_clock::now();
  int code = kPass;
  std::ostringstream body;
  try {
    if (verify->parsed()) {
      report.command = "verify";
      format = vo.format;
      code = cmd_verify(vo, report, body);
    } else if (scan->parsed()) {
      report.command = "scan";
      format = so.format;
      code = cmd_scan(so, report, body, err);
    } else if (lemmas->parsed()) {
      report.command = "lemmas";
      format = lo.format;
      code = cmd_lemmas(lo, report, body, err);
    } else {
      report.command = "numeric";
      format = no.format;
      code = cmd_numeric(no, report, body);
    }
  } catch (const SpecError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << "\n";
    return kMathFailure;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kMathFailure;
  }
  report.wall_time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  if (format == "json")
    out << report.to_json().dump(2) << "\n";
  else
    out << body.str();
  return code;
}

}  // namespace ballq::cli

#endif  // BALLQ_TOOLS_CLI_HPP
