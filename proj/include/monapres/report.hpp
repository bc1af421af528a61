#pragma once

// Per-sentence result records: one human line or one JSON object per line.

#include "decide.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace monapres {

struct CaseTrace {
  std::string origin;
  std::string verdict;
  std::vector<std::string> steps;

  bool operator==(const CaseTrace&) const = default;
};

struct Record {
  std::string file;
  std::size_t index{0};
  std::string verdict;  // sat, unsat, unknown, error
  std::optional<std::string> witness;
  std::string certificate;
  std::string reason;
  std::string bound;
  std::vector<CaseTrace> case_trace;
  std::vector<std::string> log;
  std::string error;  // "line:col: message" for input errors
  double normalize_ms{0}, solve_ms{0};

  // equality ignores timings
  bool same_result(const Record& o) const {
    return file == o.file && index == o.index && verdict == o.verdict && witness == o.witness &&
           certificate == o.certificate && reason == o.reason && bound == o.bound && case_trace == o.case_trace &&
           log == o.log && error == o.error;
  }
};

inline std::string verdict_name(const Verdict& v) {
  if (v.is_sat()) return "sat";
  if (v.is_unsat()) return "unsat";
  return "unknown";
}

inline Record make_record(const std::string& file, std::size_t index, const Decision& d) {
  Record r;
  r.file = file;
  r.index = index;
  r.verdict = verdict_name(d.verdict);
  if (d.verdict.is_sat() && d.has_witness) r.witness = d.verdict.witness.get_str();
  r.certificate = d.verdict.certificate;
  if (d.verdict.is_unknown()) {
    r.reason = d.verdict.reason;
    r.bound = d.verdict.bound.get_str();
  }
  for (const auto& s : d.systems) r.case_trace.push_back({s.origin, verdict_name(s.verdict), s.verdict.trace});
  r.log = d.log;
  r.normalize_ms = d.normalize_ms;
  r.solve_ms = d.solve_ms;
  return r;
}

inline Record error_record(const std::string& file, const std::string& message) {
  Record r;
  r.file = file;
  r.verdict = "error";
  r.error = message;
  return r;
}

inline int exit_code(const Record& r) {
  if (r.verdict == "sat") return 0;
  if (r.verdict == "unsat") return 1;
  if (r.verdict == "unknown") return 2;
  return 64;
}

inline std::string human_line(const Record& r) {
  if (r.verdict == "sat") return r.witness ? "sat x=" + *r.witness : "sat";
  if (r.verdict == "unsat") return "unsat";
  if (r.verdict == "unknown") return "unknown (" + r.reason + ", bound=" + r.bound + ")";
  return "error: " + r.error;
}

inline nlohmann::ordered_json to_json(const Record& r) {
  nlohmann::ordered_json j;
  j["file"] = r.file;
  j["index"] = r.index;
  j["verdict"] = r.verdict;
  j["witness"] = r.witness ? nlohmann::ordered_json(*r.witness) : nlohmann::ordered_json(nullptr);
  if (!r.certificate.empty()) j["certificate"] = r.certificate;
  if (!r.reason.empty()) {
    j["reason"] = r.reason;
    j["bound"] = r.bound;
  }
  if (!r.error.empty()) j["error"] = r.error;
  auto& ct = j["case_trace"] = nlohmann::ordered_json::array();
  for (const auto& c : r.case_trace) ct.push_back({{"origin", c.origin}, {"verdict", c.verdict}, {"steps", c.steps}});
  j["log"] = r.log;
  j["timings_ms"] = {{"normalize", r.normalize_ms}, {"solve", r.solve_ms}};
  return j;
}

inline std::string json_line(const Record& r) { return to_json(r).dump(); }

inline Record read_record(const std::string& line) {
  auto j = nlohmann::json::parse(line);
  Record r;
  r.file = j.at("file").get<std::string>();
  r.index = j.at("index").get<std::size_t>();
  r.verdict = j.at("verdict").get<std::string>();
  if (!j.at("witness").is_null()) r.witness = j["witness"].get<std::string>();
  r.certificate = j.value("certificate", "");
  r.reason = j.value("reason", "");
  r.bound = j.value("bound", "");
  r.error = j.value("error", "");
  for (const auto& c : j.at("case_trace"))
    r.case_trace.push_back({c.at("origin").get<std::string>(), c.at("verdict").get<std::string>(), c.at("steps").get<std::vector<std::string>>()});
  r.log = j.at("log").get<std::vector<std::string>>();
  const auto& t = j.at("timings_ms");
  r.normalize_ms = t.at("normalize").get<double>();
  r.solve_ms = t.at("solve").get<double>();
  return r;
}

}  // namespace monapres
