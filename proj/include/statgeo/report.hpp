#pragma once

// Report documents and their three renderings. JSON is the canonical form:
// fixed key order, two-space indent, floating-point values printed with 17
// significant digits, so identical runs produce byte-identical files and
// parsing the file back loses nothing. CSV follows RFC 4180 (CRLF, quoted
// fields where needed); text is a human-readable summary of the same rows.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "statgeo/config.hpp"
#include "statgeo/errors.hpp"
#include "statgeo/version.hpp"

namespace statgeo {

struct CheckEntry {
  std::string name;
  std::string model;
  std::optional<double> alpha;
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::pair<std::string, double>> residuals;
  double tolerance = 0.0;
  std::string verdict;  // pass | fail | hypotheses_not_met | skipped
  std::string note;

  bool failing() const { return verdict == "fail" || verdict == "hypotheses_not_met"; }
};

struct ReportDocument {
  std::string command;
  RunConfig config;
  std::vector<CheckEntry> checks;

  // skipped entries record checks whose hypotheses do not apply; they do not
  // count against the verdict
  std::string overall_verdict() const {
    for (const auto& c : checks) {
      if (c.failing()) return "fail";
    }
    return "pass";
  }
  bool pass() const { return overall_verdict() == "pass"; }
};

namespace report_detail {

inline std::string fmt_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string escape_json(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

inline std::string quoted(const std::string& s) { return "\"" + escape_json(s) + "\""; }

inline void write_scalar_map(std::ostringstream& out, const std::string& indent,
                             const std::vector<std::pair<std::string, double>>& kv) {
  if (kv.empty()) {
    out << "{}";
    return;
  }
  out << "{\n";
  for (std::size_t i = 0; i < kv.size(); ++i) {
    out << indent << "  " << quoted(kv[i].first) << ": " << fmt_double(kv[i].second);
    out << (i + 1 < kv.size() ? ",\n" : "\n");
  }
  out << indent << "}";
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    out += ch;
  }
  return out + "\"";
}

}  // namespace report_detail

inline std::string to_json(const ReportDocument& doc) {
  using report_detail::fmt_double;
  using report_detail::quoted;
  std::ostringstream out;
  out << "{\n";
  out << "  \"schema_version\": \"1\",\n";
  out << "  \"tool\": {\n    \"name\": " << quoted(kToolName)
      << ",\n    \"version\": " << quoted(kToolVersion) << "\n  },\n";
  out << "  \"command\": " << quoted(doc.command) << ",\n";

  const RunConfig& c = doc.config;
  out << "  \"config\": {\n";
  out << "    \"model\": " << quoted(c.model) << ",\n";
  out << "    \"params\": ";
  {
    std::vector<std::pair<std::string, double>> kv(c.params.begin(), c.params.end());
    report_detail::write_scalar_map(out, "    ", kv);
  }
  out << ",\n";
  out << "    \"as_printed\": " << (c.as_printed ? "true" : "false") << ",\n";
  out << "    \"alphas\": [";
  for (std::size_t i = 0; i < c.alphas.size(); ++i) {
    out << fmt_double(c.alphas[i]) << (i + 1 < c.alphas.size() ? ", " : "");
  }
  out << "],\n";
  out << "    \"samples\": " << c.samples << ",\n";
  out << "    \"seed\": " << c.seed << ",\n";
  out << "    \"c\": " << (c.c ? fmt_double(*c.c) : "null") << ",\n";
  out << "    \"tolerances\": ";
  report_detail::write_scalar_map(out, "    ", c.tol.named());
  out << ",\n";
  out << "    \"format\": " << quoted(format_name(c.format)) << ",\n";
  out << "    \"output\": " << quoted(c.output) << ",\n";
  out << "    \"inputs\": [";
  for (std::size_t i = 0; i < c.inputs.size(); ++i) {
    out << quoted(c.inputs[i]) << (i + 1 < c.inputs.size() ? ", " : "");
  }
  out << "]\n";
  out << "  },\n";

  out << "  \"checks\": [";
  for (std::size_t i = 0; i < doc.checks.size(); ++i) {
    const CheckEntry& e = doc.checks[i];
    out << (i == 0 ? "\n" : ",\n");
    out << "    {\n";
    out << "      \"name\": " << quoted(e.name) << ",\n";
    out << "      \"model\": " << quoted(e.model) << ",\n";
    out << "      \"alpha\": " << (e.alpha ? fmt_double(*e.alpha) : "null") << ",\n";
    out << "      \"values\": ";
    report_detail::write_scalar_map(out, "      ", e.values);
    out << ",\n";
    out << "      \"residuals\": ";
    report_detail::write_scalar_map(out, "      ", e.residuals);
    out << ",\n";
    out << "      \"tolerance\": " << fmt_double(e.tolerance) << ",\n";
    out << "      \"verdict\": " << quoted(e.verdict) << ",\n";
    out << "      \"note\": " << quoted(e.note) << "\n";
    out << "    }";
  }
  out << (doc.checks.empty() ? "]" : "\n  ]") << ",\n";
  out << "  \"overall_verdict\": " << quoted(doc.overall_verdict()) << "\n";
  out << "}\n";
  return out.str();
}

// one row per check: model,check,alpha,value,residual,tolerance,verdict
inline std::string to_csv(const ReportDocument& doc) {
  using report_detail::csv_field;
  using report_detail::fmt_double;
  std::string out = "model,check,alpha,value,residual,tolerance,verdict\r\n";
  for (const CheckEntry& e : doc.checks) {
    const std::string alpha = e.alpha ? fmt_double(*e.alpha) : "";
    const std::string value = e.values.empty() ? "" : fmt_double(e.values.front().second);
    std::string residual;
    if (!e.residuals.empty()) {
      double worst = e.residuals.front().second;
      for (const auto& [k, v] : e.residuals) {
        (void)k;
        worst = std::max(worst, v);
      }
      residual = fmt_double(worst);
    }
    out += csv_field(e.model) + "," + csv_field(e.name) + "," + alpha + "," + value + "," +
           residual + "," + fmt_double(e.tolerance) + "," + csv_field(e.verdict) + "\r\n";
  }
  return out;
}

inline std::string to_text(const ReportDocument& doc) {
  using report_detail::fmt_double;
  std::ostringstream out;
  out << kToolName << " " << doc.command;
  if (!doc.config.model.empty()) out << " " << doc.config.model;
  out << "\n";
  for (const CheckEntry& e : doc.checks) {
    out << "  [" << e.verdict << "] " << e.name;
    if (e.model != doc.config.model) out << " " << e.model;
    if (e.alpha) out << " alpha=" << *e.alpha;
    for (const auto& [k, v] : e.values) out << " " << k << "=" << v;
    for (const auto& [k, v] : e.residuals) out << " " << k << "=" << v;
    out << " (tol " << e.tolerance << ")";
    if (!e.note.empty()) out << " -- " << e.note;
    out << "\n";
  }
  out << "overall: " << doc.overall_verdict() << "\n";
  return out.str();
}

inline std::string render_report(const ReportDocument& doc, OutputFormat format) {
  switch (format) {
    case OutputFormat::json: return to_json(doc);
    case OutputFormat::csv: return to_csv(doc);
    case OutputFormat::text: return to_text(doc);
  }
  return to_json(doc);
}

// Reads a JSON report back into the document model (key order of values and
// residuals preserved). Used by the merge command and the round-trip tests.
inline ReportDocument parse_report_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::ordered_json::exception& e) {
    throw UsageError(std::string("report is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("schema_version").get<std::string>() != "1") {
      throw UsageError("unsupported report schema version");
    }
    ReportDocument doc;
    doc.command = j.at("command").get<std::string>();
    const auto& jc = j.at("config");
    doc.config.model = jc.at("model").get<std::string>();
    for (const auto& [k, v] : jc.at("params").items()) {
      doc.config.params[k] = v.get<double>();
    }
    doc.config.as_printed = jc.at("as_printed").get<bool>();
    doc.config.alphas = jc.at("alphas").get<std::vector<double>>();
    doc.config.samples = jc.at("samples").get<int>();
    doc.config.seed = jc.at("seed").get<std::uint64_t>();
    if (!jc.at("c").is_null()) doc.config.c = jc.at("c").get<double>();
    for (const auto& [k, v] : jc.at("tolerances").items()) {
      doc.config.tol.set(k, v.get<double>());
    }
    doc.config.format = parse_format(jc.at("format").get<std::string>());
    doc.config.output = jc.at("output").get<std::string>();
    doc.config.inputs = jc.at("inputs").get<std::vector<std::string>>();

    for (const auto& je : j.at("checks")) {
      CheckEntry e;
      e.name = je.at("name").get<std::string>();
      e.model = je.at("model").get<std::string>();
      if (!je.at("alpha").is_null()) e.alpha = je.at("alpha").get<double>();
      for (const auto& [k, v] : je.at("values").items()) {
        e.values.emplace_back(k, v.get<double>());
      }
      for (const auto& [k, v] : je.at("residuals").items()) {
        e.residuals.emplace_back(k, v.get<double>());
      }
      e.tolerance = je.at("tolerance").get<double>();
      e.verdict = je.at("verdict").get<std::string>();
      e.note = je.at("note").get<std::string>();
      doc.checks.push_back(std::move(e));
    }
    // the stored overall verdict must agree with the checks
    const std::string stored = j.at("overall_verdict").get<std::string>();
    if (stored != doc.overall_verdict()) {
      throw UsageError("report overall_verdict does not match its checks");
    }
    return doc;
  } catch (const nlohmann::ordered_json::exception& e) {
    throw UsageError(std::string("report JSON is missing fields: ") + e.what());
  }
}

inline ReportDocument load_report_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("could not open report file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_report_json(buf.str());
}

}  // namespace statgeo
