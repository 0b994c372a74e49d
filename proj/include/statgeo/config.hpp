#pragma once

// Run configuration for the CLI: defaults, the tolerance set, parsing of the
// comma lists used by --params/--alphas/--tol, and config files in either a
// TOML subset or JSON. CLI flags override file values; the merged result is
// echoed verbatim into every report so a run can be reproduced from its
// output alone.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "statgeo/errors.hpp"

namespace statgeo {

struct Tolerances {
  double statistical = 1e-6;          // torsion + metric-compatibility defect
  double curvature_fit_analytic = 1e-8;
  double curvature_fit_fd = 1e-5;     // fits of FD-composed connections
  double flatness = 1e-6;
  double hessian_residual = 1e-5;
  double interpolation = 1e-5;        // fitted vs interpolated k(alpha)
  double duality = 1e-6;
  double equiaffine = 1e-6;
  double codazzi = 1e-6;              // hypersurface line identities
  double lemma = 1e-6;                // closed-form operator expressions
  double theorem = 1e-6;              // predicted vs computed S and nu
  double commutator = 1e-8;

  // fixed field order, shared by the CLI parser and the report echo
  std::vector<std::pair<std::string, double*>> named() {
    return {{"statistical", &statistical},
            {"curvature_fit_analytic", &curvature_fit_analytic},
            {"curvature_fit_fd", &curvature_fit_fd},
            {"flatness", &flatness},
            {"hessian_residual", &hessian_residual},
            {"interpolation", &interpolation},
            {"duality", &duality},
            {"equiaffine", &equiaffine},
            {"codazzi", &codazzi},
            {"lemma", &lemma},
            {"theorem", &theorem},
            {"commutator", &commutator}};
  }
  std::vector<std::pair<std::string, double>> named() const {
    auto self = const_cast<Tolerances*>(this);
    std::vector<std::pair<std::string, double>> out;
    for (auto& [k, v] : self->named()) out.emplace_back(k, *v);
    return out;
  }
  void set(const std::string& key, double value) {
    if (!(value > 0.0)) throw UsageError("tolerance '" + key + "' must be positive");
    for (auto& [k, v] : named()) {
      if (k == key) {
        *v = value;
        return;
      }
    }
    std::string known;
    for (auto& [k, v] : named()) {
      (void)v;
      known += " " + k;
    }
    throw UsageError("unknown tolerance '" + key + "' (known:" + known + ")");
  }
};

enum class OutputFormat { json, csv, text };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  if (s == "text") return OutputFormat::text;
  throw UsageError("unknown format '" + s + "' (known: json csv text)");
}

inline const char* format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::text: return "text";
  }
  return "json";
}

struct RunConfig {
  std::string model;  // model name, or immersion name for verify-immersion
  std::map<std::string, double> params;
  std::vector<double> alphas = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
  int samples = 20;
  std::uint64_t seed = 42;
  Tolerances tol;
  bool as_printed = false;
  std::optional<double> c;  // Hessian curvature constant for verify-hessian
  std::string output;       // report destination; empty = stdout
  OutputFormat format = OutputFormat::json;
  std::vector<std::string> inputs;  // report files for the merge command
};

namespace config_detail {

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("could not parse " + what + " from '" + s + "'");
  }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace config_detail

// "k=v,k=v" lists as used by --params
inline std::map<std::string, double> parse_params_list(const std::string& text) {
  std::map<std::string, double> out;
  if (config_detail::trim(text).empty()) return out;
  for (const auto& item : config_detail::split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw UsageError("--params expects k=v pairs, got '" + item + "'");
    }
    const std::string key = config_detail::trim(item.substr(0, eq));
    if (key.empty()) throw UsageError("--params has an empty key in '" + item + "'");
    out[key] = config_detail::parse_number(config_detail::trim(item.substr(eq + 1)),
                                           "parameter '" + key + "'");
  }
  return out;
}

inline std::vector<double> parse_alpha_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : config_detail::split(text, ',')) {
    const std::string t = config_detail::trim(item);
    if (t.empty()) continue;
    out.push_back(config_detail::parse_number(t, "alpha"));
  }
  if (out.empty()) throw UsageError("--alphas list is empty");
  return out;
}

// --tol accepts either a bare number (overrides every tolerance) or
// name=value pairs for individual entries
inline void apply_tol_overrides(Tolerances& tol, const std::string& text) {
  for (const auto& item : config_detail::split(text, ',')) {
    const std::string t = config_detail::trim(item);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      const double v = config_detail::parse_number(t, "tolerance");
      for (auto& [k, ptr] : tol.named()) {
        (void)k;
        if (!(v > 0.0)) throw UsageError("tolerance must be positive");
        *ptr = v;
      }
    } else {
      tol.set(config_detail::trim(t.substr(0, eq)),
              config_detail::parse_number(config_detail::trim(t.substr(eq + 1)),
                                          "tolerance '" + t.substr(0, eq) + "'"));
    }
  }
}

namespace config_detail {

// The TOML subset the config files use: top-level `key = value` lines,
// [params] and [tol] sections, strings in double quotes, booleans, numbers,
// and flat numeric arrays. Comments start with #.
inline void load_toml(const std::string& text, RunConfig& cfg) {
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw UsageError("config line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_string = !in_string;
      if (line[i] == '#' && !in_string) {
        line = line.substr(0, i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "params" && section != "tol") {
        fail("unknown section [" + section + "] (known: [params], [tol])");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string raw = trim(line.substr(eq + 1));
    if (key.empty() || raw.empty()) fail("expected key = value");

    if (section == "params") {
      cfg.params[key] = parse_number(raw, "parameter '" + key + "'");
      continue;
    }
    if (section == "tol") {
      cfg.tol.set(key, parse_number(raw, "tolerance '" + key + "'"));
      continue;
    }
    auto as_string = [&]() -> std::string {
      if (raw.size() < 2 || raw.front() != '"' || raw.back() != '"') {
        fail("value for '" + key + "' must be a quoted string");
      }
      return raw.substr(1, raw.size() - 2);
    };
    if (key == "model") {
      cfg.model = as_string();
    } else if (key == "output") {
      cfg.output = as_string();
    } else if (key == "format") {
      cfg.format = parse_format(as_string());
    } else if (key == "as_printed") {
      if (raw == "true") cfg.as_printed = true;
      else if (raw == "false") cfg.as_printed = false;
      else fail("as_printed must be true or false");
    } else if (key == "samples") {
      cfg.samples = static_cast<int>(parse_number(raw, "samples"));
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_number(raw, "seed"));
    } else if (key == "c") {
      cfg.c = parse_number(raw, "c");
    } else if (key == "alphas") {
      if (raw.front() != '[' || raw.back() != ']') fail("alphas must be an array");
      cfg.alphas.clear();
      for (const auto& item : split(raw.substr(1, raw.size() - 2), ',')) {
        const std::string t = trim(item);
        if (!t.empty()) cfg.alphas.push_back(parse_number(t, "alpha"));
      }
      if (cfg.alphas.empty()) fail("alphas array is empty");
    } else {
      fail("unknown key '" + key + "'");
    }
  }
}

inline void load_json(const std::string& text, RunConfig& cfg) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config JSON must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "model") {
      cfg.model = value.get<std::string>();
    } else if (key == "params") {
      for (const auto& [k, v] : value.items()) cfg.params[k] = v.get<double>();
    } else if (key == "tol") {
      for (const auto& [k, v] : value.items()) cfg.tol.set(k, v.get<double>());
    } else if (key == "alphas") {
      cfg.alphas = value.get<std::vector<double>>();
      if (cfg.alphas.empty()) throw UsageError("config: alphas array is empty");
    } else if (key == "samples") {
      cfg.samples = value.get<int>();
    } else if (key == "seed") {
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "as_printed") {
      cfg.as_printed = value.get<bool>();
    } else if (key == "c") {
      cfg.c = value.get<double>();
    } else if (key == "output") {
      cfg.output = value.get<std::string>();
    } else if (key == "format") {
      cfg.format = parse_format(value.get<std::string>());
    } else {
      throw UsageError("config: unknown key '" + key + "'");
    }
  }
}

}  // namespace config_detail

// Loads a config file into cfg (fields present in the file overwrite the
// defaults; CLI flags are applied afterwards by the front end). JSON is
// detected by a leading '{', everything else is treated as TOML.
inline void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw UsageError("could not open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const std::string t = config_detail::trim(text);
  if (!t.empty() && t.front() == '{') {
    config_detail::load_json(text, cfg);
  } else {
    config_detail::load_toml(text, cfg);
  }
  if (cfg.samples < 1) throw UsageError("config: samples must be at least 1");
}

}  // namespace statgeo
