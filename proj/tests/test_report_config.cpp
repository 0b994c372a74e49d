#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <statgeo/config.hpp>
#include <statgeo/errors.hpp>
#include <statgeo/report.hpp>

using namespace statgeo;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path, std::ios::binary);
  out << body;
  return path;
}

ReportDocument sample_document() {
  ReportDocument doc;
  doc.command = "verify-curvature";
  doc.config.model = "normal_family";
  doc.config.alphas = {0.0, 1.0};
  doc.config.samples = 3;
  doc.config.seed = 11;

  CheckEntry a;
  a.name = "constant_curvature_fit";
  a.model = "normal_family";
  a.alpha = 0.0;
  a.values = {{"k_hat", -0.5}};
  a.residuals = {{"max_residual", 3.2e-12}};
  a.tolerance = 1e-8;
  a.verdict = "pass";
  doc.checks.push_back(a);

  CheckEntry b;
  b.name = "statistical_structure";
  b.model = "normal_family";
  b.values = {{"anchor_torsion", 0.0}};
  b.residuals = {{"max_torsion", 0.0}, {"max_codazzi", 1.0 / 3.0}};
  b.tolerance = 1e-6;
  b.verdict = "fail";
  b.note = "synthetic failure";
  doc.checks.push_back(b);
  return doc;
}

}  // namespace

TEST_CASE("params and alpha list parsing") {
  const auto params = parse_params_list("a=2,b=0.5,variant=1");
  CHECK(params.at("a") == 2.0);
  CHECK(params.at("b") == 0.5);
  CHECK(params.at("variant") == 1.0);
  CHECK(parse_params_list("").empty());
  CHECK_THROWS_AS(parse_params_list("a"), UsageError);
  CHECK_THROWS_AS(parse_params_list("a=x"), UsageError);
  CHECK_THROWS_AS(parse_params_list("=1"), UsageError);

  const auto alphas = parse_alpha_list("-2,-0.5,0,1e0");
  REQUIRE(alphas.size() == 4);
  CHECK(alphas[0] == -2.0);
  CHECK(alphas[3] == 1.0);
  CHECK(parse_alpha_list("1,,2").size() == 2);  // blanks between commas are skipped
  CHECK_THROWS_AS(parse_alpha_list("abc"), UsageError);
  CHECK_THROWS_AS(parse_alpha_list(""), UsageError);
}

TEST_CASE("tolerance overrides") {
  Tolerances tol;
  apply_tol_overrides(tol, "1e-4");
  CHECK(tol.statistical == 1e-4);
  CHECK(tol.theorem == 1e-4);
  CHECK(tol.curvature_fit_analytic == 1e-4);

  Tolerances named;
  apply_tol_overrides(named, "flatness=1e-9");
  CHECK(named.flatness == 1e-9);
  CHECK(named.statistical == 1e-6);

  CHECK_THROWS_AS(apply_tol_overrides(named, "bogus=1"), UsageError);
  CHECK_THROWS_AS(apply_tol_overrides(named, "flatness=-1"), UsageError);
  CHECK_THROWS_AS(apply_tol_overrides(named, "flatness=abc"), UsageError);
}

TEST_CASE("toml config loading") {
  const auto path = write_temp("statgeo_cfg.toml", R"(# comment
model = "upper_half_space"
samples = 12
seed = 99
as_printed = true
alphas = [-1, 0, 2]
format = "csv"
output = "out.csv"

[params]
dim = 3

[tol]
flatness = 1e-9
statistical = 2e-6
)");
  RunConfig cfg;
  load_config_file(path.string(), cfg);
  CHECK(cfg.model == "upper_half_space");
  CHECK(cfg.samples == 12);
  CHECK(cfg.seed == 99);
  CHECK(cfg.as_printed);
  REQUIRE(cfg.alphas.size() == 3);
  CHECK(cfg.alphas[1] == 0.0);
  CHECK(cfg.params.at("dim") == 3.0);
  CHECK(cfg.tol.flatness == 1e-9);
  CHECK(cfg.tol.statistical == 2e-6);
  CHECK(cfg.format == OutputFormat::csv);
  CHECK(cfg.output == "out.csv");

  const auto bad_key = write_temp("statgeo_bad1.toml", "modle = \"x\"\n");
  RunConfig sink;
  CHECK_THROWS_AS(load_config_file(bad_key.string(), sink), UsageError);

  const auto bad_section = write_temp("statgeo_bad2.toml", "[what]\nx = 1\n");
  CHECK_THROWS_AS(load_config_file(bad_section.string(), sink), UsageError);

  const auto bad_samples = write_temp("statgeo_bad3.toml", "samples = 0\n");
  CHECK_THROWS_AS(load_config_file(bad_samples.string(), sink), UsageError);

  CHECK_THROWS_AS(load_config_file("/nonexistent/statgeo.toml", sink), UsageError);
}

TEST_CASE("json config loading") {
  const auto path = write_temp("statgeo_cfg.json", R"({
  "model": "affine_r3",
  "params": {"a": 2, "b": 0.5},
  "alphas": [0, 1],
  "samples": 7,
  "tol": {"codazzi": 1e-7}
})");
  RunConfig cfg;
  load_config_file(path.string(), cfg);
  CHECK(cfg.model == "affine_r3");
  CHECK(cfg.params.at("a") == 2.0);
  CHECK(cfg.samples == 7);
  CHECK(cfg.tol.codazzi == 1e-7);

  const auto bad = write_temp("statgeo_bad.json", R"({"modle": "x"})");
  RunConfig sink;
  CHECK_THROWS_AS(load_config_file(bad.string(), sink), UsageError);
}

TEST_CASE("verdict aggregation") {
  ReportDocument doc = sample_document();
  CHECK(doc.overall_verdict() == "fail");
  CHECK_FALSE(doc.pass());
  doc.checks[1].verdict = "skipped";
  CHECK(doc.overall_verdict() == "pass");
  CHECK(doc.pass());
  doc.checks[1].verdict = "hypotheses_not_met";
  CHECK(doc.overall_verdict() == "fail");
}

TEST_CASE("json rendering is stable and ordered") {
  const ReportDocument doc = sample_document();
  const std::string one = to_json(doc);
  const std::string two = to_json(doc);
  CHECK(one == two);
  CHECK(one.find("\"schema_version\": \"1\"") != std::string::npos);
  CHECK(one.find("\"command\": \"verify-curvature\"") != std::string::npos);
  CHECK(one.find("\"overall_verdict\": \"fail\"") != std::string::npos);
  // 17 significant digits for exact parse-back
  CHECK(one.find("0.33333333333333331") != std::string::npos);
  CHECK(one.back() == '\n');
  // key order inside a check is fixed
  const auto name_pos = one.find("\"name\"");
  const auto verdict_pos = one.find("\"verdict\"");
  CHECK(name_pos < verdict_pos);
}

TEST_CASE("json parse-back round trip is byte identical") {
  const ReportDocument doc = sample_document();
  const std::string text = to_json(doc);
  const ReportDocument parsed = parse_report_json(text);
  CHECK(to_json(parsed) == text);
  CHECK(parsed.command == doc.command);
  CHECK(parsed.checks.size() == 2);
  CHECK(parsed.checks[1].note == "synthetic failure");
  CHECK(parsed.checks[0].alpha.has_value());
  CHECK_FALSE(parsed.checks[1].alpha.has_value());
}

TEST_CASE("parse-back rejects malformed documents") {
  CHECK_THROWS_AS(parse_report_json("not json"), UsageError);
  CHECK_THROWS_AS(parse_report_json("{}"), UsageError);
  CHECK_THROWS_AS(parse_report_json(R"({"schema_version": "2"})"), UsageError);

  // verdict tampering is caught by recomputation
  const std::string text = to_json(sample_document());
  std::string tampered = text;
  const auto pos = tampered.find("\"overall_verdict\": \"fail\"");
  REQUIRE(pos != std::string::npos);
  tampered.replace(pos, std::string("\"overall_verdict\": \"fail\"").size(),
                   "\"overall_verdict\": \"pass\"");
  CHECK_THROWS_AS(parse_report_json(tampered), UsageError);
}

TEST_CASE("csv rendering") {
  const std::string csv = to_csv(sample_document());
  CHECK(csv.find("model,check,alpha,value,residual,tolerance,verdict\r\n") == 0);
  // residual column carries the largest residual of the entry
  CHECK(csv.find("normal_family,statistical_structure,,0,0.33333333333333331,") !=
        std::string::npos);
  CHECK(csv.find("normal_family,constant_curvature_fit,0,-0.5,") != std::string::npos);
}

TEST_CASE("text rendering") {
  const std::string text = to_text(sample_document());
  CHECK(text.find("statgeo verify-curvature normal_family") != std::string::npos);
  CHECK(text.find("[fail] statistical_structure") != std::string::npos);
  CHECK(text.find("synthetic failure") != std::string::npos);
  CHECK(text.find("overall: fail") != std::string::npos);
}

TEST_CASE("report file loading") {
  const auto path = write_temp("statgeo_report.json", to_json(sample_document()));
  const ReportDocument doc = load_report_file(path.string());
  CHECK(doc.checks.size() == 2);
  CHECK_THROWS_AS(load_report_file("/nonexistent/report.json"), UsageError);
}

TEST_CASE("format parsing") {
  CHECK(parse_format("json") == OutputFormat::json);
  CHECK(parse_format("csv") == OutputFormat::csv);
  CHECK(parse_format("text") == OutputFormat::text);
  CHECK_THROWS_AS(parse_format("yaml"), UsageError);
  CHECK(std::string(format_name(OutputFormat::csv)) == "csv");
}

TEST_CASE("tolerance table lookup") {
  Tolerances tol;
  const auto entries = tol.named();
  CHECK(entries.size() == 12);
  CHECK(entries.front().first == std::string("statistical"));
  tol.set("lemma", 5e-5);
  CHECK(tol.lemma == 5e-5);
  CHECK_THROWS_AS(tol.set("nope", 1.0), UsageError);
}
