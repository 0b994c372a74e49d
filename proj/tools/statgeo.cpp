// statgeo: numeric checks for dual connections, curvature constants, and
// hypersurface identities on the built-in model zoo.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "statgeo/commands.hpp"
#include "statgeo/config.hpp"
#include "statgeo/errors.hpp"
#include "statgeo/report.hpp"
#include "statgeo/version.hpp"

namespace {

using statgeo::RunConfig;

// raw flag values; only options the user actually passed override the config
// file, so keep them separate from the RunConfig until parse time
struct CommonFlags {
  std::string config_path;
  std::string model;
  std::string params;
  std::string alphas;
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> tol;
  bool as_printed = false;
  double c = 0.0;
  std::string output;
  std::string format;
};

void add_common_options(CLI::App* sub, CommonFlags& flags, bool with_c) {
  sub->add_option("--config", flags.config_path,
                  "load a TOML or JSON config file before applying flags");
  sub->add_option("--model", flags.model, "model name (see list-models)");
  sub->add_option("--params", flags.params,
                  "model parameters as name=value pairs, comma separated");
  sub->add_option("--alphas", flags.alphas, "comma separated alpha values");
  sub->add_option("--samples", flags.samples, "number of sample points")
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", flags.seed, "sample generator seed");
  sub->add_option("--tol", flags.tol,
                  "tolerance override, either a single number for every check or "
                  "name=value (repeatable)");
  sub->add_flag("--as-printed", flags.as_printed,
                "use the variant coefficient tables where a model defines them");
  if (with_c) {
    sub->add_option("--c", flags.c, "Hessian curvature constant (default: fitted)");
  }
  sub->add_option("--output", flags.output, "write the report to this file");
  sub->add_option("--format", flags.format, "output format: json, csv, or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
}

RunConfig make_config(const CLI::App* sub, const CommonFlags& flags) {
  RunConfig cfg;
  if (sub->count("--config")) statgeo::load_config_file(flags.config_path, cfg);
  if (sub->count("--model")) cfg.model = flags.model;
  if (sub->count("--params")) cfg.params = statgeo::parse_params_list(flags.params);
  if (sub->count("--alphas")) cfg.alphas = statgeo::parse_alpha_list(flags.alphas);
  if (sub->count("--samples")) cfg.samples = flags.samples;
  if (sub->count("--seed")) cfg.seed = flags.seed;
  for (std::size_t i = 0; i < sub->count("--tol"); ++i) {
    statgeo::apply_tol_overrides(cfg.tol, flags.tol[i]);
  }
  if (sub->count("--as-printed")) cfg.as_printed = true;
  if (sub->get_option_no_throw("--c") && sub->count("--c")) cfg.c = flags.c;
  if (sub->count("--output")) cfg.output = flags.output;
  if (sub->count("--format")) cfg.format = statgeo::parse_format(flags.format);
  return cfg;
}

int emit_report(const statgeo::ReportDocument& doc) {
  const std::string rendered = statgeo::render_report(doc, doc.config.format);
  if (!doc.config.output.empty()) {
    std::ofstream out(doc.config.output, std::ios::binary);
    if (!out) throw statgeo::UsageError("cannot open output file: " + doc.config.output);
    out << rendered;
    if (!out) throw statgeo::UsageError("failed writing output file: " + doc.config.output);
    std::cout << doc.command << ": wrote " << statgeo::format_name(doc.config.format)
              << " report to " << doc.config.output << " (overall "
              << doc.overall_verdict() << ")\n";
  } else {
    std::cout << rendered;
  }
  return doc.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(statgeo::kToolName) +
               ": numeric verification of dual-connection geometry"};
  app.set_version_flag("--version", std::string(statgeo::kToolVersion));
  app.require_subcommand(1);

  CLI::App* list = app.add_subcommand("list-models", "list available models and immersions");

  CommonFlags curv_flags;
  CLI::App* curv = app.add_subcommand(
      "verify-curvature", "statistical-structure and constant-curvature checks per alpha");
  add_common_options(curv, curv_flags, false);

  CommonFlags hess_flags;
  CLI::App* hess = app.add_subcommand(
      "verify-hessian", "flatness, Hessian curvature, and alpha-family checks");
  add_common_options(hess, hess_flags, true);

  CommonFlags imm_flags;
  CLI::App* imm = app.add_subcommand(
      "verify-immersion", "hypersurface invariants and closed-form operator checks");
  add_common_options(imm, imm_flags, false);

  CommonFlags rep_flags;
  std::vector<std::string> rep_inputs;
  CLI::App* rep = app.add_subcommand("report", "merge existing report files into one table");
  rep->add_option("inputs", rep_inputs, "report files to merge")->required();
  rep->add_option("--output", rep_flags.output, "write the merged report to this file");
  rep->add_option("--format", rep_flags.format, "output format: json, csv, or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (list->parsed()) {
      std::cout << statgeo::list_models_text();
      return 0;
    }
    if (curv->parsed()) {
      return emit_report(statgeo::cmd_verify_curvature(make_config(curv, curv_flags)));
    }
    if (hess->parsed()) {
      return emit_report(statgeo::cmd_verify_hessian(make_config(hess, hess_flags)));
    }
    if (imm->parsed()) {
      return emit_report(statgeo::cmd_verify_immersion(make_config(imm, imm_flags)));
    }
    if (rep->parsed()) {
      RunConfig cfg;
      cfg.inputs = rep_inputs;
      if (rep->count("--output")) cfg.output = rep_flags.output;
      if (rep->count("--format")) cfg.format = statgeo::parse_format(rep_flags.format);
      return emit_report(statgeo::cmd_report(cfg));
    }
  } catch (const statgeo::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const statgeo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
