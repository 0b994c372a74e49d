#pragma once

// The five CLI commands as library functions returning report documents.
// Exit-code policy lives with the caller: 0 when the document passes, 1 when
// any check fails or a required hypothesis is unmet, 2 for usage and build
// errors (UsageError). Every check entry is computed defensively: a math
// error inside one check marks that entry instead of aborting the run.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "statgeo/config.hpp"
#include "statgeo/density.hpp"
#include "statgeo/domain.hpp"
#include "statgeo/errors.hpp"
#include "statgeo/immersion.hpp"
#include "statgeo/models.hpp"
#include "statgeo/report.hpp"
#include "statgeo/statistical.hpp"
#include "statgeo/tensor.hpp"

namespace statgeo {

namespace command_detail {

inline std::vector<Point> sample_with_anchor(const ChartDomain& domain, int count,
                                             std::uint64_t seed, const Point& anchor) {
  std::vector<Point> pts = sample_points(domain.sample_box, count, seed);
  pts.push_back(anchor);
  for (const Point& p : pts) domain.require_inside(p);
  return pts;
}

inline ChristoffelField member_connection(const StatisticalManifoldModel& model,
                                          double alpha) {
  if (model.has_alpha_family()) return model.alpha_family(alpha);
  // fall back to the measured affine combination of nabla and its dual
  auto eval = [model, alpha](const Point& p) { return alpha_connection(model, alpha, p); };
  return ChristoffelField{eval, Provenance::composed};
}

inline double fit_tolerance(const Tolerances& tol, const ChristoffelField& conn) {
  return conn.provenance == Provenance::analytic ? tol.curvature_fit_analytic
                                                 : tol.curvature_fit_fd;
}

// maximum frame-orthonormalized curvature norm over the samples
inline double max_curvature_norm(const StatisticalManifoldModel& model,
                                 const ChristoffelField& conn,
                                 const std::vector<Point>& samples) {
  double worst = 0.0;
  for (const Point& p : samples) {
    const Mat E = orthonormal_frame(model.metric_at(p));
    worst = std::max(worst, to_frame(curvature(conn, p), E).max_abs());
  }
  return worst;
}

inline std::optional<double> default_hessian_c(const std::string& model_name) {
  if (model_name == "upper_half_space") return 4.0;
  if (model_name == "euclidean") return 0.0;
  return std::nullopt;
}

}  // namespace command_detail

inline std::string list_models_text() {
  std::ostringstream out;
  out << "models:\n";
  for (const auto& info : model_registry()) {
    out << "  " << info.name << "\n      " << info.description << "\n      parameters: "
        << info.parameters << "\n";
  }
  out << "immersions (for verify-immersion):\n";
  for (const auto& info : immersion_registry()) {
    out << "  " << info.name << "\n      " << info.description << "\n      parameters: "
        << info.parameters << "\n";
  }
  return out.str();
}

inline ReportDocument cmd_verify_curvature(const RunConfig& cfg) {
  if (cfg.model.empty()) throw UsageError("verify-curvature: --model is required");
  const ModelSpec spec{cfg.model, cfg.params, cfg.as_printed};
  const StatisticalManifoldModel model = build_model(spec);
  const std::vector<Point> samples = command_detail::sample_with_anchor(
      model.domain, cfg.samples, cfg.seed, model.anchor);

  ReportDocument doc;
  doc.command = "verify-curvature";
  doc.config = cfg;

  struct FitSlot {
    bool ok = false;
    CurvatureReport rep;
    std::string error;
  };
  std::map<double, FitSlot> fits;
  auto fit_at = [&](double alpha) -> const FitSlot& {
    auto it = fits.find(alpha);
    if (it != fits.end()) return it->second;
    FitSlot slot;
    try {
      const ChristoffelField conn = command_detail::member_connection(model, alpha);
      slot.rep = constant_curvature_fit(model, conn, samples,
                                        command_detail::fit_tolerance(cfg.tol, conn));
      slot.ok = true;
    } catch (const Error& e) {
      slot.error = e.what();
    }
    return fits.emplace(alpha, std::move(slot)).first->second;
  };

  for (double alpha : cfg.alphas) {
    // the alpha member has to be a statistical structure in its own right
    CheckEntry stat;
    stat.name = "statistical_structure";
    stat.model = model.label;
    stat.alpha = alpha;
    stat.tolerance = cfg.tol.statistical;
    try {
      StatisticalManifoldModel member = model;
      member.connection = command_detail::member_connection(model, alpha);
      const StatisticalCheck rep = check_statistical(member, samples, cfg.tol.statistical);
      const StatisticalCheck at_anchor =
          check_statistical(member, {model.anchor}, cfg.tol.statistical);
      stat.values = {{"anchor_torsion", at_anchor.max_torsion},
                     {"anchor_codazzi", at_anchor.max_codazzi}};
      stat.residuals = {{"max_torsion", rep.max_torsion}, {"max_codazzi", rep.max_codazzi}};
      stat.verdict = rep.pass ? "pass" : "fail";
    } catch (const Error& e) {
      stat.verdict = "fail";
      stat.note = e.what();
    }
    doc.checks.push_back(stat);

    CheckEntry fit;
    fit.name = "constant_curvature_fit";
    fit.model = model.label;
    fit.alpha = alpha;
    const FitSlot& slot = fit_at(alpha);
    if (slot.ok) {
      fit.values = {{"k_hat", slot.rep.k_hat}};
      fit.residuals = {{"max_residual", slot.rep.max_residual}};
      fit.tolerance = slot.rep.tolerance;
      fit.verdict = slot.rep.constant ? "pass" : "fail";
    } else {
      fit.tolerance = cfg.tol.curvature_fit_analytic;
      fit.verdict = "fail";
      fit.note = slot.error;
    }
    doc.checks.push_back(fit);

    // interpolation against the alpha = 0 and alpha = 1 anchors
    CheckEntry interp;
    interp.name = "alpha_interpolation";
    interp.model = model.label;
    interp.alpha = alpha;
    interp.tolerance = cfg.tol.interpolation;
    const FitSlot& f0 = fit_at(0.0);
    const FitSlot& f1 = fit_at(1.0);
    if (slot.ok && slot.rep.constant && f0.ok && f0.rep.constant && f1.ok &&
        f1.rep.constant) {
      const double predicted =
          interpolate_alpha_curvature(f0.rep.k_hat, f1.rep.k_hat, 0.0, 1.0, alpha);
      interp.values = {{"k_hat", slot.rep.k_hat}, {"k_interpolated", predicted}};
      interp.residuals = {{"mismatch", std::abs(slot.rep.k_hat - predicted)}};
      interp.verdict =
          std::abs(slot.rep.k_hat - predicted) <= cfg.tol.interpolation ? "pass" : "fail";
    } else {
      interp.verdict = "skipped";
      interp.note = "needs constant-curvature fits at this alpha and at the 0/1 anchors";
    }
    doc.checks.push_back(interp);
  }

  // where the family becomes flat, from the two anchor fits
  const FitSlot& f0 = fit_at(0.0);
  const FitSlot& f1 = fit_at(1.0);
  if (f0.ok && f0.rep.constant && f1.ok && f1.rep.constant &&
      f0.rep.k_hat != f1.rep.k_hat) {
    CheckEntry flat;
    flat.name = "flat_alpha_values";
    flat.model = model.label;
    flat.tolerance = 0.0;
    const std::vector<double> roots =
        flat_alpha_values(f0.rep.k_hat, f1.rep.k_hat, 0.0, 1.0);
    flat.values = {{"k_at_0", f0.rep.k_hat},
                   {"k_at_1", f1.rep.k_hat},
                   {"count", static_cast<double>(roots.size())}};
    for (std::size_t i = 0; i < roots.size(); ++i) {
      flat.values.emplace_back("alpha_flat_" + std::to_string(i + 1), roots[i]);
    }
    flat.verdict = "pass";
    flat.note = "informational";
    doc.checks.push_back(flat);
  }
  return doc;
}

inline ReportDocument cmd_verify_hessian(const RunConfig& cfg) {
  if (cfg.model.empty()) throw UsageError("verify-hessian: --model is required");
  const ModelSpec spec{cfg.model, cfg.params, cfg.as_printed};
  const StatisticalManifoldModel model = build_model(spec);
  const std::vector<Point> samples = command_detail::sample_with_anchor(
      model.domain, cfg.samples, cfg.seed, model.anchor);

  ReportDocument doc;
  doc.command = "verify-hessian";
  doc.config = cfg;

  CheckEntry flatness;
  flatness.name = "flatness";
  flatness.model = model.label;
  flatness.tolerance = cfg.tol.flatness;
  bool flat = false;
  try {
    const double norm = command_detail::max_curvature_norm(model, model.connection, samples);
    flatness.residuals = {{"curvature_norm", norm}};
    flat = norm <= cfg.tol.flatness;
    flatness.verdict = flat ? "pass" : "fail";
  } catch (const Error& e) {
    flatness.verdict = "fail";
    flatness.note = e.what();
  }
  doc.checks.push_back(flatness);

  // pick the constant: explicit flag, registry default, or fitted on the spot
  double c_used = 0.0;
  bool c_known = false;
  std::string c_note;
  if (cfg.c) {
    c_used = *cfg.c;
    c_known = true;
  } else if (auto dflt = command_detail::default_hessian_c(model.label)) {
    c_used = *dflt;
    c_known = true;
  } else if (flat) {
    const HessianCurvatureFit fit =
        hessian_curvature_fit(model, samples, cfg.tol.hessian_residual);
    c_used = fit.c_hat;
    c_known = true;
    c_note = "c fitted from samples";
  }

  CheckEntry hess;
  hess.name = "hessian_curvature_residual";
  hess.model = model.label;
  hess.tolerance = cfg.tol.hessian_residual;
  if (!flat) {
    hess.verdict = "hypotheses_not_met";
    hess.note = "connection is not flat";
  } else {
    try {
      const double residual =
          hessian_curvature_residual(model, samples, c_used, cfg.tol.flatness);
      hess.values = {{"c", c_used}};
      hess.residuals = {{"max_residual", residual}};
      hess.verdict = residual <= cfg.tol.hessian_residual ? "pass" : "fail";
      hess.note = c_note;
    } catch (const Error& e) {
      hess.verdict = "fail";
      hess.note = e.what();
    }
  }
  doc.checks.push_back(hess);

  // Levi-Civita curvature constant must sit at -c/4
  CheckEntry riem;
  riem.name = "riemannian_curvature_fit";
  riem.model = model.label;
  riem.tolerance = cfg.tol.curvature_fit_fd;
  try {
    ChristoffelField lc_field{[model](const Point& q) { return levi_civita(model, q); },
                              Provenance::composed};
    const CurvatureReport fit =
        constant_curvature_fit(model, lc_field, samples, cfg.tol.curvature_fit_fd);
    riem.values = {{"k_hat", fit.k_hat}};
    riem.residuals = {{"max_residual", fit.max_residual}};
    if (c_known) {
      const double expected = -c_used / 4.0;
      riem.values.emplace_back("expected", expected);
      riem.residuals.emplace_back("mismatch", std::abs(fit.k_hat - expected));
      riem.verdict = fit.constant &&
                             std::abs(fit.k_hat - expected) <= cfg.tol.curvature_fit_fd
                         ? "pass"
                         : "fail";
    } else {
      riem.verdict = fit.constant ? "pass" : "fail";
    }
  } catch (const Error& e) {
    riem.verdict = "fail";
    riem.note = e.what();
  }
  doc.checks.push_back(riem);

  // every alpha member keeps constant curvature over a Hessian structure
  for (double alpha : cfg.alphas) {
    CheckEntry entry;
    entry.name = "alpha_constant_curvature";
    entry.model = model.label;
    entry.alpha = alpha;
    try {
      const ChristoffelField conn = command_detail::member_connection(model, alpha);
      const CurvatureReport fit = constant_curvature_fit(
          model, conn, samples, command_detail::fit_tolerance(cfg.tol, conn));
      entry.values = {{"k_hat", fit.k_hat}};
      entry.residuals = {{"max_residual", fit.max_residual}};
      entry.tolerance = fit.tolerance;
      entry.verdict = fit.constant ? "pass" : "fail";
    } catch (const Error& e) {
      entry.tolerance = cfg.tol.curvature_fit_analytic;
      entry.verdict = "fail";
      entry.note = e.what();
    }
    doc.checks.push_back(entry);
  }
  return doc;
}

inline ReportDocument cmd_verify_immersion(const RunConfig& cfg) {
  if (cfg.model.empty()) throw UsageError("verify-immersion: --model is required");
  const ModelSpec spec{cfg.model, cfg.params, cfg.as_printed};
  const Immersion imm = build_immersion(spec);
  const std::vector<Point> base_samples = command_detail::sample_with_anchor(
      imm.base_domain, cfg.samples, cfg.seed, imm.anchor);
  std::vector<Point> ambient_samples;
  for (const Point& p : base_samples) ambient_samples.push_back(imm.map(p));
  ambient_samples.push_back(imm.ambient.anchor);

  ReportDocument doc;
  doc.command = "verify-immersion";
  doc.config = cfg;

  CheckEntry stat;
  stat.name = "ambient_statistical";
  stat.model = imm.label;
  stat.tolerance = cfg.tol.statistical;
  try {
    const StatisticalCheck rep =
        check_statistical(imm.ambient, ambient_samples, cfg.tol.statistical);
    stat.residuals = {{"max_torsion", rep.max_torsion}, {"max_codazzi", rep.max_codazzi}};
    stat.verdict = rep.pass ? "pass" : "hypotheses_not_met";
    if (!rep.pass) stat.note = "ambient structure is not statistical";
  } catch (const Error& e) {
    stat.verdict = "hypotheses_not_met";
    stat.note = e.what();
  }
  doc.checks.push_back(stat);

  // ambient curvature constants for the two connections entering the line
  // identities
  bool k_known = false;
  double k_primal = 0.0, k_riem = 0.0;
  {
    CheckEntry fit;
    fit.name = "ambient_curvature_fit";
    fit.model = imm.label;
    fit.tolerance = command_detail::fit_tolerance(cfg.tol, imm.ambient.connection);
    try {
      const CurvatureReport rep = constant_curvature_fit(
          imm.ambient, imm.ambient.connection, ambient_samples, fit.tolerance);
      fit.values = {{"k_hat", rep.k_hat}};
      fit.residuals = {{"max_residual", rep.max_residual}};
      fit.verdict = rep.constant ? "pass" : "fail";
      k_primal = rep.k_hat;
      k_known = rep.constant;
    } catch (const Error& e) {
      fit.verdict = "fail";
      fit.note = e.what();
    }
    doc.checks.push_back(fit);
  }
  bool k_riem_known = false;
  {
    CheckEntry fit;
    fit.name = "ambient_riemannian_fit";
    fit.model = imm.label;
    fit.tolerance = cfg.tol.curvature_fit_fd;
    try {
      const StatisticalManifoldModel& amb = imm.ambient;
      ChristoffelField lc_field{[amb](const Point& q) { return levi_civita(amb, q); },
                                Provenance::composed};
      const CurvatureReport rep =
          constant_curvature_fit(amb, lc_field, ambient_samples, fit.tolerance);
      fit.values = {{"k_hat", rep.k_hat}};
      fit.residuals = {{"max_residual", rep.max_residual}};
      fit.verdict = rep.constant ? "pass" : "fail";
      k_riem = rep.k_hat;
      k_riem_known = rep.constant;
    } catch (const Error& e) {
      fit.verdict = "fail";
      fit.note = e.what();
    }
    doc.checks.push_back(fit);
  }

  // Hessian hypotheses: flat primal connection plus constant Hessian
  // curvature; only then do the closed-form operator checks apply
  bool ambient_hessian = false;
  double c_hat = 0.0;
  {
    CheckEntry hess;
    hess.name = "ambient_hessian_curvature";
    hess.model = imm.label;
    hess.tolerance = cfg.tol.hessian_residual;
    try {
      const double norm = command_detail::max_curvature_norm(
          imm.ambient, imm.ambient.connection, ambient_samples);
      if (norm <= cfg.tol.flatness) {
        const HessianCurvatureFit fit = hessian_curvature_fit(imm.ambient, ambient_samples,
                                                              cfg.tol.hessian_residual);
        hess.values = {{"c_hat", fit.c_hat}};
        hess.residuals = {{"curvature_norm", norm}, {"max_residual", fit.max_residual}};
        hess.verdict = fit.constant ? "pass" : "fail";
        ambient_hessian = fit.constant;
        c_hat = fit.c_hat;
      } else {
        hess.residuals = {{"curvature_norm", norm}};
        hess.verdict = "skipped";
        hess.note = "ambient connection is not flat; Hessian hypotheses do not apply";
      }
    } catch (const Error& e) {
      hess.verdict = "skipped";
      hess.note = e.what();
    }
    doc.checks.push_back(hess);
  }

  // induced structure: definition residual at the anchor, measured induced
  // connection size, and a constant-curvature fit of the induced structure
  {
    CheckEntry ind;
    ind.name = "induced_structure";
    ind.model = imm.label;
    ind.tolerance = cfg.tol.curvature_fit_fd;
    try {
      const InducedStructure at_anchor = induce_structure(imm, imm.anchor);
      double conn_norm = 0.0;
      for (const Point& p : base_samples) {
        conn_norm = std::max(conn_norm,
                             gauss_split(imm, p, AmbientConnection::primal).connection.max_abs());
      }
      StatisticalManifoldModel induced;
      induced.label = imm.label + ":induced";
      induced.domain = imm.base_domain;
      induced.metric = [imm](const Point& q) -> MetricValue {
        const NormalFrame nf = unit_normal(imm, q);
        return nf.jacobian.transpose() * imm.ambient.metric_at(imm.map(q)) * nf.jacobian;
      };
      induced.metric_scheme = FDScheme::composed_default();
      ChristoffelField induced_conn{
          [imm](const Point& q) {
            return gauss_split(imm, q, AmbientConnection::primal).connection;
          },
          Provenance::composed};
      const CurvatureReport fit =
          constant_curvature_fit(induced, induced_conn, base_samples, ind.tolerance);
      ind.values = {{"k_hat", fit.k_hat}, {"connection_norm", conn_norm}};
      ind.residuals = {{"definition_residual", at_anchor.definition_residual},
                       {"fit_residual", fit.max_residual}};
      ind.verdict = fit.constant && at_anchor.definition_residual <= cfg.tol.codazzi
                        ? "pass"
                        : "fail";
    } catch (const Error& e) {
      ind.verdict = "fail";
      ind.note = e.what();
    }
    doc.checks.push_back(ind);
  }

  {
    CheckEntry eq;
    eq.name = "equiaffine";
    eq.model = imm.label;
    eq.tolerance = cfg.tol.equiaffine;
    try {
      const EquiaffineReport rep = check_equiaffine(imm, base_samples, cfg.tol.equiaffine);
      eq.residuals = {{"max_tau_star", rep.max_tau_star}};
      eq.verdict = rep.pass ? "pass" : "fail";
    } catch (const Error& e) {
      eq.verdict = "fail";
      eq.note = e.what();
    }
    doc.checks.push_back(eq);
  }

  // line identities at the anchor plus the first two sample points
  std::vector<Point> line_points = {imm.anchor};
  for (std::size_t i = 0; i < base_samples.size() && line_points.size() < 3; ++i) {
    line_points.push_back(base_samples[i]);
  }
  {
    CheckEntry lines;
    lines.name = "codazzi_ricci_lines";
    lines.model = imm.label;
    lines.tolerance = cfg.tol.codazzi;
    CheckEntry comm;
    comm.name = "shape_commutator";
    comm.model = imm.label;
    comm.tolerance = cfg.tol.commutator;
    if (k_known && k_riem_known) {
      try {
        LineResiduals worst;
        for (const Point& p : line_points) {
          const LineResiduals r = codazzi_ricci_residuals(imm, p, k_primal, k_riem);
          worst.curvature_line = std::max(worst.curvature_line, r.curvature_line);
          worst.form_line = std::max(worst.form_line, r.form_line);
          worst.operator_line = std::max(worst.operator_line, r.operator_line);
          worst.ricci_line = std::max(worst.ricci_line, r.ricci_line);
          worst.dual_curvature_line =
              std::max(worst.dual_curvature_line, r.dual_curvature_line);
          worst.commutator = std::max(worst.commutator, r.commutator);
        }
        lines.residuals = {{"curvature_line", worst.curvature_line},
                           {"form_line", worst.form_line},
                           {"operator_line", worst.operator_line},
                           {"ricci_line", worst.ricci_line},
                           {"dual_curvature_line", worst.dual_curvature_line}};
        const double worst_line =
            std::max({worst.curvature_line, worst.form_line, worst.operator_line,
                      worst.ricci_line, worst.dual_curvature_line});
        lines.verdict = worst_line <= cfg.tol.codazzi ? "pass" : "fail";
        comm.residuals = {{"commutator", worst.commutator}};
        comm.verdict = worst.commutator <= cfg.tol.commutator ? "pass" : "fail";
      } catch (const Error& e) {
        lines.verdict = "hypotheses_not_met";
        lines.note = e.what();
        comm.verdict = "hypotheses_not_met";
        comm.note = e.what();
      }
    } else {
      lines.verdict = "skipped";
      lines.note = "ambient curvature constants unavailable";
      comm.verdict = "skipped";
      comm.note = lines.note;
    }
    doc.checks.push_back(lines);
    doc.checks.push_back(comm);
  }

  // closed-form operator expressions and the shape-operator branch; both
  // need the Hessian ambient hypotheses
  {
    CheckEntry lemma;
    lemma.name = "lemma_operator_forms";
    lemma.model = imm.label;
    lemma.tolerance = cfg.tol.lemma;
    if (ambient_hessian && k_known) {
      try {
        const Lemma41Residuals r = lemma41_residuals(imm, imm.anchor, k_primal, c_hat);
        lemma.residuals = {{"a_star", r.a_star},
                           {"b_star", r.b_star},
                           {"h", r.h},
                           {"a", r.a},
                           {"b", r.b}};
        lemma.verdict = r.worst <= cfg.tol.lemma ? "pass" : "fail";
      } catch (const DegenerateError& e) {
        lemma.verdict = "skipped";
        lemma.note = e.what();
      } catch (const Error& e) {
        lemma.verdict = "fail";
        lemma.note = e.what();
      }
    } else {
      lemma.verdict = "skipped";
      lemma.note = "ambient is not a flat constant-Hessian-curvature structure";
    }
    doc.checks.push_back(lemma);

    CheckEntry thm;
    thm.name = "theorem_shape_branch";
    thm.model = imm.label;
    thm.tolerance = cfg.tol.theorem;
    if (ambient_hessian && k_known) {
      try {
        const Theorem42Report rep =
            theorem42_check(imm, imm.anchor, k_primal, c_hat, cfg.tol.theorem);
        const HypersurfaceData D = gauss_weingarten(imm, imm.anchor);
        thm.values = {{"discriminant", rep.discriminant},
                      {"branch", static_cast<double>(rep.branch)},
                      {"nu_measured", D.nu}};
        if (!rep.boundary) {
          const Theorem42Prediction pred =
              theorem42_predict(k_primal, c_hat, rep.branch == 0 ? 1 : rep.branch);
          thm.values.emplace_back("s_predicted", pred.s_scalar);
          thm.values.emplace_back("nu_predicted", pred.nu);
        }
        thm.residuals = {{"s_residual", rep.s_residual},
                         {"nu_residual", rep.nu_residual}};
        thm.verdict = rep.pass ? "pass" : "fail";
      } catch (const DegenerateError& e) {
        thm.verdict = "skipped";
        thm.note = e.what();
      } catch (const TheoremViolation& e) {
        thm.verdict = "fail";
        thm.note = e.what();
      } catch (const Error& e) {
        thm.verdict = "fail";
        thm.note = e.what();
      }
    } else {
      thm.verdict = "skipped";
      thm.note = "ambient is not a flat constant-Hessian-curvature structure";
    }
    doc.checks.push_back(thm);
  }
  return doc;
}

inline ReportDocument cmd_report(const RunConfig& cfg) {
  if (cfg.inputs.empty()) throw UsageError("report: at least one report file is required");
  ReportDocument merged;
  merged.command = "report";
  merged.config = cfg;
  struct Row {
    CheckEntry entry;
    std::string source;
    std::size_t index;
  };
  std::vector<Row> rows;
  for (const std::string& path : cfg.inputs) {
    const ReportDocument doc = load_report_file(path);
    for (std::size_t i = 0; i < doc.checks.size(); ++i) {
      rows.push_back(Row{doc.checks[i], path, i});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    if (x.entry.model != y.entry.model) return x.entry.model < y.entry.model;
    if (x.entry.name != y.entry.name) return x.entry.name < y.entry.name;
    const double ax = x.entry.alpha.value_or(-1e300);
    const double ay = y.entry.alpha.value_or(-1e300);
    if (ax != ay) return ax < ay;
    if (x.source != y.source) return x.source < y.source;
    return x.index < y.index;
  });
  for (auto& row : rows) merged.checks.push_back(std::move(row.entry));
  return merged;
}

}  // namespace statgeo
