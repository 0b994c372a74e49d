#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <statgeo/errors.hpp>
#include <statgeo/immersion.hpp>
#include <statgeo/models.hpp>

#include "oracles.hpp"

using namespace statgeo;

namespace {

Immersion make_immersion(const std::string& name,
                         std::map<std::string, double> params = {}) {
  return build_immersion(ModelSpec{name, std::move(params), false});
}

std::vector<Point> base_samples(const Immersion& imm, int count, std::uint64_t seed = 42) {
  auto pts = sample_points(imm.base_domain.sample_box, count, seed);
  pts.push_back(imm.anchor);
  return pts;
}

}  // namespace

TEST_CASE("immersion registry") {
  const auto& infos = immersion_registry();
  REQUIRE(infos.size() == 2);
  CHECK(infos[0].name == "example_4_1");
  CHECK(infos[1].name == "example_4_2");
  CHECK_THROWS_AS(make_immersion("nope"), UsageError);
  CHECK_THROWS_AS(make_immersion("example_4_2", {{"y0", -1.0}}), UsageError);
  CHECK_THROWS_AS(make_immersion("example_4_2", {{"dim", 4}}), UsageError);
  CHECK_THROWS_AS(make_immersion("example_4_1", {{"weird", 1.0}}), UsageError);
}

TEST_CASE("unit normal on the horizontal slice") {
  for (double y0 : {0.5, 1.0, 2.0}) {
    const Immersion imm = make_immersion("example_4_2", {{"y0", y0}});
    const NormalFrame nf = unit_normal(imm, imm.anchor);
    const int m = static_cast<int>(nf.xi.size());
    // normal points along the last ambient axis, normalized against 1/w^2
    CHECK(nf.xi(m - 1) == Catch::Approx(y0).margin(1e-10));
    for (int i = 0; i + 1 < m; ++i) CHECK(std::abs(nf.xi(i)) < 1e-10);
    const MetricValue G = imm.ambient.metric_at(imm.map(imm.anchor));
    CHECK(nf.xi.dot(G * nf.xi) == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("unit normal on the coordinate-plane slice") {
  for (double a : {0.5, 2.0}) {
    const Immersion imm = make_immersion("example_4_1", {{"a", a}});
    const NormalFrame nf = unit_normal(imm, imm.anchor);
    CHECK(nf.xi(0) == Catch::Approx(1.0 / std::sqrt(a)).margin(1e-12));
    CHECK(std::abs(nf.xi(1)) < 1e-12);
    CHECK(std::abs(nf.xi(2)) < 1e-12);
    // jacobian columns span the (x2, x3) coordinate plane
    CHECK(nf.jacobian(0, 0) == Catch::Approx(0.0).margin(1e-10));
    CHECK(nf.jacobian(1, 0) == Catch::Approx(1.0).margin(1e-10));
    CHECK(nf.jacobian(2, 1) == Catch::Approx(1.0).margin(1e-10));
  }
}

TEST_CASE("unit normal shape and rank guards") {
  Immersion flatmap;
  flatmap.label = "degenerate";
  flatmap.ambient = oracles::make_model("euclidean", {{"dim", 3}});
  flatmap.base_domain.dim = 2;
  flatmap.base_domain.sample_box =
      Box{Point::Constant(2, -1.0), Point::Constant(2, 1.0)};
  flatmap.map = [](const Point& p) {
    Point q(3);
    q << p(0), p(0), 0.0;  // rank-one differential
    return q;
  };
  flatmap.anchor = Point::Constant(2, 0.25);
  CHECK_THROWS_AS(unit_normal(flatmap, flatmap.anchor), DegenerateError);

  Immersion not_codim1;
  not_codim1.label = "wrong shape";
  not_codim1.ambient = oracles::make_model("euclidean", {{"dim", 3}});
  not_codim1.base_domain.dim = 1;
  not_codim1.base_domain.sample_box =
      Box{Point::Constant(1, -1.0), Point::Constant(1, 1.0)};
  not_codim1.map = [](const Point& p) {
    Point q(3);
    q << p(0), 0.0, 0.0;
    return q;
  };
  not_codim1.anchor = Point::Constant(1, 0.0);
  CHECK_THROWS_AS(unit_normal(not_codim1, not_codim1.anchor), ShapeError);
}

TEST_CASE("horizontal slice hypersurface operators") {
  for (int dim : {2, 3}) {
    for (double y0 : {0.5, 1.0, 2.0}) {
      const Immersion imm =
          make_immersion("example_4_2", {{"dim", static_cast<double>(dim)}, {"y0", y0}});
      const HypersurfaceData D = gauss_weingarten(imm, imm.anchor);
      const Mat I = oracles::identity(dim);
      INFO("dim=" << dim << " y0=" << y0);
      CHECK(oracles::max_diff(D.metric, I / (y0 * y0)) < 1e-10);
      CHECK(D.conn.max_abs() < 1e-9);
      CHECK(oracles::max_diff(D.A_star, oracles::kSliceAStar * I) < 1e-7);
      CHECK(oracles::max_diff(D.B_star, oracles::kSliceBStar * I) < 1e-7);
      CHECK(oracles::max_diff(D.h, oracles::kSliceHOverMetric * D.metric) < 1e-7);
      CHECK(oracles::max_diff(D.A, oracles::kSliceA * I) < 1e-7);
      CHECK(oracles::max_diff(D.B, oracles::kSliceB * I) < 1e-7);
      CHECK(oracles::max_diff(D.S, oracles::kSliceS * I) < 1e-7);
      CHECK(D.nu == Catch::Approx(oracles::kSliceNu).margin(1e-7));
      CHECK(D.tau_star.cwiseAbs().maxCoeff() < 1e-8);
      CHECK(D.tau.cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("horizontal slice operators do not depend on the height") {
  const Immersion at_half = make_immersion("example_4_2", {{"y0", 0.5}});
  const Immersion at_two = make_immersion("example_4_2", {{"y0", 2.0}});
  Point p(2);
  p << 0.4, -0.8;
  const HypersurfaceData lo = gauss_weingarten(at_half, p);
  const HypersurfaceData hi = gauss_weingarten(at_two, p);
  CHECK(oracles::max_diff(lo.S, hi.S) < 1e-9);
  CHECK(oracles::max_diff(lo.A, hi.A) < 1e-9);
  CHECK(oracles::max_diff(lo.B_star, hi.B_star) < 1e-9);
  CHECK(std::abs(lo.nu - hi.nu) < 1e-9);
  // forms scale with the metric; compare after normalizing out y0^-2
  CHECK(oracles::max_diff(lo.h * 0.25, hi.h * 4.0) < 1e-9);
}

TEST_CASE("coordinate-plane slice is flat with vanishing shape operator") {
  for (double a : {0.5, 1.0, 2.0}) {
    for (double b : {0.5, 1.0, 2.0}) {
      const Immersion imm = make_immersion("example_4_1", {{"a", a}, {"b", b}});
      const HypersurfaceData D = gauss_weingarten(imm, imm.anchor);
      INFO("a=" << a << " b=" << b);
      CHECK(oracles::max_diff(D.metric, a * oracles::identity(2)) < 1e-10);
      CHECK(D.conn.max_abs() < 1e-9);
      CHECK(D.S.cwiseAbs().maxCoeff() < 1e-9);
      CHECK(std::abs(D.nu) < 1e-9);
      CHECK(D.tau_star.cwiseAbs().maxCoeff() < 1e-9);
      // primal form is the off-diagonal cubic trace against the normal
      const double expected = 0.5 * b * std::sqrt(a);
      CHECK(D.h(0, 1) == Catch::Approx(expected).margin(1e-8));
      CHECK(D.h(1, 0) == Catch::Approx(expected).margin(1e-8));
      CHECK(std::abs(D.h(0, 0)) < 1e-8);
      CHECK(std::abs(D.h(1, 1)) < 1e-8);
    }
  }
}

TEST_CASE("induced structure matches the tangential split") {
  const Immersion imm = make_immersion("example_4_1", {{"a", 2.0}, {"b", 1.5}});
  for (const Point& p : base_samples(imm, 5)) {
    const InducedStructure ind = induce_structure(imm, p);
    CHECK(ind.definition_residual < 1e-9);
    CHECK(oracles::max_diff(ind.metric, 2.0 * oracles::identity(2)) < 1e-10);
    CHECK(ind.connection.max_abs() < 1e-9);
  }
}

TEST_CASE("equiaffine check over samples") {
  const Immersion imm = make_immersion("example_4_2");
  const auto rep = check_equiaffine(imm, base_samples(imm, 8));
  CHECK(rep.pass);
  CHECK(rep.max_tau_star < 1e-8);
}

TEST_CASE("structure identities close on both examples") {
  {
    const Immersion imm = make_immersion("example_4_1", {{"a", 1.0}, {"b", 2.0}});
    // ambient curvature constants: k = -b^2/(4a) for the primal connection,
    // 0 for the Levi-Civita connection of the constant metric
    const LineResiduals r = codazzi_ricci_residuals(imm, imm.anchor, -1.0, 0.0);
    CHECK(r.curvature_line < 1e-6);
    CHECK(r.form_line < 1e-6);
    CHECK(r.operator_line < 1e-6);
    CHECK(r.ricci_line < 1e-6);
    CHECK(r.dual_curvature_line < 1e-6);
    CHECK(r.commutator < 1e-8);
  }
  {
    const Immersion imm = make_immersion("example_4_2", {{"dim", 3.0}});
    const LineResiduals r = codazzi_ricci_residuals(imm, imm.anchor, 0.0, -1.0);
    CHECK(r.curvature_line < 1e-6);
    CHECK(r.form_line < 1e-6);
    CHECK(r.operator_line < 1e-6);
    CHECK(r.ricci_line < 1e-6);
    CHECK(r.dual_curvature_line < 1e-6);
    CHECK(r.commutator < 1e-8);
  }
}

TEST_CASE("wrong curvature constants break the identity lines") {
  const Immersion imm = make_immersion("example_4_1", {{"a", 1.0}, {"b", 2.0}});
  const LineResiduals r = codazzi_ricci_residuals(imm, imm.anchor, 0.5, 0.0);
  CHECK(r.curvature_line > 1e-2);
}

TEST_CASE("closed-form operator residuals on the horizontal slice") {
  for (int dim : {2, 3}) {
    const Immersion imm =
        make_immersion("example_4_2", {{"dim", static_cast<double>(dim)}});
    const Lemma41Residuals r = lemma41_residuals(imm, imm.anchor, 0.0, 4.0);
    INFO("dim=" << dim);
    CHECK(r.a_star < 1e-7);
    CHECK(r.b_star < 1e-7);
    CHECK(r.h < 1e-7);
    CHECK(r.a < 1e-7);
    CHECK(r.b < 1e-7);
    CHECK(r.worst < 1e-7);
  }
  // nu = 0 on the coordinate-plane slice: hypotheses degenerate
  const Immersion flat = make_immersion("example_4_1");
  CHECK_THROWS_AS(lemma41_residuals(flat, flat.anchor, -0.25, 1.0), DegenerateError);
  const Immersion slice = make_immersion("example_4_2");
  CHECK_THROWS_AS(lemma41_residuals(slice, slice.anchor, 0.0, 0.0), DegenerateError);
}

TEST_CASE("shape operator branch prediction") {
  const Theorem42Prediction plus = theorem42_predict(0.0, 4.0, 1);
  CHECK(plus.s_scalar == Catch::Approx(1.0));
  CHECK(plus.nu == Catch::Approx(2.0));
  const Theorem42Prediction minus = theorem42_predict(0.0, 4.0, -1);
  CHECK(minus.s_scalar == Catch::Approx(-1.0));
  CHECK(minus.nu == Catch::Approx(-2.0));
  // negative Hessian constant flips the sign pairing
  const Theorem42Prediction neg = theorem42_predict(1.0, -1.0, 1);
  CHECK(neg.s_scalar == Catch::Approx(-0.5));
  CHECK(neg.nu == Catch::Approx(1.0));
  CHECK_THROWS_AS(theorem42_predict(-3.0, 4.0, 1), UsageError);
  CHECK_THROWS_AS(theorem42_predict(0.0, 0.0, 1), UsageError);
  CHECK_THROWS_AS(theorem42_predict(0.0, 4.0, 2), UsageError);
}

TEST_CASE("shape operator branch check on the horizontal slice") {
  for (double y0 : {0.5, 1.0, 2.0}) {
    const Immersion imm = make_immersion("example_4_2", {{"y0", y0}});
    const Theorem42Report rep = theorem42_check(imm, imm.anchor, 0.0, 4.0, 1e-7);
    INFO("y0=" << y0);
    CHECK(rep.pass);
    CHECK(rep.branch == 1);
    CHECK(rep.discriminant == Catch::Approx(4.0));
    CHECK(rep.s_residual < 1e-7);
    CHECK(rep.nu_residual < 1e-7);
    CHECK_FALSE(rep.boundary);
  }
}

TEST_CASE("impossible discriminant is surfaced as a violation") {
  const Immersion imm = make_immersion("example_4_2");
  CHECK_THROWS_AS(theorem42_check(imm, imm.anchor, -3.0, 4.0), TheoremViolation);
  // on the boundary the shape operator must vanish; here it is the identity
  const Theorem42Report rep = theorem42_check(imm, imm.anchor, -2.0, 4.0);
  CHECK(rep.boundary);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("gauss split recovers both fundamental forms") {
  const Immersion imm = make_immersion("example_4_2");
  const GaussSplit primal = gauss_split(imm, imm.anchor, AmbientConnection::primal);
  const GaussSplit riem = gauss_split(imm, imm.anchor, AmbientConnection::riemannian);
  const HypersurfaceData D = gauss_weingarten(imm, imm.anchor);
  CHECK(oracles::max_diff(primal.form, D.h) < 1e-10);
  CHECK(oracles::max_diff(riem.form, D.second_fundamental) < 1e-10);
  CHECK(oracles::max_diff(primal.form - riem.form, D.b) < 1e-10);
}
