#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <statgeo/errors.hpp>
#include <statgeo/models.hpp>
#include <statgeo/statistical.hpp>

#include "oracles.hpp"

using namespace statgeo;

TEST_CASE("registry lists every builder") {
  const auto& infos = model_registry();
  REQUIRE(infos.size() == 5);
  CHECK(infos[0].name == "euclidean");
  CHECK(infos[1].name == "normal_family");
  CHECK(infos[2].name == "inverse_gaussian_family");
  CHECK(infos[3].name == "upper_half_space");
  CHECK(infos[4].name == "affine_r3");
  for (const auto& info : infos) {
    CHECK_NOTHROW(build_model(ModelSpec{info.name, {}, false}));
  }
  CHECK_THROWS_AS(build_model(ModelSpec{"nope", {}, false}), UsageError);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(oracles::make_model("euclidean", {{"dim", 5}}), UsageError);
  CHECK_THROWS_AS(oracles::make_model("euclidean", {{"dim", 1}}), UsageError);
  CHECK_THROWS_AS(oracles::make_model("euclidean", {{"span", 2}}), UsageError);
  CHECK_THROWS_AS(oracles::make_model("normal_family", {{"dim", 2}}), UsageError);
  CHECK_THROWS_AS(oracles::make_model("affine_r3", {{"a", -1.0}}), UsageError);
  CHECK_THROWS_AS(oracles::make_model("affine_r3", {{"variant", 3}}), UsageError);
  CHECK_THROWS_AS(oracles::make_model("upper_half_space", {{"dim", 2.5}}), UsageError);
}

TEST_CASE("gaussian model analytic pieces") {
  const auto m = oracles::make_model("normal_family");
  Point p(2);
  p << 0.0, 1.0;
  const MetricValue g = m.metric_at(p);
  CHECK(g(0, 0) == Catch::Approx(2.0));
  CHECK(g(1, 1) == Catch::Approx(2.0));
  CHECK(g(0, 1) == 0.0);
  Point q(2);
  q << -1.0, 2.0;
  CHECK(m.metric_at(q)(0, 0) == Catch::Approx(0.5));

  REQUIRE(m.has_cubic());
  const Tensor3 C = m.cubic(p);
  CHECK(C(0, 0, 1) == Catch::Approx(4.0));
  CHECK(C(0, 1, 0) == Catch::Approx(4.0));
  CHECK(C(1, 0, 0) == Catch::Approx(4.0));
  CHECK(C(1, 1, 1) == Catch::Approx(8.0));
  CHECK(C(0, 0, 0) == 0.0);

  Point outside(2);
  outside << 0.0, -1.0;
  CHECK_THROWS_AS(m.metric_at(outside), DomainError);
}

TEST_CASE("gaussian alpha curvature across the grid") {
  const auto m = oracles::make_model("normal_family");
  const auto samples = oracles::model_samples(m, 15);
  for (double alpha : {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0}) {
    const auto fit = constant_curvature_fit(m, m.alpha_family(alpha), samples);
    INFO("alpha=" << alpha);
    CHECK(fit.constant);
    CHECK(fit.k_hat ==
          Catch::Approx(oracles::gaussian_alpha_curvature(alpha)).margin(1e-6));
  }
}

TEST_CASE("inverse gaussian model analytic pieces") {
  const auto m = oracles::make_model("inverse_gaussian_family");
  Point p(2);
  p << 1.0, 1.0;
  const MetricValue g = m.metric_at(p);
  CHECK(g(0, 0) == Catch::Approx(1.0));
  CHECK(g(1, 1) == Catch::Approx(0.5));
  CHECK(g(0, 1) == 0.0);
  Point q(2);
  q << 2.0, 1.5;
  CHECK(m.metric_at(q)(0, 0) == Catch::Approx(1.5 / 8.0));
  CHECK(m.metric_at(q)(1, 1) == Catch::Approx(0.5 / 2.25));

  REQUIRE(m.has_cubic());
  const Tensor3 C = m.cubic(q);
  CHECK(C(0, 0, 0) == Catch::Approx(3.0 * 1.5 / 16.0));
  CHECK(C(0, 0, 1) == Catch::Approx(-1.0 / 8.0));
  CHECK(C(1, 0, 1) == 0.0);
  CHECK(C(1, 1, 1) == Catch::Approx(-1.0 / (1.5 * 1.5 * 1.5)));

  Point outside(2);
  outside << -1.0, 1.0;
  CHECK_THROWS_AS(m.metric_at(outside), DomainError);
}

TEST_CASE("inverse gaussian alpha curvature across the grid") {
  const auto m = oracles::make_model("inverse_gaussian_family");
  const auto samples = oracles::model_samples(m, 15);
  for (double alpha : {-2.0, -1.0, 0.0, 0.5, 2.0}) {
    const auto fit = constant_curvature_fit(m, m.alpha_family(alpha), samples);
    INFO("alpha=" << alpha);
    CHECK(fit.constant);
    CHECK(fit.k_hat ==
          Catch::Approx(oracles::gaussian_alpha_curvature(alpha)).margin(1e-6));
  }
}

TEST_CASE("upper half space structure") {
  for (int dim : {2, 3, 4}) {
    const auto m = oracles::make_model("upper_half_space", {{"dim", dim}});
    const int last = dim - 1;
    Point p = m.anchor;
    const MetricValue g = m.metric_at(p);
    CHECK(oracles::max_diff(g, oracles::identity(dim)) < 1e-14);
    Point high = p;
    high(last) = 2.0;
    CHECK(m.metric_at(high)(0, 0) == Catch::Approx(0.25));

    // flat symbols: only the last coordinate appears
    const Tensor3 G = m.connection_at(high);
    CHECK(G(last, last, last) == Catch::Approx(0.5));
    CHECK(G(last, 0, 0) == Catch::Approx(1.0));
    CHECK(G(0, 0, 0) == 0.0);

    const auto samples = oracles::model_samples(m, 8);
    for (double alpha : {-1.0, 0.0, 0.5, 2.0}) {
      const auto fit = constant_curvature_fit(m, m.alpha_family(alpha), samples);
      INFO("dim=" << dim << " alpha=" << alpha);
      CHECK(fit.constant);
      CHECK(fit.k_hat == Catch::Approx(oracles::uhs_alpha_curvature(alpha)).margin(1e-6));
    }
  }
}

TEST_CASE("upper half space connection is flat and hessian") {
  for (int dim : {2, 3}) {
    const auto m = oracles::make_model("upper_half_space", {{"dim", dim}});
    const auto samples = oracles::model_samples(m, 10);
    for (const Point& p : samples) {
      CHECK(curvature(m.connection, p).max_abs() < 1e-8);
    }
    CHECK(hessian_curvature_residual(m, samples, oracles::kUhsHessianCurvature) < 1e-5);
  }
}

TEST_CASE("affine model curvature by variant") {
  for (double a : {0.5, 1.0, 2.0}) {
    for (double b : {0.5, 1.0, 2.0}) {
      const auto m = oracles::make_model("affine_r3", {{"a", a}, {"b", b}});
      const auto fit =
          constant_curvature_fit(m, m.connection, oracles::model_samples(m, 6));
      INFO("a=" << a << " b=" << b);
      CHECK(fit.constant);
      CHECK(fit.k_hat == Catch::Approx(oracles::affine_default_curvature(a, b)).margin(1e-9));
    }
  }
  // variant 2 flips the curvature sign; variant 1 is the same table with the
  // third line as printed, which is neither constant-curvature nor statistical
  for (double a : {0.5, 2.0}) {
    const auto m =
        oracles::make_model("affine_r3", {{"a", a}, {"b", 1.5}, {"variant", 2}});
    const auto samples = oracles::model_samples(m, 6);
    const auto fit = constant_curvature_fit(m, m.connection, samples);
    INFO("a=" << a);
    CHECK(fit.constant);
    CHECK(fit.k_hat ==
          Catch::Approx(oracles::affine_one_sided_curvature(a, 1.5)).margin(1e-9));
    CHECK(check_statistical(m, samples).pass);
  }
  {
    const auto m = oracles::make_model("affine_r3", {{"b", 1.0}, {"variant", 1}});
    const auto samples = oracles::model_samples(m, 6);
    const auto fit = constant_curvature_fit(m, m.connection, samples);
    CHECK_FALSE(fit.constant);
    const auto chk = check_statistical(m, samples);
    CHECK_FALSE(chk.pass);
    CHECK(chk.max_codazzi == Catch::Approx(0.5).margin(1e-9));
  }
}

TEST_CASE("affine one-sided default via the printed flag") {
  const auto printed = oracles::make_model("affine_r3", {}, true);
  const auto explicit_variant = oracles::make_model("affine_r3", {{"variant", 1}});
  const Point p = printed.anchor;
  CHECK(oracles::max_diff(printed.connection_at(p), explicit_variant.connection_at(p)) <
        1e-14);
  Point off(3);
  off << 0.3, -0.2, 0.5;
  CHECK(oracles::max_diff(printed.connection_at(off), explicit_variant.connection_at(off)) <
        1e-14);
}

TEST_CASE("affine cubic matches the symbols") {
  const auto m = oracles::make_model("affine_r3", {{"a", 2.0}, {"b", 1.5}});
  REQUIRE(m.has_cubic());
  const Point p = m.anchor;
  const Tensor3 C = m.cubic(p);
  const Tensor3 G = m.connection_at(p);
  // C = nabla g = -2 g K with constant metric a I, so C = -2a * symbols
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        CHECK(C(i, j, k) == Catch::Approx(-2.0 * 2.0 * G(i, j, k)).margin(1e-14));
      }
  CHECK(max_total_symmetry_defect(C) < 1e-14);
}

TEST_CASE("euclidean model is entirely trivial") {
  const auto m = oracles::make_model("euclidean", {{"dim", 4}});
  CHECK(m.domain.dim == 4);
  for (const Point& p : oracles::model_samples(m, 5)) {
    CHECK(oracles::max_diff(m.metric_at(p), oracles::identity(4)) == 0.0);
    CHECK(m.connection_at(p).max_abs() == 0.0);
    CHECK(m.cubic(p).max_abs() == 0.0);
    CHECK(m.alpha_family(1.7)(p).max_abs() == 0.0);
  }
}

TEST_CASE("density family hooks exist exactly for the two exponential families") {
  CHECK(density_family_for("normal_family").has_value());
  CHECK(density_family_for("inverse_gaussian_family").has_value());
  CHECK_FALSE(density_family_for("euclidean").has_value());
  CHECK_FALSE(density_family_for("upper_half_space").has_value());
  CHECK_FALSE(density_family_for("affine_r3").has_value());
}
