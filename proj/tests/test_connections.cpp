#include <doctest.h>

#include "equiconn/connections.hpp"
#include "support.hpp"

using namespace equiconn;
using namespace equiconn::testing;

namespace {

ChartPtr c2() { return make_chart({"x", "y"}); }
LieAlgebraPtr line() { return std::make_shared<LieAlgebra>(LieAlgebra::abelian(1, "C")); }

LieValuedFunction scalar_fn(const Poly& p, const LieAlgebraPtr& alg) {
  LieValuedFunction f = LieValuedFunction::zero(alg, p.num_vars());
  f.components[0] = p;
  return f;
}

// A = x dy on C^2 with a 1-dimensional structure algebra.
Connection xdy_connection(const ChartPtr& chart, const LieAlgebraPtr& alg) {
  LieValuedOneForm A = LieValuedOneForm::zero(chart, alg);
  A.components[1] = scalar_fn(Poly::variable(2, 0), alg);
  return Connection{A};
}

// Translation action of a 1-dimensional abelian group: a(v) = d_x.
GAction translation_x(const ChartPtr& chart) {
  return make_gaction(line(), {VectorField::coordinate(chart, 0)});
}

constexpr VerticalSign kBothSigns[] = {VerticalSign::minus, VerticalSign::plus};

}  // namespace

TEST_CASE("curvature of the zero connection vanishes") {
  auto chart = c2();
  Connection eta{LieValuedOneForm::zero(chart, line())};
  CHECK(curvature(eta).is_zero());
}

TEST_CASE("curvature of A = x dy") {
  auto chart = c2();
  Connection eta = xdy_connection(chart, line());
  for (VerticalSign sv : kBothSigns) {
    LieValuedTwoForm K = curvature(eta, sv);
    CHECK(K.at(0, 1) == scalar_fn(Poly::constant(2, Scalar(-1)), eta.algebra()));
  }
}

TEST_CASE("curvature of A = y dy vanishes") {
  auto chart = c2();
  auto alg = line();
  LieValuedOneForm A = LieValuedOneForm::zero(chart, alg);
  A.components[1] = scalar_fn(Poly::variable(2, 1), alg);
  CHECK(curvature(Connection{A}).is_zero());
}

TEST_CASE("curvature agrees with the exterior-derivative route") {
  // The implementation brackets invariant lifts; the oracle assembles
  // -(dA)_{ij} + sigma [A_i, A_j] from independent operations. One global
  // sign (+1) relates the two routes for all inputs.
  auto chart = make_chart({"x", "y", "z"});
  auto alg = std::make_shared<LieAlgebra>(LieAlgebra::sl2());
  SplitMix64 rng(0xc0110001ULL);
  for (VerticalSign sv : kBothSigns) {
    for (int rep = 0; rep < 10; ++rep) {
      Connection eta = random_connection(rng, chart, alg, 2);
      const LieValuedTwoForm K = curvature(eta, sv);
      const LieValuedTwoForm dA = exterior_derivative(eta.form);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
          LieValuedFunction expected =
              -dA.at(i, j) +
              sign_scalar(sv) * lie_bracket(eta.form.components[i], eta.form.components[j]);
          CHECK(K.at(i, j) == expected);
        }
    }
  }
}

TEST_CASE("gaction validation determines the bracket side") {
  auto chart = c2();
  auto affine = std::make_shared<LieAlgebra>(LieAlgebra::affine_line());
  const Poly x = Poly::variable(2, 0);
  const VectorField dx = VectorField::coordinate(chart, 0);

  // [-x d_x, d_x] = +d_x matches [v1, v2] = v2 on the nose.
  GAction plus = make_gaction(affine, {-x * dx, dx});
  CHECK(plus.epsilon == +1);
  // [x d_x, d_x] = -d_x matches the opposite side.
  GAction minus = make_gaction(affine, {x * dx, dx});
  CHECK(minus.epsilon == -1);
  // x d_y cannot close the bracket relations at all.
  CHECK_THROWS_AS(make_gaction(affine, {x * VectorField::coordinate(chart, 1), dx}),
                  ConventionError);
}

TEST_CASE("g-curvature on a 1-dimensional algebra is empty") {
  auto chart = c2();
  SplitMix64 rng(0x9c000001ULL);
  GConnection h = make_gconnection(
      translation_x(chart),
      std::vector<LieValuedFunction>{scalar_fn(random_poly(rng, 2, 2), line())});
  CHECK(g_curvature(h).is_zero());
}

TEST_CASE("flat lifts of commuting translations have zero g-curvature") {
  auto chart = c2();
  auto g2 = std::make_shared<LieAlgebra>(LieAlgebra::abelian(2, "translations"));
  GAction rho = make_gaction(
      g2, {VectorField::coordinate(chart, 0), VectorField::coordinate(chart, 1)});
  auto alg = line();
  GConnection h = make_gconnection(
      rho, std::vector<LieValuedFunction>{LieValuedFunction::zero(alg, 2),
                                          LieValuedFunction::zero(alg, 2)});
  for (VerticalSign sv : kBothSigns) CHECK(g_curvature(h, sv).is_zero());
}

TEST_CASE("twisted lift produces constant g-curvature") {
  auto chart = c2();
  auto g2 = std::make_shared<LieAlgebra>(LieAlgebra::abelian(2, "translations"));
  GAction rho = make_gaction(
      g2, {VectorField::coordinate(chart, 0), VectorField::coordinate(chart, 1)});
  auto alg = line();
  // lifts (d_x, 0) and (d_y, x e): [h(v1), h(v2)] = (0, 1 e), no linear term.
  GConnection h = make_gconnection(
      rho, std::vector<LieValuedFunction>{LieValuedFunction::zero(alg, 2),
                                          scalar_fn(Poly::variable(2, 0), alg)});
  for (VerticalSign sv : kBothSigns) {
    GCurvature K = g_curvature(h, sv);
    CHECK(K.at(0, 1) == scalar_fn(Poly::constant(2, Scalar(1)), alg));
  }
}

TEST_CASE("g-curvature reports a convention error when base parts cannot cancel") {
  auto chart = c2();
  auto affine = std::make_shared<LieAlgebra>(LieAlgebra::affine_line());
  const Poly x = Poly::variable(2, 0);
  const VectorField dx = VectorField::coordinate(chart, 0);
  GAction minus = make_gaction(affine, {x * dx, dx});
  REQUIRE(minus.epsilon == -1);
  auto alg = line();
  GConnection h = make_gconnection(
      minus, std::vector<LieValuedFunction>{LieValuedFunction::zero(alg, 2),
                                            LieValuedFunction::zero(alg, 2)});
  CHECK_THROWS_AS(g_curvature(h), ConventionError);
}

// First worked example: the center of gl(2) acts trivially on the chart.
// Every connection is adapted, none is strongly adapted.
TEST_CASE("center action: adapted for every connection, never strongly") {
  auto chart = c2();
  auto gl2 = std::make_shared<LieAlgebra>(LieAlgebra::gl(2));
  GAction rho = trivial_gaction(line(), chart);
  // psi = identity matrix = E11 + E22, constant.
  LieValue id{gl2, {Scalar(1), Scalar(0), Scalar(0), Scalar(1)}};
  GConnection h = make_gconnection(
      rho, std::vector<LieValuedFunction>{LieValuedFunction::constant(gl2, 2, id)});

  SplitMix64 rng(0xface0001ULL);
  for (VerticalSign sv : kBothSigns) {
    for (int rep = 0; rep < 10; ++rep) {
      Connection eta = random_connection(rng, chart, gl2, 2);
      CHECK(is_adapted(eta, h, sv).adapted);
      StronglyAdaptedResult strong = is_strongly_adapted(eta, h, sv);
      CHECK_FALSE(strong.strongly_adapted);
      CHECK(strong.adapted_clause.adapted);
      CHECK_FALSE(strong.image_ok);
      REQUIRE(strong.image_defect.has_value());
      CHECK_FALSE(strong.image_defect->is_zero());
    }
  }
}

// Second worked example: A = x dy with the translation lift (d_x, 0).
// The bracket condition fails with a constant defect; the image condition holds.
TEST_CASE("translation fixture: image clause holds, adapted clause fails") {
  auto chart = c2();
  auto alg = line();
  Connection eta = xdy_connection(chart, alg);
  GConnection h = make_gconnection(translation_x(chart),
                                   std::vector<LieValuedFunction>{LieValuedFunction::zero(alg, 2)});
  for (VerticalSign sv : kBothSigns) {
    AdaptedResult res = is_adapted(eta, h, sv);
    CHECK_FALSE(res.adapted);
    CHECK(res.basis_index == 0);
    CHECK(res.coord_index == 1);  // the d_y direction
    REQUIRE(res.defect.has_value());
    CHECK(*res.defect == scalar_fn(Poly::constant(2, Scalar(-1)), alg));

    StronglyAdaptedResult strong = is_strongly_adapted(eta, h, sv);
    CHECK_FALSE(strong.strongly_adapted);
    CHECK(strong.image_ok);
    CHECK_FALSE(strong.adapted_clause.adapted);
  }
}

TEST_CASE("tilde_eta lifts") {
  auto chart = c2();
  auto alg = line();
  Connection eta = xdy_connection(chart, alg);

  SUBCASE("zero connection gives bare lifts") {
    Connection zero{LieValuedOneForm::zero(chart, alg)};
    GConnection h = tilde_eta(zero, translation_x(chart));
    CHECK(h.lifts[0].vert.is_zero());
  }
  SUBCASE("A(d_x) = 0 so the x-translation lift is untwisted") {
    GConnection h = tilde_eta(eta, translation_x(chart));
    CHECK(h.lifts[0].base == VectorField::coordinate(chart, 0));
    CHECK(h.lifts[0].vert.is_zero());
  }
  SUBCASE("A(d_y) = x so the y-translation lift is twisted by -x") {
    GAction rho = make_gaction(line(), {VectorField::coordinate(chart, 1)});
    GConnection h = tilde_eta(eta, rho);
    CHECK(h.lifts[0].vert == scalar_fn(-Poly::variable(2, 0), alg));
  }
}

TEST_CASE("contraction criterion") {
  auto chart = c2();
  auto alg = line();

  SUBCASE("flat connections pass for any action") {
    SplitMix64 rng(0xface0002ULL);
    Connection flat = random_flat_connection(rng, chart, alg);
    REQUIRE(curvature(flat).is_zero());
    CHECK(contraction_criterion(flat, translation_x(chart)).vanishes);
  }
  SUBCASE("x dy against the x-translation fails with contraction -dy") {
    Connection eta = xdy_connection(chart, alg);
    ContractionResult res = contraction_criterion(eta, translation_x(chart));
    CHECK_FALSE(res.vanishes);
    REQUIRE(res.contraction.has_value());
    CHECK(res.contraction->components[0].is_zero());
    CHECK(res.contraction->components[1] == scalar_fn(Poly::constant(2, Scalar(-1)), alg));
  }
  SUBCASE("the trivial action passes for any connection") {
    SplitMix64 rng(0xface0003ULL);
    Connection eta = random_connection(rng, chart, alg, 2);
    CHECK(contraction_criterion(eta, trivial_gaction(line(), chart)).vanishes);
  }
}

TEST_CASE("phi_tilde entries") {
  auto chart = c2();
  auto alg = line();
  Connection eta = xdy_connection(chart, alg);
  GAction rho = translation_x(chart);

  SUBCASE("zero phi gives the zero tensor") {
    PhiZero phi = PhiZero::zero(rho.algebra_g, alg, 2);
    CHECK(phi_tilde(phi, eta).is_zero());
  }
  SUBCASE("phi = -y against A = x dy") {
    PhiZero phi = PhiZero::zero(rho.algebra_g, alg, 2);
    phi.values[0] = scalar_fn(-Poly::variable(2, 1), alg);
    for (VerticalSign sv : kBothSigns) {
      GTensor t = phi_tilde(phi, eta, sv);
      CHECK(t.entries[0][0].is_zero());
      CHECK(t.entries[0][1] == scalar_fn(Poly::constant(2, Scalar(1)), alg));
    }
  }
  SUBCASE("constant phi over an abelian algebra gives the zero tensor") {
    PhiZero phi = PhiZero::zero(rho.algebra_g, alg, 2);
    phi.values[0] = scalar_fn(Poly::constant(2, Scalar(5)), alg);
    CHECK(phi_tilde(phi, eta).is_zero());
  }
}

TEST_CASE("pi tensor entries") {
  auto chart = c2();
  auto alg = line();
  GAction rho = translation_x(chart);

  SUBCASE("flat connection gives the zero tensor") {
    SplitMix64 rng(0xface0004ULL);
    Connection flat = random_flat_connection(rng, chart, alg);
    CHECK(pi_tensor(flat, rho).is_zero());
  }
  SUBCASE("A = x dy against the x-translation") {
    Connection eta = xdy_connection(chart, alg);
    for (VerticalSign sv : kBothSigns) {
      GTensor t = pi_tensor(eta, rho, sv);
      CHECK(t.entries[0][0].is_zero());
      CHECK(t.entries[0][1] == scalar_fn(Poly::constant(2, Scalar(-1)), alg));
    }
  }
  SUBCASE("zero generator gives a zero row") {
    SplitMix64 rng(0xface0005ULL);
    Connection eta = random_connection(rng, chart, alg, 2);
    GTensor t = pi_tensor(eta, trivial_gaction(line(), chart));
    CHECK(t.is_zero());
  }
}

TEST_CASE("theorem-1 identity on the translation fixture") {
  auto chart = c2();
  auto alg = line();
  Connection eta = xdy_connection(chart, alg);
  GAction rho = translation_x(chart);

  SUBCASE("phi = -y solves the identity and the induced lift is adapted") {
    PhiZero phi = PhiZero::zero(rho.algebra_g, alg, 2);
    phi.values[0] = scalar_fn(-Poly::variable(2, 1), alg);
    for (VerticalSign sv : kBothSigns) {
      Theorem1Result res = theorem1_check(phi, eta, rho, sv);
      CHECK(res.holds);
      REQUIRE(res.constructed.has_value());
      CHECK(res.constructed->lifts[0].vert == scalar_fn(-Poly::variable(2, 1), alg));
      CHECK(is_adapted(eta, *res.constructed, sv).adapted);
    }
  }
  SUBCASE("phi = 0 with a flat connection") {
    SplitMix64 rng(0xface0006ULL);
    Connection flat = random_flat_connection(rng, chart, alg);
    PhiZero phi = PhiZero::zero(rho.algebra_g, alg, 2);
    CHECK(theorem1_check(phi, flat, rho).holds);
  }
  SUBCASE("phi = 0 fails when the pi tensor is nonzero") {
    PhiZero phi = PhiZero::zero(rho.algebra_g, alg, 2);
    Theorem1Result res = theorem1_check(phi, eta, rho);
    CHECK_FALSE(res.holds);
    REQUIRE(res.defect.has_value());
    CHECK_FALSE(res.defect->is_zero());
  }
}

TEST_CASE("solve_phi0 on the translation fixture") {
  auto chart = c2();
  auto alg = line();
  Connection eta = xdy_connection(chart, alg);
  GAction rho = translation_x(chart);

  SUBCASE("degree 1 recovers -y modulo constants") {
    SolvePhi0Result res = solve_phi0(eta, rho, 1);
    REQUIRE(res.found);
    // particular solution with free coefficients zeroed is exactly -y
    CHECK(res.phi0->values[0] == scalar_fn(-Poly::variable(2, 1), alg));
    // kernel = additive constants
    REQUIRE(res.kernel.size() == 1);
    CHECK(res.kernel[0].values[0].components[0].is_constant());
    CHECK(theorem1_check(*res.phi0, eta, rho).holds);
  }
  SUBCASE("degree 0 has no solution") {
    CHECK_FALSE(solve_phi0(eta, rho, 0).found);
  }
  SUBCASE("flat connection at degree 0 gives phi = 0 with a constant kernel") {
    Connection zero{LieValuedOneForm::zero(chart, alg)};
    SolvePhi0Result res = solve_phi0(zero, rho, 0);
    REQUIRE(res.found);
    CHECK(res.phi0->values[0].is_zero());
    CHECK(res.kernel.size() == 1);
  }
}

TEST_CASE("theorem-1 round trip on planted scenes") {
  SplitMix64 rng(0xface0007ULL);
  for (int rep = 0; rep < 25; ++rep) {
    const std::size_t n = 2 + rng.below(2);
    const std::size_t dim_h = 1 + rng.below(2);
    PlantedScene scene = plant_phi0_scene(rng, n, dim_h);
    for (VerticalSign sv : kBothSigns) {
      // The planted phi solves the identity.
      Theorem1Result direct = theorem1_check(scene.phi0, scene.eta, scene.rho, sv);
      REQUIRE(direct.holds);
      REQUIRE(direct.constructed.has_value());
      CHECK(is_adapted(scene.eta, *direct.constructed, sv).adapted);
      // Extracting phi back from the induced lift reproduces a solution.
      PhiZero extracted = PhiZero::zero(scene.rho.algebra_g, scene.eta.algebra(), n);
      for (std::size_t v = 0; v < scene.rho.dim_g(); ++v)
        extracted.values[v] =
            direct.constructed->lifts[v].vert +
            apply_oneform(scene.eta.form, scene.rho.generators[v]);
      CHECK(extracted.values[0] == scene.phi0.values[0]);
      CHECK(theorem1_check(extracted, scene.eta, scene.rho, sv).holds);
    }
  }
}

namespace {

// Random action families with exactly commuting generators.
GAction random_abelian_action(SplitMix64& rng, const ChartPtr& chart, std::size_t dim_g) {
  auto alg_g = std::make_shared<LieAlgebra>(LieAlgebra::abelian(dim_g));
  const std::size_t n = chart->dim();
  std::vector<VectorField> gens;
  const std::size_t family = rng.below(3);
  if (family == 0) {
    // constant fields
    for (std::size_t v = 0; v < dim_g; ++v) {
      VectorField g = VectorField::zero(chart);
      for (std::size_t i = 0; i < n; ++i)
        g.components[i] = Poly::constant(n, Scalar(rng.range(-2, 2)));
      gens.push_back(std::move(g));
    }
  } else if (family == 1) {
    // multiples of one coordinate direction with coefficients killed by it
    const std::size_t dir = rng.below(n);
    for (std::size_t v = 0; v < dim_g; ++v) {
      Poly p = random_poly(rng, n, 2);
      Poly killed(n);
      for (const auto& [exp, c] : p.terms()) {
        auto e = exp;
        e[dir] = 0;
        killed.add_term(e, c);
      }
      gens.push_back(killed * VectorField::coordinate(chart, dir));
    }
  } else {
    // diagonal scalings of distinct coordinates
    for (std::size_t v = 0; v < dim_g; ++v) {
      const std::size_t i = v % n;
      gens.push_back(Poly::variable(n, i) * VectorField::coordinate(chart, i));
    }
  }
  return make_gaction(alg_g, std::move(gens));
}

GAction random_action(SplitMix64& rng, const ChartPtr& chart) {
  const std::size_t kind = rng.below(4);
  if (kind == 0) {
    auto alg_g = std::make_shared<LieAlgebra>(LieAlgebra::abelian(1));
    return trivial_gaction(alg_g, chart);
  }
  if (kind == 1) {
    // nonabelian affine action in one coordinate, either epsilon
    auto affine = std::make_shared<LieAlgebra>(LieAlgebra::affine_line());
    const std::size_t dir = rng.below(chart->dim());
    const VectorField dd = VectorField::coordinate(chart, dir);
    const Poly z = Poly::variable(chart->dim(), dir);
    if (rng.below(2) == 0) return make_gaction(affine, {-z * dd, dd});
    return make_gaction(affine, {z * dd, dd});
  }
  return random_abelian_action(rng, chart, 1 + rng.below(2));
}

}  // namespace

TEST_CASE("three-way equivalence for the induced G-connection") {
  // adapted(eta, tilde_eta) == strongly_adapted(eta, tilde_eta) == contraction
  // criterion, as booleans, for random data and both vertical signs.
  SplitMix64 rng(0xface0008ULL);
  int true_cases = 0;
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 2 + rng.below(2);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("z" + std::to_string(i + 1));
    ChartPtr chart = make_chart(labels);
    LieAlgebraPtr alg_h;
    const std::size_t pick = rng.below(3);
    if (pick == 0)
      alg_h = std::make_shared<LieAlgebra>(LieAlgebra::abelian(1));
    else if (pick == 1)
      alg_h = std::make_shared<LieAlgebra>(LieAlgebra::abelian(2));
    else
      alg_h = std::make_shared<LieAlgebra>(LieAlgebra::sl2());

    Connection eta = (rng.below(3) == 0) ? random_flat_connection(rng, chart, alg_h)
                                         : random_connection(rng, chart, alg_h, 2);
    GAction rho = random_action(rng, chart);
    for (VerticalSign sv : kBothSigns) {
      GConnection h = tilde_eta(eta, rho);
      const bool a = is_adapted(eta, h, sv).adapted;
      const bool s = is_strongly_adapted(eta, h, sv).strongly_adapted;
      const bool c = contraction_criterion(eta, rho, sv).vanishes;
      CHECK(a == s);
      CHECK(a == c);
      if (a) ++true_cases;
    }
  }
  CHECK(true_cases > 0);  // the family must exercise both outcomes
}

TEST_CASE("solver succeeds on planted scenes and its output is always a solution") {
  SplitMix64 rng(0xface000aULL);
  for (int rep = 0; rep < 8; ++rep) {
    const std::size_t n = 2 + rng.below(2);
    PlantedScene scene = plant_phi0_scene(rng, n, 1);
    SolvePhi0Result res = solve_phi0(scene.eta, scene.rho, 2);
    REQUIRE(res.found);  // the planted solution has degree <= 2
    // solve_phi0 internally asserts theorem1_check on its result; re-check
    // through the public surface and confirm the induced lift is adapted.
    Theorem1Result check = theorem1_check(*res.phi0, scene.eta, scene.rho);
    CHECK(check.holds);
    REQUIRE(check.constructed.has_value());
    CHECK(is_adapted(scene.eta, *check.constructed).adapted);
    // kernel vectors shift solutions to solutions
    for (const auto& k : res.kernel) {
      PhiZero shifted = *res.phi0;
      for (std::size_t v = 0; v < shifted.values.size(); ++v)
        shifted.values[v] += k.values[v];
      CHECK(theorem1_check(shifted, scene.eta, scene.rho).holds);
    }
  }
}

TEST_CASE("g-curvature of the induced connection vanishes over flat connections") {
  // abelian symmetry algebra with commuting generators over a flat base.
  SplitMix64 rng(0xface0009ULL);
  for (int rep = 0; rep < 10; ++rep) {
    auto chart = c2();
    auto alg_h = line();
    Connection flat = random_flat_connection(rng, chart, alg_h);
    GAction rho = random_abelian_action(rng, chart, 2);
    for (VerticalSign sv : kBothSigns) {
      GConnection h = tilde_eta(flat, rho);
      CHECK(g_curvature(h, sv).is_zero());
    }
  }
}

TEST_CASE("lift base must match the action generator") {
  auto chart = c2();
  GAction rho = translation_x(chart);
  std::vector<InvariantField> lifts = {
      InvariantField{VectorField::coordinate(chart, 1), LieValuedFunction::zero(line(), 2)}};
  CHECK_THROWS_AS(make_gconnection(rho, std::move(lifts)), ValidationError);
}
