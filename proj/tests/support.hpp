#ifndef EQUICONN_TESTS_SUPPORT_HPP
#define EQUICONN_TESTS_SUPPORT_HPP

#include <vector>

#include "equiconn/chart.hpp"
#include "equiconn/connections.hpp"
#include "equiconn/rng.hpp"

namespace equiconn::testing {

inline Scalar random_scalar(SplitMix64& rng, bool allow_imaginary = false) {
  long num = rng.range(-4, 4);
  long den = rng.range(1, 3);
  if (!allow_imaginary) return Scalar(num, den);
  long im_num = rng.range(-4, 4);
  long im_den = rng.range(1, 3);
  return Scalar(num, den, im_num, im_den);
}

inline Poly random_poly(SplitMix64& rng, std::size_t num_vars, std::size_t max_degree,
                        std::size_t max_terms = 4, bool allow_imaginary = false) {
  Poly p(num_vars);
  const std::size_t terms = 1 + rng.below(max_terms);
  for (std::size_t t = 0; t < terms; ++t) {
    Poly::Exponents exp(num_vars, 0);
    std::size_t budget = rng.below(max_degree + 1);
    for (std::size_t v = 0; v < num_vars && budget > 0; ++v) {
      const std::size_t e = rng.below(budget + 1);
      exp[v] = static_cast<std::uint32_t>(e);
      budget -= e;
    }
    p.add_term(exp, random_scalar(rng, allow_imaginary));
  }
  return p;
}

inline LieValuedFunction random_lie_function(SplitMix64& rng, const LieAlgebraPtr& algebra,
                                             std::size_t num_vars, std::size_t max_degree) {
  LieValuedFunction f = LieValuedFunction::zero(algebra, num_vars);
  for (auto& comp : f.components) comp = random_poly(rng, num_vars, max_degree);
  return f;
}

inline VectorField random_vector_field(SplitMix64& rng, const ChartPtr& chart,
                                       std::size_t max_degree) {
  VectorField v = VectorField::zero(chart);
  for (auto& comp : v.components) comp = random_poly(rng, chart->dim(), max_degree);
  return v;
}

inline LieValuedOneForm random_one_form(SplitMix64& rng, const ChartPtr& chart,
                                        const LieAlgebraPtr& algebra, std::size_t max_degree) {
  LieValuedOneForm w = LieValuedOneForm::zero(chart, algebra);
  for (auto& comp : w.components) comp = random_lie_function(rng, algebra, chart->dim(), max_degree);
  return w;
}

inline Connection random_connection(SplitMix64& rng, const ChartPtr& chart,
                                    const LieAlgebraPtr& algebra, std::size_t max_degree) {
  return Connection{random_one_form(rng, chart, algebra, max_degree)};
}

/// Flat connection: A = (dq) * xi0 for a random polynomial q and a fixed
/// algebra direction, so the curvature vanishes for either vertical sign.
inline Connection random_flat_connection(SplitMix64& rng, const ChartPtr& chart,
                                         const LieAlgebraPtr& algebra) {
  const Poly q = random_poly(rng, chart->dim(), 3);
  const std::size_t dir = rng.below(algebra->dim());
  LieValuedOneForm A = LieValuedOneForm::zero(chart, algebra);
  for (std::size_t i = 0; i < chart->dim(); ++i) A.components[i].components[dir] = q.diff(i);
  return Connection{A};
}

/// A scene with a planted solution of the adapted-lift equation: the action
/// is a coordinate translation, phi is chosen independent of the flow
/// direction, and the connection form is integrated to match, so the tensor
/// identity holds by construction for the planted phi.
struct PlantedScene {
  Connection eta;
  GAction rho;
  PhiZero phi0;
};

inline PlantedScene plant_phi0_scene(SplitMix64& rng, std::size_t n, std::size_t dim_h) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("z" + std::to_string(i + 1));
  ChartPtr chart = make_chart(labels);
  auto alg_h = std::make_shared<LieAlgebra>(LieAlgebra::abelian(dim_h));
  auto alg_g = std::make_shared<LieAlgebra>(LieAlgebra::abelian(1));
  const std::size_t dir = rng.below(n);

  auto poly_without_dir = [&](std::size_t degree) {
    Poly p = random_poly(rng, n, degree);
    Poly out(n);
    for (const auto& [exp, c] : p.terms()) {
      auto e = exp;
      e[dir] = 0;
      out.add_term(e, c);
    }
    return out;
  };

  PhiZero phi = PhiZero::zero(alg_g, alg_h, n);
  LieValuedOneForm A = LieValuedOneForm::zero(chart, alg_h);
  for (std::size_t k = 0; k < dim_h; ++k) {
    const Poly phi_k = poly_without_dir(2);
    phi.values[0].components[k] = phi_k;
    const Poly g = random_poly(rng, n, 2);
    A.components[dir].components[k] = g;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == dir) continue;
      // d_dir A_i = d_i (A_dir - phi), plus anything killed by d_dir.
      A.components[i].components[k] =
          (g - phi_k).diff(i).antiderivative(dir) + poly_without_dir(2);
    }
  }
  GAction rho = make_gaction(alg_g, {VectorField::coordinate(chart, dir)});
  return PlantedScene{Connection{A}, std::move(rho), std::move(phi)};
}

}  // namespace equiconn::testing

#endif
