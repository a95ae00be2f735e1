#include "equiconn/connections.hpp"

#include <cassert>
#include <functional>
#include <map>

#include "equiconn/errors.hpp"
#include "equiconn/linear.hpp"

namespace equiconn {

namespace {

void check_shared(const Connection& eta, const GConnection& h, const char* op) {
  if (!same_chart(*eta.chart(), *h.action.chart))
    throw DimensionError(std::string(op) + ": connection and G-connection charts differ");
  if (!same_algebra(*eta.algebra(), *h.algebra_h()))
    throw DimensionError(std::string(op) + ": connection and G-connection structure algebras differ");
}

/// Multi-index enumeration of all monomials with total degree <= max_degree.
void enumerate_monomials(std::size_t num_vars, std::size_t max_degree,
                         std::vector<Poly::Exponents>& out) {
  Poly::Exponents cur(num_vars, 0);
  // Counts in mixed radix; simple and fine at the degrees used here.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t left) {
    if (pos == num_vars) {
      out.push_back(cur);
      return;
    }
    for (std::size_t e = 0; e <= left; ++e) {
      cur[pos] = static_cast<std::uint32_t>(e);
      rec(pos + 1, left - e);
    }
    cur[pos] = 0;
  };
  rec(0, max_degree);
}

}  // namespace

InvariantField horizontal_lift(const Connection& eta, const VectorField& W) {
  return InvariantField{W, -apply_oneform(eta.form, W)};
}

LieValuedFunction eta_vertical(const Connection& eta, const InvariantField& xi) {
  return xi.vert + apply_oneform(eta.form, xi.base);
}

GAction make_gaction(LieAlgebraPtr algebra_g, std::vector<VectorField> generators) {
  if (generators.size() != algebra_g->dim())
    throw DimensionError("action needs one generator per basis vector of g");
  if (generators.empty()) throw ValidationError("action needs at least one generator");
  const ChartPtr chart = generators[0].chart;
  for (const auto& g : generators)
    if (!same_chart(*chart, *g.chart))
      throw DimensionError("action generators live on different charts");

  const std::size_t m = algebra_g->dim();
  bool plus_ok = true, minus_ok = true;
  for (std::size_t i = 0; i < m && (plus_ok || minus_ok); ++i) {
    for (std::size_t j = i + 1; j < m && (plus_ok || minus_ok); ++j) {
      VectorField lhs = vf_bracket(generators[i], generators[j]);
      VectorField rhs = VectorField::zero(chart);
      for (std::size_t k = 0; k < m; ++k) {
        const Scalar& c = algebra_g->c(i, j, k);
        if (!c.is_zero()) rhs += c * generators[k];
      }
      if (!(lhs == rhs)) plus_ok = false;
      if (!(lhs == -rhs)) minus_ok = false;
    }
  }
  if (!plus_ok && !minus_ok)
    throw ConventionError(
        "generator brackets match neither +1 nor -1 times the algebra brackets");

  GAction action;
  action.algebra_g = std::move(algebra_g);
  action.chart = chart;
  action.generators = std::move(generators);
  action.epsilon = plus_ok ? +1 : -1;
  return action;
}

GAction trivial_gaction(LieAlgebraPtr algebra_g, ChartPtr chart) {
  std::vector<VectorField> gens(algebra_g->dim(), VectorField::zero(chart));
  return make_gaction(std::move(algebra_g), std::move(gens));
}

GConnection make_gconnection(GAction action, std::vector<LieValuedFunction> vertical_parts) {
  if (vertical_parts.size() != action.dim_g())
    throw DimensionError("G-connection needs one vertical part per basis vector of g");
  std::vector<InvariantField> lifts;
  lifts.reserve(vertical_parts.size());
  for (std::size_t v = 0; v < vertical_parts.size(); ++v) {
    if (vertical_parts[v].num_vars() != action.chart->dim())
      throw DimensionError("G-connection vertical part has wrong variable count");
    lifts.push_back(InvariantField{action.generators[v], std::move(vertical_parts[v])});
  }
  return GConnection{std::move(action), std::move(lifts)};
}

GConnection make_gconnection(GAction action, std::vector<InvariantField> lifts) {
  if (lifts.size() != action.dim_g())
    throw DimensionError("G-connection needs one lift per basis vector of g");
  for (std::size_t v = 0; v < lifts.size(); ++v)
    if (!(lifts[v].base == action.generators[v]))
      throw ValidationError("lift base for basis vector " + std::to_string(v) +
                            " differs from the action generator");
  return GConnection{std::move(action), std::move(lifts)};
}

LieValuedFunction GCurvature::at(std::size_t i, std::size_t j) const {
  const std::size_t m = algebra_g->dim();
  if (i == j) return LieValuedFunction::zero(algebra_h, upper.empty() ? 0 : upper[0].num_vars());
  if (i < j) return upper[LieValuedTwoForm::pack_index(m, i, j)];
  return -upper[LieValuedTwoForm::pack_index(m, j, i)];
}

bool GCurvature::is_zero() const {
  for (const auto& f : upper)
    if (!f.is_zero()) return false;
  return true;
}

LieValuedTwoForm curvature(const Connection& eta, VerticalSign sigma) {
  const std::size_t n = eta.chart()->dim();
  LieValuedTwoForm out = LieValuedTwoForm::zero(eta.chart(), eta.algebra());
  for (std::size_t i = 0; i < n; ++i) {
    const InvariantField lift_i = horizontal_lift(eta, VectorField::coordinate(eta.chart(), i));
    for (std::size_t j = i + 1; j < n; ++j) {
      const InvariantField lift_j = horizontal_lift(eta, VectorField::coordinate(eta.chart(), j));
      // [d_i, d_j] = 0, so the bracket defect is just the vertical part.
      out.set(i, j, invariant_bracket(lift_i, lift_j, sigma).vert);
    }
  }
  return out;
}

GCurvature g_curvature(const GConnection& h, VerticalSign sigma) {
  const std::size_t m = h.action.dim_g();
  GCurvature out;
  out.algebra_g = h.action.algebra_g;
  out.algebra_h = h.algebra_h();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      InvariantField br = invariant_bracket(h.lifts[i], h.lifts[j], sigma);
      // h applied to [v_i, v_j] expanded in the basis.
      InvariantField lin{VectorField::zero(h.action.chart),
                         LieValuedFunction::zero(out.algebra_h, h.action.chart->dim())};
      for (std::size_t k = 0; k < m; ++k) {
        const Scalar& c = h.action.algebra_g->c(i, j, k);
        if (c.is_zero()) continue;
        lin.base += c * h.lifts[k].base;
        lin.vert += c * h.lifts[k].vert;
      }
      if (!(br.base == lin.base))
        throw ConventionError(
            "base parts of [h(v_" + std::to_string(i + 1) + "), h(v_" + std::to_string(j + 1) +
            ")] do not cancel against h([v_i, v_j]); the action epsilon (" +
            std::to_string(h.action.epsilon) + ") disagrees with the bracket table");
      out.upper.push_back(br.vert - lin.vert);
    }
  }
  return out;
}

AdaptedResult is_adapted(const Connection& eta, const GConnection& h, VerticalSign sigma) {
  check_shared(eta, h, "is_adapted");
  const std::size_t n = eta.chart()->dim();
  AdaptedResult res;
  for (std::size_t v = 0; v < h.lifts.size(); ++v) {
    for (std::size_t i = 0; i < n; ++i) {
      const InvariantField lift = horizontal_lift(eta, VectorField::coordinate(eta.chart(), i));
      LieValuedFunction defect =
          eta_vertical(eta, invariant_bracket(h.lifts[v], lift, sigma));
      if (!defect.is_zero()) {
        res.adapted = false;
        res.basis_index = v;
        res.coord_index = i;
        res.defect = std::move(defect);
        return res;
      }
    }
  }
  res.adapted = true;
  return res;
}

StronglyAdaptedResult is_strongly_adapted(const Connection& eta, const GConnection& h,
                                          VerticalSign sigma) {
  check_shared(eta, h, "is_strongly_adapted");
  StronglyAdaptedResult res;
  res.adapted_clause = is_adapted(eta, h, sigma);
  res.image_ok = true;
  for (std::size_t v = 0; v < h.lifts.size(); ++v) {
    LieValuedFunction defect = eta_vertical(eta, h.lifts[v]);
    if (!defect.is_zero()) {
      res.image_ok = false;
      res.image_index = v;
      res.image_defect = std::move(defect);
      break;
    }
  }
  res.strongly_adapted = res.adapted_clause.adapted && res.image_ok;
  return res;
}

GConnection tilde_eta(const Connection& eta, const GAction& rho) {
  if (!same_chart(*eta.chart(), *rho.chart))
    throw DimensionError("tilde_eta: connection and action charts differ");
  std::vector<LieValuedFunction> verts;
  verts.reserve(rho.generators.size());
  for (const auto& gen : rho.generators) verts.push_back(-apply_oneform(eta.form, gen));
  return make_gconnection(rho, std::move(verts));
}

ContractionResult contraction_criterion(const Connection& eta, const GAction& rho,
                                        VerticalSign sigma) {
  if (!same_chart(*eta.chart(), *rho.chart))
    throw DimensionError("contraction_criterion: connection and action charts differ");
  const LieValuedTwoForm K = curvature(eta, sigma);
  ContractionResult res;
  for (std::size_t v = 0; v < rho.generators.size(); ++v) {
    LieValuedOneForm c = contract(K, rho.generators[v]);
    if (!c.is_zero()) {
      res.vanishes = false;
      res.basis_index = v;
      res.contraction = std::move(c);
      return res;
    }
  }
  res.vanishes = true;
  return res;
}

PhiZero PhiZero::zero(LieAlgebraPtr algebra_g, LieAlgebraPtr algebra_h, std::size_t num_vars) {
  PhiZero phi;
  phi.values.assign(algebra_g->dim(), LieValuedFunction::zero(std::move(algebra_h), num_vars));
  phi.algebra_g = std::move(algebra_g);
  return phi;
}

bool GTensor::is_zero() const {
  for (const auto& row : entries)
    for (const auto& f : row)
      if (!f.is_zero()) return false;
  return true;
}

GTensor operator+(const GTensor& a, const GTensor& b) {
  if (a.entries.size() != b.entries.size())
    throw DimensionError("tensor add: mismatched g dimensions");
  GTensor out = a;
  for (std::size_t v = 0; v < out.entries.size(); ++v) {
    if (a.entries[v].size() != b.entries[v].size())
      throw DimensionError("tensor add: mismatched chart dimensions");
    for (std::size_t i = 0; i < out.entries[v].size(); ++i)
      out.entries[v][i] += b.entries[v][i];
  }
  return out;
}

bool operator==(const GTensor& a, const GTensor& b) { return a.entries == b.entries; }

GTensor phi_tilde(const PhiZero& phi0, const Connection& eta, VerticalSign sigma) {
  const std::size_t n = eta.chart()->dim();
  GTensor out;
  out.algebra_g = phi0.algebra_g;
  out.chart = eta.chart();
  for (const auto& phi_v : phi0.values) {
    if (!same_algebra(*phi_v.algebra, *eta.algebra()))
      throw DimensionError("phi_tilde: phi_0 values and connection algebras differ");
    const InvariantField vertical_field{VectorField::zero(eta.chart()), phi_v};
    std::vector<LieValuedFunction> row;
    row.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const InvariantField lift = horizontal_lift(eta, VectorField::coordinate(eta.chart(), i));
      InvariantField br = invariant_bracket(vertical_field, lift, sigma);
      // Bracket of a vertical field with any invariant field is vertical.
      assert(br.base.is_zero());
      row.push_back(std::move(br.vert));
    }
    out.entries.push_back(std::move(row));
  }
  return out;
}

GTensor pi_tensor(const Connection& eta, const GAction& rho, VerticalSign sigma) {
  if (!same_chart(*eta.chart(), *rho.chart))
    throw DimensionError("pi_tensor: connection and action charts differ");
  const LieValuedTwoForm K = curvature(eta, sigma);
  GTensor out;
  out.algebra_g = rho.algebra_g;
  out.chart = eta.chart();
  for (const auto& gen : rho.generators) {
    LieValuedOneForm c = contract(K, gen);
    out.entries.push_back(std::move(c.components));
  }
  return out;
}

Theorem1Result theorem1_check(const PhiZero& phi0, const Connection& eta, const GAction& rho,
                              VerticalSign sigma) {
  if (phi0.values.size() != rho.dim_g())
    throw DimensionError("theorem1_check: phi_0 and action have different g dimensions");
  const GTensor sum = phi_tilde(phi0, eta, sigma) + pi_tensor(eta, rho, sigma);
  Theorem1Result res;
  for (std::size_t v = 0; v < sum.entries.size(); ++v) {
    for (std::size_t i = 0; i < sum.entries[v].size(); ++i) {
      if (!sum.entries[v][i].is_zero()) {
        res.holds = false;
        res.basis_index = v;
        res.coord_index = i;
        res.defect = sum.entries[v][i];
        return res;
      }
    }
  }
  res.holds = true;
  // Induced G-connection h(v) = (a(v), phi0(v) - A(a(v))).
  std::vector<LieValuedFunction> verts;
  verts.reserve(rho.dim_g());
  for (std::size_t v = 0; v < rho.dim_g(); ++v)
    verts.push_back(phi0.values[v] - apply_oneform(eta.form, rho.generators[v]));
  GConnection h = make_gconnection(rho, std::move(verts));
  if (!is_adapted(eta, h, sigma).adapted)
    throw ConventionError(
        "internal inconsistency: tensor identity holds but the induced G-connection "
        "is not adapted");
  res.constructed = std::move(h);
  return res;
}

SolvePhi0Result solve_phi0(const Connection& eta, const GAction& rho, std::size_t max_degree,
                           VerticalSign sigma) {
  const std::size_t n = eta.chart()->dim();
  const std::size_t m = rho.dim_g();
  const std::size_t dim_h = eta.algebra()->dim();

  std::vector<Poly::Exponents> monomials;
  enumerate_monomials(n, max_degree, monomials);
  const std::size_t per_value = dim_h * monomials.size();
  const std::size_t num_unknowns = m * per_value;

  auto build_phi = [&](const std::vector<Scalar>& coeffs) {
    PhiZero phi = PhiZero::zero(rho.algebra_g, eta.algebra(), n);
    std::size_t u = 0;
    for (std::size_t v = 0; v < m; ++v)
      for (std::size_t k = 0; k < dim_h; ++k)
        for (const auto& exp : monomials) phi.values[v].components[k].add_term(exp, coeffs[u++]);
    return phi;
  };

  // phi_tilde is linear in phi_0, so columns of the system come from unit
  // ansatz coefficients; the rhs is the (constant-in-phi) pi tensor.
  const GTensor pi = pi_tensor(eta, rho, sigma);

  // Collect the exponent support of every equation entry.
  std::vector<GTensor> columns;
  columns.reserve(num_unknowns);
  {
    std::vector<Scalar> unit(num_unknowns, Scalar(0));
    for (std::size_t u = 0; u < num_unknowns; ++u) {
      unit[u] = Scalar(1);
      columns.push_back(phi_tilde(build_phi(unit), eta, sigma));
      unit[u] = Scalar(0);
    }
  }

  // One equation per (v, i, h-basis k, monomial) coefficient that appears.
  LinearSystem sys(num_unknowns);
  for (std::size_t v = 0; v < m; ++v) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < dim_h; ++k) {
        std::map<Poly::Exponents, std::pair<std::vector<Scalar>, Scalar>> eqs;
        auto touch = [&](const Poly::Exponents& e) -> std::pair<std::vector<Scalar>, Scalar>& {
          auto it = eqs.find(e);
          if (it == eqs.end())
            it = eqs.emplace(e, std::make_pair(std::vector<Scalar>(num_unknowns, Scalar(0)),
                                               Scalar(0)))
                     .first;
          return it->second;
        };
        for (std::size_t u = 0; u < num_unknowns; ++u)
          for (const auto& [exp, c] : columns[u].entries[v][i].components[k].terms())
            touch(exp).first[u] = c;
        for (const auto& [exp, c] : pi.entries[v][i].components[k].terms())
          touch(exp).second = -c;  // phi_tilde = -Pi
        for (auto& [exp, row] : eqs) sys.add_row(std::move(row.first), row.second);
      }
    }
  }

  SolvePhi0Result res;
  auto sol = solve_linear(sys);
  if (!sol) {
    res.found = false;
    return res;
  }
  res.found = true;
  res.phi0 = build_phi(sol->particular);
  for (const auto& k : sol->kernel_basis) res.kernel.push_back(build_phi(k));
  const Theorem1Result verify = theorem1_check(*res.phi0, eta, rho, sigma);
  if (!verify.holds)
    throw ConventionError("internal inconsistency: linear solve produced a non-solution");
  return res;
}

}  // namespace equiconn
