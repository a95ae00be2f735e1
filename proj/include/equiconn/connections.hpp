#ifndef EQUICONN_CONNECTIONS_HPP
#define EQUICONN_CONNECTIONS_HPP

#include <optional>

#include "equiconn/chart.hpp"

namespace equiconn {

/// Holomorphic connection on the trivialized bundle, represented by its
/// h-valued connection form A; the horizontal lift of W is (W, -A(W)).
struct Connection {
  LieValuedOneForm form;

  const ChartPtr& chart() const { return form.chart; }
  const LieAlgebraPtr& algebra() const { return form.algebra; }
};

/// Horizontal lift (W, -A(W)).
InvariantField horizontal_lift(const Connection& eta, const VectorField& W);

/// Vertical component in the eta-splitting: (Z, psi) |-> psi + A(Z).
LieValuedFunction eta_vertical(const Connection& eta, const InvariantField& xi);

/// Infinitesimal action of a group on the chart: one generator field per
/// basis vector of its Lie algebra. epsilon records on which side the
/// generator map is a bracket homomorphism: [a(u),a(v)] = epsilon a([u,v]).
struct GAction {
  LieAlgebraPtr algebra_g;
  ChartPtr chart;
  std::vector<VectorField> generators;
  int epsilon = +1;

  std::size_t dim_g() const { return algebra_g->dim(); }
};

/// Validates the generator/bracket compatibility and determines epsilon.
/// Throws ConventionError when no single sign works.
GAction make_gaction(LieAlgebraPtr algebra_g, std::vector<VectorField> generators);

/// Trivial action: every generator is the zero field.
GAction trivial_gaction(LieAlgebraPtr algebra_g, ChartPtr chart);

/// Per-basis-vector lifts h(v) = (a(v), psi_v); the base part of each lift
/// equals the action generator (this is the defining splitting condition).
struct GConnection {
  GAction action;
  std::vector<InvariantField> lifts;

  const LieAlgebraPtr& algebra_h() const { return lifts.front().vert.algebra; }
};

GConnection make_gconnection(GAction action, std::vector<LieValuedFunction> vertical_parts);
/// Full-lift variant; throws ValidationError when a base differs from its generator.
GConnection make_gconnection(GAction action, std::vector<InvariantField> lifts);

/// Curvature values K(h)(v_i, v_j) on basis pairs, i < j.
struct GCurvature {
  LieAlgebraPtr algebra_g;
  LieAlgebraPtr algebra_h;
  std::vector<LieValuedFunction> upper;  // packed like LieValuedTwoForm

  LieValuedFunction at(std::size_t i, std::size_t j) const;
  bool is_zero() const;
};

/// Curvature two-form of a connection, computed through invariant-field
/// brackets of the coordinate horizontal lifts.
LieValuedTwoForm curvature(const Connection& eta, VerticalSign sigma = kDefaultVerticalSign);

/// Bracket defect [h(v_i), h(v_j)] - h([v_i, v_j]); the base parts must
/// cancel exactly, otherwise the action/bracket conventions disagree and a
/// ConventionError is thrown.
GCurvature g_curvature(const GConnection& h, VerticalSign sigma = kDefaultVerticalSign);

struct AdaptedResult {
  bool adapted = false;
  // Witness when not adapted: first basis vector and coordinate direction
  // with a nonvanishing vertical defect, plus the defect itself.
  std::size_t basis_index = 0;
  std::size_t coord_index = 0;
  std::optional<LieValuedFunction> defect;

  explicit operator bool() const { return adapted; }
};

/// Bracket-stability test: eta is adapted to h iff every [h(v), eta(d_i)]
/// is horizontal for eta. Checking the coordinate frame suffices because
/// the vertical defect is function-linear in the second slot.
AdaptedResult is_adapted(const Connection& eta, const GConnection& h,
                         VerticalSign sigma = kDefaultVerticalSign);

struct StronglyAdaptedResult {
  bool strongly_adapted = false;
  AdaptedResult adapted_clause;
  bool image_ok = false;
  // Witness when the image clause fails.
  std::size_t image_index = 0;
  std::optional<LieValuedFunction> image_defect;

  explicit operator bool() const { return strongly_adapted; }
};

/// Adapted plus horizontality of the lifts: psi_v + A(a(v)) = 0 for all v.
StronglyAdaptedResult is_strongly_adapted(const Connection& eta, const GConnection& h,
                                          VerticalSign sigma = kDefaultVerticalSign);

/// The G-connection induced by eta itself: v |-> (a(v), -A(a(v))).
GConnection tilde_eta(const Connection& eta, const GAction& rho);

struct ContractionResult {
  bool vanishes = false;
  std::size_t basis_index = 0;
  std::optional<LieValuedOneForm> contraction;  // first nonzero i_{a(v)} K

  explicit operator bool() const { return vanishes; }
};

/// Tests i_{a(v)} K(eta) == 0 for every basis vector of g.
ContractionResult contraction_criterion(const Connection& eta, const GAction& rho,
                                        VerticalSign sigma = kDefaultVerticalSign);

/// Linear map phi_0 from g to h-valued functions on the chart.
struct PhiZero {
  LieAlgebraPtr algebra_g;
  std::vector<LieValuedFunction> values;  // one per g-basis vector

  static PhiZero zero(LieAlgebraPtr algebra_g, LieAlgebraPtr algebra_h, std::size_t num_vars);
};

/// Tensor with one h-valued function per (g-basis vector, coordinate) pair;
/// holds both bracket tensors compared by the adaptedness criterion.
struct GTensor {
  LieAlgebraPtr algebra_g;
  ChartPtr chart;
  std::vector<std::vector<LieValuedFunction>> entries;  // [g index][coord index]

  bool is_zero() const;
  friend GTensor operator+(const GTensor& a, const GTensor& b);
  friend bool operator==(const GTensor& a, const GTensor& b);
};

/// Entry (v, i) = vertical part of [(0, phi_0(v)), eta(d_i)]; the base part
/// vanishes identically and is asserted to.
GTensor phi_tilde(const PhiZero& phi0, const Connection& eta,
                  VerticalSign sigma = kDefaultVerticalSign);

/// Entry (v, i) = (i_{a(v)} K(eta))_i, the double contraction of the curvature.
GTensor pi_tensor(const Connection& eta, const GAction& rho,
                  VerticalSign sigma = kDefaultVerticalSign);

struct Theorem1Result {
  bool holds = false;
  // Witness when the identity fails.
  std::size_t basis_index = 0;
  std::size_t coord_index = 0;
  std::optional<LieValuedFunction> defect;
  // When the identity holds: the induced G-connection (a(v), phi0(v) - A(a(v))),
  // which is guaranteed adapted to eta.
  std::optional<GConnection> constructed;

  explicit operator bool() const { return holds; }
};

/// Tests the tensor identity phi_tilde == -pi_tensor; on success builds the
/// induced G-connection and asserts it is adapted.
Theorem1Result theorem1_check(const PhiZero& phi0, const Connection& eta, const GAction& rho,
                              VerticalSign sigma = kDefaultVerticalSign);

struct SolvePhi0Result {
  bool found = false;
  std::optional<PhiZero> phi0;
  std::vector<PhiZero> kernel;  // basis of homogeneous solutions at this degree

  explicit operator bool() const { return found; }
};

/// Searches for phi_0 with polynomial entries of total degree <= max_degree
/// satisfying phi_tilde == -pi_tensor; the constraint is linear in the
/// unknown coefficients, so this reduces to one exact linear solve.
SolvePhi0Result solve_phi0(const Connection& eta, const GAction& rho, std::size_t max_degree,
                           VerticalSign sigma = kDefaultVerticalSign);

}  // namespace equiconn

#endif
