#ifndef EQUICONN_FLOW_HPP
#define EQUICONN_FLOW_HPP

#include <Eigen/Dense>
#include <optional>

#include "equiconn/connections.hpp"

namespace equiconn {

/// One numeric flow/transport problem: a field, a distribution frame, start
/// points and integration parameters. Fields must have real (rational)
/// coefficients; they are evaluated in double precision.
struct NumericFlowProblem {
  std::string name;
  VectorField xi;
  std::vector<VectorField> frame;
  std::vector<Eigen::VectorXd> start_points;
  double t_max = 1.0;
  int steps = 1000;
  double tolerance = 1e-6;
  /// Exact points for the bracket-condition side of the equivalence.
  std::vector<std::vector<Scalar>> sample_points;
};

/// Evaluates a real-coefficient polynomial at a double point.
double eval_real(const Poly& p, const Eigen::VectorXd& x);

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> points;
};

/// Classic fixed-step RK4. Throws DivergenceError when the state leaves the
/// finite range, reporting the last valid time.
Trajectory integrate_flow(const VectorField& xi, const Eigen::VectorXd& x0, double t_max,
                          int steps);

struct TransportReport {
  struct Checkpoint {
    double t;
    double deviation;  // normalized least-squares residual, max over frame vectors
  };
  struct StartPointReport {
    Eigen::VectorXd start;
    std::vector<Checkpoint> checkpoints;
    double max_deviation = 0.0;
  };
  std::vector<StartPointReport> per_start;
  double max_deviation = 0.0;
};

/// Integrates the variational equation dJ/dt = Dxi(x(t)) J alongside the
/// flow, pushes the frame vectors forward and measures at every step how far
/// the transported vectors leave the span of the distribution at the flowed
/// point (least-squares residual over vector magnitude).
TransportReport transport_frame(const VectorField& xi, const std::vector<VectorField>& frame,
                                const std::vector<Eigen::VectorXd>& start_points, double t_max,
                                int steps);

struct BracketConditionResult {
  bool holds = false;
  std::size_t frame_index = 0, sample_index = 0;
  std::optional<std::vector<Scalar>> bracket_value;

  explicit operator bool() const { return holds; }
};

/// Exact pointwise test of [xi, s_a](x) in span(frame(x)) at every sample.
BracketConditionResult bracket_condition(const VectorField& xi,
                                         const std::vector<VectorField>& frame,
                                         const std::vector<std::vector<Scalar>>& sample_points);

struct Prop1Result {
  bool holds = false;
  std::optional<Scalar> failing_t;
  std::optional<LieValuedOneForm> residual;  // Phi_t^*A - A + d(phase) at failing t

  explicit operator bool() const { return holds; }
};

/// Finite (closed-form) flow version of the adaptedness condition for
/// abelian structure algebras. The flow map is supplied as polynomials in
/// the chart coordinates plus a trailing time variable; its defining
/// identities (identity at t = 0, the flow equation of xi) are verified
/// exactly before use. For each t the check is the exact identity
///   Phi_t^*A - A + d(gamma_t) == 0,
/// gamma_t(x) = integral over [0,t] of psi along the flow through x.
Prop1Result check_prop1_polyflow(const Connection& eta, const VectorField& xi,
                                 const PolyMap& flow_map, const LieValuedFunction& lift_vert,
                                 const std::vector<Scalar>& t_values);

}  // namespace equiconn

#endif
