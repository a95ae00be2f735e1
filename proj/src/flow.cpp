#include "equiconn/flow.hpp"

#include <cmath>

#include "equiconn/errors.hpp"
#include "equiconn/linear.hpp"

namespace equiconn {

namespace {

void require_real(const Poly& p, const char* what) {
  for (const auto& [exp, c] : p.terms())
    if (!c.is_real())
      throw UnsupportedError(std::string(what) + " must have real coefficients for numeric flows");
}

Eigen::VectorXd eval_field(const VectorField& xi, const Eigen::VectorXd& x) {
  Eigen::VectorXd out(xi.components.size());
  for (std::size_t k = 0; k < xi.components.size(); ++k) out[k] = eval_real(xi.components[k], x);
  return out;
}

// Jacobian of xi at x from the exact formal derivatives.
Eigen::MatrixXd eval_jacobian(const std::vector<std::vector<Poly>>& dxi,
                              const Eigen::VectorXd& x) {
  const std::size_t n = dxi.size();
  Eigen::MatrixXd J(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) J(k, i) = eval_real(dxi[k][i], x);
  return J;
}

}  // namespace

double eval_real(const Poly& p, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != p.num_vars())
    throw DimensionError("numeric evaluation point has wrong dimension");
  double acc = 0.0;
  for (const auto& [exp, c] : p.terms()) {
    double term = c.to_double();
    for (std::size_t k = 0; k < p.num_vars(); ++k)
      for (std::uint32_t e = 0; e < exp[k]; ++e) term *= x[static_cast<Eigen::Index>(k)];
    acc += term;
  }
  return acc;
}

Trajectory integrate_flow(const VectorField& xi, const Eigen::VectorXd& x0, double t_max,
                          int steps) {
  if (steps < 1) throw ValidationError("integrator needs at least one step");
  if (!(t_max > 0)) throw ValidationError("t_max must be positive");
  for (const auto& p : xi.components) require_real(p, "flow field");

  const double h = t_max / steps;
  Trajectory traj;
  traj.times.reserve(steps + 1);
  traj.points.reserve(steps + 1);
  Eigen::VectorXd x = x0;
  traj.times.push_back(0.0);
  traj.points.push_back(x);
  for (int s = 0; s < steps; ++s) {
    const Eigen::VectorXd k1 = eval_field(xi, x);
    const Eigen::VectorXd k2 = eval_field(xi, x + 0.5 * h * k1);
    const Eigen::VectorXd k3 = eval_field(xi, x + 0.5 * h * k2);
    const Eigen::VectorXd k4 = eval_field(xi, x + h * k3);
    x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!x.allFinite())
      throw DivergenceError("flow diverged (non-finite state)", traj.times.back());
    traj.times.push_back((s + 1) * h);
    traj.points.push_back(x);
  }
  return traj;
}

TransportReport transport_frame(const VectorField& xi, const std::vector<VectorField>& frame,
                                const std::vector<Eigen::VectorXd>& start_points, double t_max,
                                int steps) {
  if (frame.empty()) throw ValidationError("transport needs a nonempty distribution frame");
  if (steps < 1) throw ValidationError("integrator needs at least one step");
  for (const auto& p : xi.components) require_real(p, "flow field");
  for (const auto& s : frame)
    for (const auto& p : s.components) require_real(p, "distribution frame");

  const std::size_t n = xi.components.size();
  const std::size_t k = frame.size();

  // Exact formal Jacobian entries, evaluated numerically along the flow.
  std::vector<std::vector<Poly>> dxi(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < n; ++i) dxi[a].push_back(xi.components[a].diff(i));

  auto frame_matrix = [&](const Eigen::VectorXd& x) {
    Eigen::MatrixXd M(n, k);
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t a = 0; a < n; ++a) M(a, l) = eval_real(frame[l].components[a], x);
    return M;
  };

  const double h = t_max / steps;
  TransportReport report;
  for (const auto& x0 : start_points) {
    TransportReport::StartPointReport spr;
    spr.start = x0;

    Eigen::VectorXd x = x0;
    Eigen::MatrixXd J = Eigen::MatrixXd::Identity(n, n);

    auto record = [&](double t) {
      const Eigen::MatrixXd M = frame_matrix(x);
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
      qr.setThreshold(1e-9);
      if (static_cast<std::size_t>(qr.rank()) < k)
        throw DegenerateFrameError("distribution frame is rank-deficient at t = " +
                                   std::to_string(t));
      double worst = 0.0;
      const Eigen::MatrixXd M0 = frame_matrix(x0);
      for (std::size_t l = 0; l < k; ++l) {
        const Eigen::VectorXd w = J * M0.col(l);
        const double norm = w.norm();
        if (norm == 0.0)
          throw DegenerateFrameError("transported frame vector vanished at t = " +
                                     std::to_string(t));
        const Eigen::VectorXd fit = qr.solve(w);
        worst = std::max(worst, (M * fit - w).norm() / norm);
      }
      spr.checkpoints.push_back({t, worst});
      spr.max_deviation = std::max(spr.max_deviation, worst);
    };

    record(0.0);
    for (int s = 0; s < steps; ++s) {
      // RK4 on the combined state (x, J); the variational stages use the
      // Jacobian of xi at the matching x stages.
      const Eigen::VectorXd k1 = eval_field(xi, x);
      const Eigen::MatrixXd K1 = eval_jacobian(dxi, x) * J;
      const Eigen::VectorXd k2 = eval_field(xi, x + 0.5 * h * k1);
      const Eigen::MatrixXd K2 = eval_jacobian(dxi, x + 0.5 * h * k1) * (J + 0.5 * h * K1);
      const Eigen::VectorXd k3 = eval_field(xi, x + 0.5 * h * k2);
      const Eigen::MatrixXd K3 = eval_jacobian(dxi, x + 0.5 * h * k2) * (J + 0.5 * h * K2);
      const Eigen::VectorXd k4 = eval_field(xi, x + h * k3);
      const Eigen::MatrixXd K4 = eval_jacobian(dxi, x + h * k3) * (J + h * K3);
      x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      J = J + (h / 6.0) * (K1 + 2.0 * K2 + 2.0 * K3 + K4);
      if (!x.allFinite() || !J.allFinite())
        throw DivergenceError("transport diverged (non-finite state)", s * h);
      record((s + 1) * h);
    }
    report.max_deviation = std::max(report.max_deviation, spr.max_deviation);
    report.per_start.push_back(std::move(spr));
  }
  return report;
}

BracketConditionResult bracket_condition(const VectorField& xi,
                                         const std::vector<VectorField>& frame,
                                         const std::vector<std::vector<Scalar>>& sample_points) {
  if (frame.empty()) throw ValidationError("bracket condition needs a nonempty frame");
  BracketConditionResult res;
  for (std::size_t s = 0; s < sample_points.size(); ++s) {
    const auto& point = sample_points[s];
    std::vector<std::vector<Scalar>> cols;
    cols.reserve(frame.size());
    for (const auto& f : frame) cols.push_back(f.eval(point));
    if (rank_exact(cols) != frame.size())
      throw DegenerateFrameError("frame is rank-deficient at sample point " + std::to_string(s));
    for (std::size_t a = 0; a < frame.size(); ++a) {
      const std::vector<Scalar> br = vf_bracket(xi, frame[a]).eval(point);
      if (!solve_in_span(cols, br)) {
        res.holds = false;
        res.frame_index = a;
        res.sample_index = s;
        res.bracket_value = br;
        return res;
      }
    }
  }
  res.holds = true;
  return res;
}

Prop1Result check_prop1_polyflow(const Connection& eta, const VectorField& xi,
                                 const PolyMap& flow_map, const LieValuedFunction& lift_vert,
                                 const std::vector<Scalar>& t_values) {
  if (!eta.algebra()->is_abelian())
    throw UnsupportedError("finite polynomial-flow check supports abelian structure algebras only");
  const ChartPtr chart = eta.chart();
  if (!same_chart(*chart, *flow_map.target))
    throw DimensionError("flow map target chart differs from the connection chart");
  const std::size_t n = chart->dim();
  if (flow_map.source->dim() != n + 1)
    throw DimensionError("flow map must depend on the chart coordinates plus one time variable");
  if (!same_chart(*xi.chart, *chart))
    throw DimensionError("flow field lives on the wrong chart");
  if (lift_vert.num_vars() != n)
    throw DimensionError("vertical lift part has wrong variable count");
  const std::size_t t_var = n;  // time is the trailing variable

  // Phi(x, 0) must be the identity.
  for (std::size_t kk = 0; kk < n; ++kk) {
    Poly at0 = flow_map.components[kk].substitute(t_var, Scalar(0));
    if (at0 != Poly::variable(n + 1, kk))
      throw InvalidFlowError("flow map is not the identity at t = 0 (component " +
                             std::to_string(kk) + ")");
  }
  // d/dt Phi = xi o Phi, exactly as polynomials in (x, t).
  for (std::size_t kk = 0; kk < n; ++kk) {
    Poly lhs = flow_map.components[kk].diff(t_var);
    Poly rhs = xi.components[kk].compose(flow_map.components);
    if (lhs != rhs)
      throw InvalidFlowError("flow map does not satisfy the flow equation of the field "
                             "(component " + std::to_string(kk) + ")");
  }

  // Accumulated vertical phase gamma(x, t) = int_0^t psi(Phi(x, s)) ds,
  // computed exactly: antiderivative in t of psi o Phi, normalized at t = 0.
  const std::size_t dim_h = eta.algebra()->dim();
  std::vector<Poly> gamma;
  gamma.reserve(dim_h);
  for (std::size_t c = 0; c < dim_h; ++c) {
    Poly pulled = lift_vert.components[c].compose(flow_map.components);
    Poly anti = pulled.antiderivative(t_var);
    gamma.push_back(anti - anti.substitute(t_var, Scalar(0)));
  }

  Prop1Result res;
  for (const Scalar& t : t_values) {
    // Freeze the time slice of the flow map and of the phase.
    std::vector<Poly> comps;
    comps.reserve(n);
    for (std::size_t kk = 0; kk < n; ++kk)
      comps.push_back(flow_map.components[kk].substitute(t_var, t).drop_var(t_var));
    const PolyMap phi_t = make_poly_map(chart, chart, std::move(comps));

    LieValuedFunction gamma_t = LieValuedFunction::zero(eta.algebra(), n);
    for (std::size_t c = 0; c < dim_h; ++c)
      gamma_t.components[c] = gamma[c].substitute(t_var, t).drop_var(t_var);

    LieValuedOneForm residual =
        pullback_oneform(eta.form, phi_t) - eta.form + differential(gamma_t, chart);
    if (!residual.is_zero()) {
      res.holds = false;
      res.failing_t = t;
      res.residual = std::move(residual);
      return res;
    }
  }
  res.holds = true;
  return res;
}

}  // namespace equiconn
