#ifndef EQUICONN_CHART_HPP
#define EQUICONN_CHART_HPP

#include <memory>
#include <string>
#include <vector>

#include "equiconn/lie.hpp"

namespace equiconn {

/// A coordinate chart: just a dimension and distinct coordinate labels.
struct Chart {
  explicit Chart(std::vector<std::string> labels);

  std::size_t dim() const { return coord_labels.size(); }
  std::vector<std::string> coord_labels;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::vector<std::string> labels);
bool same_chart(const Chart& a, const Chart& b);

/// Sign convention for the vertical part of brackets of invariant fields.
/// The default (minus) reads vertical fields in the right-invariant
/// trivialization; every operation that brackets vertical parts takes this
/// as an explicit parameter so both settings stay testable.
enum class VerticalSign : int { plus = +1, minus = -1 };

constexpr VerticalSign kDefaultVerticalSign = VerticalSign::minus;

inline Scalar sign_scalar(VerticalSign s) { return Scalar(static_cast<int>(s) >= 0 ? 1 : -1); }

/// Polynomial vector field V = sum_i V_i d/dz_i on a chart.
struct VectorField {
  ChartPtr chart;
  std::vector<Poly> components;

  static VectorField zero(ChartPtr chart);
  /// The coordinate field d/dz_index.
  static VectorField coordinate(ChartPtr chart, std::size_t index);

  bool is_zero() const;
  std::vector<Scalar> eval(const std::vector<Scalar>& point) const;
  std::string str() const;

  VectorField operator-() const;
  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const Poly& p, const VectorField& v);
  friend VectorField operator*(const Scalar& c, const VectorField& v);
  friend bool operator==(const VectorField& a, const VectorField& b);
  friend bool operator!=(const VectorField& a, const VectorField& b) { return !(a == b); }
};

/// Lie-algebra valued 1-form omega = sum_i omega_i dz_i.
struct LieValuedOneForm {
  ChartPtr chart;
  LieAlgebraPtr algebra;
  std::vector<LieValuedFunction> components;

  static LieValuedOneForm zero(ChartPtr chart, LieAlgebraPtr algebra);
  bool is_zero() const;
  std::string str() const;

  LieValuedOneForm operator-() const;
  LieValuedOneForm& operator+=(const LieValuedOneForm& o);
  LieValuedOneForm& operator-=(const LieValuedOneForm& o);
  friend LieValuedOneForm operator+(LieValuedOneForm a, const LieValuedOneForm& b) {
    return a += b;
  }
  friend LieValuedOneForm operator-(LieValuedOneForm a, const LieValuedOneForm& b) {
    return a -= b;
  }
  friend bool operator==(const LieValuedOneForm& a, const LieValuedOneForm& b);
  friend bool operator!=(const LieValuedOneForm& a, const LieValuedOneForm& b) {
    return !(a == b);
  }
};

/// Lie-algebra valued 2-form, components stored for i < j only.
struct LieValuedTwoForm {
  ChartPtr chart;
  LieAlgebraPtr algebra;
  std::vector<LieValuedFunction> upper;  // packed strict upper triangle

  static LieValuedTwoForm zero(ChartPtr chart, LieAlgebraPtr algebra);

  static std::size_t pack_index(std::size_t dim, std::size_t i, std::size_t j);
  /// Component with antisymmetric extension: at(j,i) == -at(i,j), at(i,i) == 0.
  LieValuedFunction at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, LieValuedFunction value);  // requires i < j

  bool is_zero() const;
  std::string str() const;
  friend bool operator==(const LieValuedTwoForm& a, const LieValuedTwoForm& b);
  friend bool operator!=(const LieValuedTwoForm& a, const LieValuedTwoForm& b) {
    return !(a == b);
  }
};

/// H-invariant vector field on the trivialized total space, stored as the
/// pair (base field, vertical Lie-algebra valued part).
struct InvariantField {
  VectorField base;
  LieValuedFunction vert;

  bool is_zero() const { return base.is_zero() && vert.is_zero(); }
  InvariantField operator-() const { return {-base, -vert}; }
  friend InvariantField operator+(const InvariantField& a, const InvariantField& b) {
    return {a.base + b.base, a.vert + b.vert};
  }
  friend InvariantField operator-(const InvariantField& a, const InvariantField& b) {
    return {a.base - b.base, a.vert - b.vert};
  }
  friend bool operator==(const InvariantField& a, const InvariantField& b) {
    return a.base == b.base && a.vert == b.vert;
  }
};

/// Polynomial map between charts, one component per target coordinate.
struct PolyMap {
  ChartPtr source;
  ChartPtr target;
  std::vector<Poly> components;

  static PolyMap identity(ChartPtr chart);
  /// this after inner: (this o inner)(x) = this(inner(x)).
  PolyMap after(const PolyMap& inner) const;
};

PolyMap make_poly_map(ChartPtr source, ChartPtr target, std::vector<Poly> components);

/// [V,W]_k = sum_i (V_i d_i W_k - W_i d_i V_k).
VectorField vf_bracket(const VectorField& V, const VectorField& W);

/// Componentwise derivation Z . psi of a Lie-valued function along a field.
LieValuedFunction derive(const VectorField& Z, const LieValuedFunction& psi);

/// Bracket of invariant fields in the pair encoding:
/// base [Z1,Z2], vertical Z1.psi2 - Z2.psi1 + sigma [psi1,psi2].
InvariantField invariant_bracket(const InvariantField& a, const InvariantField& b,
                                 VerticalSign sigma = kDefaultVerticalSign);

/// (d omega)_{ij} = d_i omega_j - d_j omega_i.
LieValuedTwoForm exterior_derivative(const LieValuedOneForm& omega);

/// df = sum_i (d_i f) dz_i, the degree-0 exterior derivative.
LieValuedOneForm differential(const LieValuedFunction& f, ChartPtr chart);

/// (i_W Omega)_j = sum_i W_i Omega_{ij}.
LieValuedOneForm contract(const LieValuedTwoForm& omega2, const VectorField& W);

/// omega(W) = sum_i W_i omega_i.
LieValuedFunction apply_oneform(const LieValuedOneForm& omega, const VectorField& W);

/// (Phi^* omega)_i = sum_j (omega_j o Phi) d_i Phi_j.
LieValuedOneForm pullback_oneform(const LieValuedOneForm& omega, const PolyMap& phi);

}  // namespace equiconn

#endif
