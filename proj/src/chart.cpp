#include "equiconn/chart.hpp"

#include <set>
#include <sstream>

#include "equiconn/errors.hpp"

namespace equiconn {

namespace {

void check_chart(const ChartPtr& a, const ChartPtr& b, const char* op) {
  if (!a || !b || !same_chart(*a, *b))
    throw DimensionError(std::string(op) + ": operands live on different charts");
}

void check_components(std::size_t got, std::size_t want, const char* what) {
  if (got != want)
    throw DimensionError(std::string(what) + ": got " + std::to_string(got) +
                         " components, expected " + std::to_string(want));
}

}  // namespace

Chart::Chart(std::vector<std::string> labels) : coord_labels(std::move(labels)) {
  if (coord_labels.empty()) throw ValidationError("chart needs at least one coordinate");
  std::set<std::string> seen(coord_labels.begin(), coord_labels.end());
  if (seen.size() != coord_labels.size())
    throw ValidationError("chart coordinate labels must be distinct");
}

ChartPtr make_chart(std::vector<std::string> labels) {
  return std::make_shared<const Chart>(std::move(labels));
}

bool same_chart(const Chart& a, const Chart& b) { return a.coord_labels == b.coord_labels; }

VectorField VectorField::zero(ChartPtr chart) {
  VectorField v;
  v.components.assign(chart->dim(), Poly::zero(chart->dim()));
  v.chart = std::move(chart);
  return v;
}

VectorField VectorField::coordinate(ChartPtr chart, std::size_t index) {
  VectorField v = zero(chart);
  v.components[index] = Poly::constant(v.chart->dim(), Scalar(1));
  return v;
}

bool VectorField::is_zero() const {
  for (const auto& p : components)
    if (!p.is_zero()) return false;
  return true;
}

std::vector<Scalar> VectorField::eval(const std::vector<Scalar>& point) const {
  std::vector<Scalar> out;
  out.reserve(components.size());
  for (const auto& p : components) out.push_back(p.eval(point));
  return out;
}

std::string VectorField::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << components[i].str(chart->coord_labels) << ")*d/d" << chart->coord_labels[i];
    first = false;
  }
  return first ? "0" : os.str();
}

VectorField VectorField::operator-() const {
  VectorField out = *this;
  for (auto& p : out.components) p = -p;
  return out;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  check_chart(chart, o.chart, "vector field add");
  for (std::size_t i = 0; i < components.size(); ++i) components[i] += o.components[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  check_chart(chart, o.chart, "vector field sub");
  for (std::size_t i = 0; i < components.size(); ++i) components[i] -= o.components[i];
  return *this;
}

VectorField operator*(const Poly& p, const VectorField& v) {
  VectorField out = v;
  for (auto& comp : out.components) comp = p * comp;
  return out;
}

VectorField operator*(const Scalar& c, const VectorField& v) {
  VectorField out = v;
  for (auto& comp : out.components) comp = c * comp;
  return out;
}

bool operator==(const VectorField& a, const VectorField& b) {
  return a.chart && b.chart && same_chart(*a.chart, *b.chart) && a.components == b.components;
}

LieValuedOneForm LieValuedOneForm::zero(ChartPtr chart, LieAlgebraPtr algebra) {
  LieValuedOneForm w;
  w.components.assign(chart->dim(), LieValuedFunction::zero(algebra, chart->dim()));
  w.chart = std::move(chart);
  w.algebra = std::move(algebra);
  return w;
}

bool LieValuedOneForm::is_zero() const {
  for (const auto& f : components)
    if (!f.is_zero()) return false;
  return true;
}

std::string LieValuedOneForm::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << components[i].str(chart->coord_labels) << ") d" << chart->coord_labels[i];
    first = false;
  }
  return first ? "0" : os.str();
}

LieValuedOneForm LieValuedOneForm::operator-() const {
  LieValuedOneForm out = *this;
  for (auto& f : out.components) f = -f;
  return out;
}

LieValuedOneForm& LieValuedOneForm::operator+=(const LieValuedOneForm& o) {
  check_chart(chart, o.chart, "one-form add");
  for (std::size_t i = 0; i < components.size(); ++i) components[i] += o.components[i];
  return *this;
}

LieValuedOneForm& LieValuedOneForm::operator-=(const LieValuedOneForm& o) {
  check_chart(chart, o.chart, "one-form sub");
  for (std::size_t i = 0; i < components.size(); ++i) components[i] -= o.components[i];
  return *this;
}

bool operator==(const LieValuedOneForm& a, const LieValuedOneForm& b) {
  return a.chart && b.chart && same_chart(*a.chart, *b.chart) && a.components == b.components;
}

LieValuedTwoForm LieValuedTwoForm::zero(ChartPtr chart, LieAlgebraPtr algebra) {
  LieValuedTwoForm w;
  const std::size_t n = chart->dim();
  w.upper.assign(n * (n - 1) / 2, LieValuedFunction::zero(algebra, n));
  w.chart = std::move(chart);
  w.algebra = std::move(algebra);
  return w;
}

std::size_t LieValuedTwoForm::pack_index(std::size_t dim, std::size_t i, std::size_t j) {
  if (i >= j || j >= dim) throw DimensionError("two-form index pair out of range");
  return i * (2 * dim - i - 1) / 2 + (j - i - 1);
}

LieValuedFunction LieValuedTwoForm::at(std::size_t i, std::size_t j) const {
  const std::size_t n = chart->dim();
  if (i == j) return LieValuedFunction::zero(algebra, n);
  if (i < j) return upper[pack_index(n, i, j)];
  return -upper[pack_index(n, j, i)];
}

void LieValuedTwoForm::set(std::size_t i, std::size_t j, LieValuedFunction value) {
  upper[pack_index(chart->dim(), i, j)] = std::move(value);
}

bool LieValuedTwoForm::is_zero() const {
  for (const auto& f : upper)
    if (!f.is_zero()) return false;
  return true;
}

std::string LieValuedTwoForm::str() const {
  std::ostringstream os;
  const std::size_t n = chart->dim();
  bool first = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto f = at(i, j);
      if (f.is_zero()) continue;
      if (!first) os << " + ";
      os << "(" << f.str(chart->coord_labels) << ") d" << chart->coord_labels[i] << "^d"
         << chart->coord_labels[j];
      first = false;
    }
  return first ? "0" : os.str();
}

bool operator==(const LieValuedTwoForm& a, const LieValuedTwoForm& b) {
  return a.chart && b.chart && same_chart(*a.chart, *b.chart) && a.upper == b.upper;
}

PolyMap make_poly_map(ChartPtr source, ChartPtr target, std::vector<Poly> components) {
  check_components(components.size(), target->dim(), "polynomial map");
  for (const auto& p : components)
    if (p.num_vars() != source->dim())
      throw DimensionError("polynomial map component has wrong variable count");
  return PolyMap{std::move(source), std::move(target), std::move(components)};
}

PolyMap PolyMap::identity(ChartPtr chart) {
  std::vector<Poly> comps;
  for (std::size_t i = 0; i < chart->dim(); ++i)
    comps.push_back(Poly::variable(chart->dim(), i));
  return PolyMap{chart, chart, std::move(comps)};
}

PolyMap PolyMap::after(const PolyMap& inner) const {
  check_chart(source, inner.target, "map composition");
  std::vector<Poly> comps;
  comps.reserve(components.size());
  for (const auto& p : components) comps.push_back(p.compose(inner.components));
  return PolyMap{inner.source, target, std::move(comps)};
}

VectorField vf_bracket(const VectorField& V, const VectorField& W) {
  check_chart(V.chart, W.chart, "vf_bracket");
  const std::size_t n = V.chart->dim();
  VectorField out = VectorField::zero(V.chart);
  for (std::size_t k = 0; k < n; ++k) {
    Poly acc(n);
    for (std::size_t i = 0; i < n; ++i) {
      acc += V.components[i] * W.components[k].diff(i);
      acc -= W.components[i] * V.components[k].diff(i);
    }
    out.components[k] = std::move(acc);
  }
  return out;
}

LieValuedFunction derive(const VectorField& Z, const LieValuedFunction& psi) {
  if (Z.chart->dim() != psi.num_vars())
    throw DimensionError("derive: field and function variable counts differ");
  LieValuedFunction out = LieValuedFunction::zero(psi.algebra, psi.num_vars());
  for (std::size_t k = 0; k < psi.components.size(); ++k) {
    Poly acc(psi.num_vars());
    for (std::size_t i = 0; i < Z.components.size(); ++i)
      acc += Z.components[i] * psi.components[k].diff(i);
    out.components[k] = std::move(acc);
  }
  return out;
}

InvariantField invariant_bracket(const InvariantField& a, const InvariantField& b,
                                 VerticalSign sigma) {
  InvariantField out;
  out.base = vf_bracket(a.base, b.base);
  out.vert = derive(a.base, b.vert) - derive(b.base, a.vert) +
             sign_scalar(sigma) * lie_bracket(a.vert, b.vert);
  return out;
}

LieValuedTwoForm exterior_derivative(const LieValuedOneForm& omega) {
  const std::size_t n = omega.chart->dim();
  LieValuedTwoForm out = LieValuedTwoForm::zero(omega.chart, omega.algebra);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      LieValuedFunction f = LieValuedFunction::zero(omega.algebra, n);
      for (std::size_t k = 0; k < f.components.size(); ++k)
        f.components[k] = omega.components[j].components[k].diff(i) -
                          omega.components[i].components[k].diff(j);
      out.set(i, j, std::move(f));
    }
  return out;
}

LieValuedOneForm differential(const LieValuedFunction& f, ChartPtr chart) {
  if (chart->dim() != f.num_vars())
    throw DimensionError("differential: chart and function variable counts differ");
  LieValuedOneForm out = LieValuedOneForm::zero(chart, f.algebra);
  for (std::size_t i = 0; i < chart->dim(); ++i)
    for (std::size_t k = 0; k < f.components.size(); ++k)
      out.components[i].components[k] = f.components[k].diff(i);
  return out;
}

LieValuedOneForm contract(const LieValuedTwoForm& omega2, const VectorField& W) {
  check_chart(omega2.chart, W.chart, "contract");
  const std::size_t n = omega2.chart->dim();
  LieValuedOneForm out = LieValuedOneForm::zero(omega2.chart, omega2.algebra);
  for (std::size_t j = 0; j < n; ++j) {
    LieValuedFunction acc = LieValuedFunction::zero(omega2.algebra, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j || W.components[i].is_zero()) continue;
      acc += W.components[i] * omega2.at(i, j);
    }
    out.components[j] = std::move(acc);
  }
  return out;
}

LieValuedFunction apply_oneform(const LieValuedOneForm& omega, const VectorField& W) {
  check_chart(omega.chart, W.chart, "apply one-form");
  LieValuedFunction acc = LieValuedFunction::zero(omega.algebra, omega.chart->dim());
  for (std::size_t i = 0; i < omega.components.size(); ++i)
    acc += W.components[i] * omega.components[i];
  return acc;
}

LieValuedOneForm pullback_oneform(const LieValuedOneForm& omega, const PolyMap& phi) {
  check_chart(omega.chart, phi.target, "pullback");
  const std::size_t m = phi.source->dim();
  LieValuedOneForm out = LieValuedOneForm::zero(phi.source, omega.algebra);
  for (std::size_t j = 0; j < omega.components.size(); ++j) {
    // omega_j o Phi, componentwise in the Lie algebra
    LieValuedFunction pulled = LieValuedFunction::zero(omega.algebra, m);
    for (std::size_t k = 0; k < pulled.components.size(); ++k)
      pulled.components[k] = omega.components[j].components[k].compose(phi.components);
    for (std::size_t i = 0; i < m; ++i)
      out.components[i] += phi.components[j].diff(i) * pulled;
  }
  return out;
}

}  // namespace equiconn
