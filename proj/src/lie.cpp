#include "equiconn/lie.hpp"

#include <sstream>

#include "equiconn/errors.hpp"

namespace equiconn {

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> basis_labels)
    : name_(std::move(name)), basis_labels_(std::move(basis_labels)) {
  if (basis_labels_.empty()) throw ValidationError("Lie algebra needs at least one basis element");
  c_.assign(dim() * dim() * dim(), Scalar(0));
}

std::size_t LieAlgebra::index(std::size_t i, std::size_t j, std::size_t k) const {
  const std::size_t d = dim();
  if (i >= d || j >= d || k >= d) throw DimensionError("structure constant index out of range");
  return (i * d + j) * d + k;
}

const Scalar& LieAlgebra::c(std::size_t i, std::size_t j, std::size_t k) const {
  return c_[index(i, j, k)];
}

void LieAlgebra::set_bracket_coefficient(std::size_t i, std::size_t j, std::size_t k,
                                         const Scalar& value) {
  if (i == j && !value.is_zero())
    throw ValidationError("bracket [e_i, e_i] must vanish (antisymmetry)");
  c_[index(i, j, k)] = value;
  c_[index(j, i, k)] = -value;
}

std::vector<Scalar> LieAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
  std::vector<Scalar> out(dim());
  for (std::size_t k = 0; k < dim(); ++k) out[k] = c(i, j, k);
  return out;
}

bool LieAlgebra::is_abelian() const {
  for (const auto& v : c_)
    if (!v.is_zero()) return false;
  return true;
}

LieAlgebra LieAlgebra::abelian(std::size_t n, const std::string& name) {
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < n; ++k) labels.push_back("e" + std::to_string(k + 1));
  return LieAlgebra(name, std::move(labels));
}

LieAlgebra LieAlgebra::sl2() {
  LieAlgebra alg("sl2", {"e", "f", "h"});
  alg.set_bracket_coefficient(0, 1, 2, Scalar(1));   // [e,f] = h
  alg.set_bracket_coefficient(2, 0, 0, Scalar(2));   // [h,e] = 2e
  alg.set_bracket_coefficient(2, 1, 1, Scalar(-2));  // [h,f] = -2f
  return alg;
}

LieAlgebra LieAlgebra::heisenberg() {
  LieAlgebra alg("heisenberg", {"x", "y", "z"});
  alg.set_bracket_coefficient(0, 1, 2, Scalar(1));  // [x,y] = z
  return alg;
}

LieAlgebra LieAlgebra::gl(std::size_t r) {
  if (r == 0 || r > 3) throw UnsupportedError("gl(r) table generator supports 1 <= r <= 3");
  std::vector<std::string> labels;
  for (std::size_t a = 1; a <= r; ++a)
    for (std::size_t b = 1; b <= r; ++b)
      labels.push_back("E" + std::to_string(a) + std::to_string(b));
  LieAlgebra alg("gl" + std::to_string(r), std::move(labels));
  // [E_ab, E_cd] = delta_bc E_ad - delta_da E_cb
  auto idx = [r](std::size_t a, std::size_t b) { return (a - 1) * r + (b - 1); };
  for (std::size_t a = 1; a <= r; ++a)
    for (std::size_t b = 1; b <= r; ++b)
      for (std::size_t c = 1; c <= r; ++c)
        for (std::size_t d = 1; d <= r; ++d) {
          const std::size_t i = idx(a, b), j = idx(c, d);
          if (i >= j) continue;  // fill upper triangle; mirror is automatic
          std::vector<Scalar> coords(r * r, Scalar(0));
          if (b == c) coords[idx(a, d)] += Scalar(1);
          if (d == a) coords[idx(c, b)] -= Scalar(1);
          for (std::size_t k = 0; k < r * r; ++k)
            if (!coords[k].is_zero()) alg.set_bracket_coefficient(i, j, k, coords[k]);
        }
  return alg;
}

LieAlgebra LieAlgebra::affine_line() {
  LieAlgebra alg("affine", {"v1", "v2"});
  alg.set_bracket_coefficient(0, 1, 1, Scalar(1));  // [v1,v2] = v2
  return alg;
}

bool same_algebra(const LieAlgebra& a, const LieAlgebra& b) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < a.dim(); ++k)
        if (a.c(i, j, k) != b.c(i, j, k)) return false;
  return true;
}

bool check_antisymmetry(const LieAlgebra& alg) {
  const std::size_t d = alg.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (alg.c(i, j, k) != -alg.c(j, i, k)) return false;
  return true;
}

bool check_jacobi(const LieAlgebra& alg) {
  const std::size_t d = alg.dim();
  // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0, expanded in basis.
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t m = 0; m < d; ++m) {
          Scalar acc(0);
          for (std::size_t l = 0; l < d; ++l) {
            acc += alg.c(i, j, l) * alg.c(l, k, m);
            acc += alg.c(j, k, l) * alg.c(l, i, m);
            acc += alg.c(k, i, l) * alg.c(l, j, m);
          }
          if (!acc.is_zero()) return false;
        }
  return true;
}

bool LieValue::is_zero() const {
  for (const auto& v : coords)
    if (!v.is_zero()) return false;
  return true;
}

LieValue lie_bracket(const LieValue& a, const LieValue& b) {
  if (!a.algebra || !b.algebra || !same_algebra(*a.algebra, *b.algebra))
    throw DimensionError("lie_bracket: values live in different algebras");
  const std::size_t d = a.algebra->dim();
  LieValue out{a.algebra, std::vector<Scalar>(d, Scalar(0))};
  for (std::size_t i = 0; i < d; ++i) {
    if (a.coords[i].is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (b.coords[j].is_zero()) continue;
      for (std::size_t k = 0; k < d; ++k) {
        const Scalar& c = a.algebra->c(i, j, k);
        if (!c.is_zero()) out.coords[k] += a.coords[i] * b.coords[j] * c;
      }
    }
  }
  return out;
}

void check_same_algebra(const LieValuedFunction& a, const LieValuedFunction& b, const char* op) {
  if (!a.algebra || !b.algebra || !same_algebra(*a.algebra, *b.algebra))
    throw DimensionError(std::string(op) + ": operands live in different algebras");
  if (a.num_vars() != b.num_vars())
    throw DimensionError(std::string(op) + ": operands have different variable counts");
}

LieValuedFunction LieValuedFunction::zero(LieAlgebraPtr algebra, std::size_t num_vars) {
  LieValuedFunction f;
  f.components.assign(algebra->dim(), Poly::zero(num_vars));
  f.algebra = std::move(algebra);
  return f;
}

LieValuedFunction LieValuedFunction::constant(LieAlgebraPtr algebra, std::size_t num_vars,
                                              const LieValue& value) {
  if (value.coords.size() != algebra->dim())
    throw DimensionError("constant: value coordinates do not match the algebra dimension");
  LieValuedFunction f = zero(std::move(algebra), num_vars);
  for (std::size_t k = 0; k < f.components.size(); ++k)
    f.components[k] = Poly::constant(num_vars, value.coords[k]);
  return f;
}

std::size_t LieValuedFunction::num_vars() const {
  return components.empty() ? 0 : components[0].num_vars();
}

bool LieValuedFunction::is_zero() const {
  for (const auto& p : components)
    if (!p.is_zero()) return false;
  return true;
}

LieValue LieValuedFunction::eval(const std::vector<Scalar>& point) const {
  LieValue out{algebra, {}};
  out.coords.reserve(components.size());
  for (const auto& p : components) out.coords.push_back(p.eval(point));
  return out;
}

std::string LieValuedFunction::str(const std::vector<std::string>& var_names) const {
  if (algebra->dim() == 1) return components[0].str(var_names);
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < components.size(); ++k) {
    if (components[k].is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << components[k].str(var_names) << ")*" << algebra->basis_labels()[k];
    first = false;
  }
  return first ? "0" : os.str();
}

LieValuedFunction LieValuedFunction::operator-() const {
  LieValuedFunction out = *this;
  for (auto& p : out.components) p = -p;
  return out;
}

LieValuedFunction& LieValuedFunction::operator+=(const LieValuedFunction& o) {
  check_same_algebra(*this, o, "add");
  for (std::size_t k = 0; k < components.size(); ++k) components[k] += o.components[k];
  return *this;
}

LieValuedFunction& LieValuedFunction::operator-=(const LieValuedFunction& o) {
  check_same_algebra(*this, o, "sub");
  for (std::size_t k = 0; k < components.size(); ++k) components[k] -= o.components[k];
  return *this;
}

LieValuedFunction operator*(const Poly& p, const LieValuedFunction& f) {
  LieValuedFunction out = f;
  for (auto& comp : out.components) comp = p * comp;
  return out;
}

LieValuedFunction operator*(const Scalar& c, const LieValuedFunction& f) {
  LieValuedFunction out = f;
  for (auto& comp : out.components) comp = c * comp;
  return out;
}

bool operator==(const LieValuedFunction& a, const LieValuedFunction& b) {
  if (!a.algebra || !b.algebra || !same_algebra(*a.algebra, *b.algebra)) return false;
  return a.components == b.components;
}

LieValuedFunction lie_bracket(const LieValuedFunction& a, const LieValuedFunction& b) {
  check_same_algebra(a, b, "lie_bracket");
  const std::size_t d = a.algebra->dim();
  LieValuedFunction out = LieValuedFunction::zero(a.algebra, a.num_vars());
  for (std::size_t i = 0; i < d; ++i) {
    if (a.components[i].is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (b.components[j].is_zero()) continue;
      Poly prod = a.components[i] * b.components[j];
      for (std::size_t k = 0; k < d; ++k) {
        const Scalar& c = a.algebra->c(i, j, k);
        if (!c.is_zero()) out.components[k] += c * prod;
      }
    }
  }
  return out;
}

}  // namespace equiconn
