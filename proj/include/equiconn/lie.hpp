#ifndef EQUICONN_LIE_HPP
#define EQUICONN_LIE_HPP

#include <memory>
#include <string>
#include <vector>

#include "equiconn/poly.hpp"

namespace equiconn {

/// Finite-dimensional Lie algebra given by a basis and structure constants:
/// [e_i, e_j] = sum_k c(i,j,k) e_k. Purely abstract; no matrix realization
/// is assumed anywhere in the library.
class LieAlgebra {
 public:
  LieAlgebra(std::string name, std::vector<std::string> basis_labels);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return basis_labels_.size(); }
  const std::vector<std::string>& basis_labels() const { return basis_labels_; }

  const Scalar& c(std::size_t i, std::size_t j, std::size_t k) const;
  /// Sets c(i,j,k) and c(j,i,k) = -c(i,j,k). Rejects i == j with nonzero value.
  void set_bracket_coefficient(std::size_t i, std::size_t j, std::size_t k, const Scalar& value);

  /// Coordinates of [e_i, e_j].
  std::vector<Scalar> bracket_basis(std::size_t i, std::size_t j) const;

  bool is_abelian() const;

  // Stock tables used by tests and fixtures.
  static LieAlgebra abelian(std::size_t n, const std::string& name = "abelian");
  static LieAlgebra sl2();         // [e,f]=h, [h,e]=2e, [h,f]=-2f
  static LieAlgebra heisenberg();  // [x,y]=z
  static LieAlgebra gl(std::size_t r);  // basis E_{ab}, r <= 3
  static LieAlgebra affine_line();      // [v1,v2]=v2

 private:
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const;

  std::string name_;
  std::vector<std::string> basis_labels_;
  std::vector<Scalar> c_;  // dense dim^3 table
};

using LieAlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// Structural comparison (name is ignored; the table is what matters).
bool same_algebra(const LieAlgebra& a, const LieAlgebra& b);

/// True iff c(i,j,k) == -c(j,i,k) for all triples. Always true for tables
/// built through set_bracket_coefficient; guards hand-assembled input.
bool check_antisymmetry(const LieAlgebra& alg);

/// True iff the Jacobi identity holds exactly on all basis triples.
bool check_jacobi(const LieAlgebra& alg);

/// One element of a Lie algebra in basis coordinates.
struct LieValue {
  LieAlgebraPtr algebra;
  std::vector<Scalar> coords;

  bool is_zero() const;
};

LieValue lie_bracket(const LieValue& a, const LieValue& b);

/// Polynomial function with values in a Lie algebra, one Poly per basis
/// element; the chart form of a section of the adjoint bundle.
struct LieValuedFunction {
  LieAlgebraPtr algebra;
  std::vector<Poly> components;

  static LieValuedFunction zero(LieAlgebraPtr algebra, std::size_t num_vars);
  static LieValuedFunction constant(LieAlgebraPtr algebra, std::size_t num_vars,
                                    const LieValue& value);

  std::size_t num_vars() const;
  bool is_zero() const;
  LieValue eval(const std::vector<Scalar>& point) const;
  std::string str(const std::vector<std::string>& var_names) const;

  LieValuedFunction operator-() const;
  LieValuedFunction& operator+=(const LieValuedFunction& o);
  LieValuedFunction& operator-=(const LieValuedFunction& o);
  friend LieValuedFunction operator+(LieValuedFunction a, const LieValuedFunction& b) {
    return a += b;
  }
  friend LieValuedFunction operator-(LieValuedFunction a, const LieValuedFunction& b) {
    return a -= b;
  }
  friend LieValuedFunction operator*(const Poly& p, const LieValuedFunction& f);
  friend LieValuedFunction operator*(const Scalar& c, const LieValuedFunction& f);
  friend bool operator==(const LieValuedFunction& a, const LieValuedFunction& b);
  friend bool operator!=(const LieValuedFunction& a, const LieValuedFunction& b) {
    return !(a == b);
  }
};

/// Pointwise bracket: [a, b]_k = sum_{i,j} a_i b_j c(i,j,k).
LieValuedFunction lie_bracket(const LieValuedFunction& a, const LieValuedFunction& b);

void check_same_algebra(const LieValuedFunction& a, const LieValuedFunction& b, const char* op);

}  // namespace equiconn

#endif
