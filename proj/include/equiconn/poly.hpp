#ifndef EQUICONN_POLY_HPP
#define EQUICONN_POLY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "equiconn/rational.hpp"

namespace equiconn {

/// Sparse multivariate polynomial over the Gaussian rationals.
///
/// Canonical form is maintained at all times: the term map never stores a
/// zero coefficient and every exponent vector has length num_vars(), so
/// operator== is structural equality and "p == 0" is "terms().empty()".
class Poly {
 public:
  using Exponents = std::vector<std::uint32_t>;
  using TermMap = std::map<Exponents, Scalar>;

  explicit Poly(std::size_t num_vars) : num_vars_(num_vars) {}

  static Poly zero(std::size_t num_vars) { return Poly(num_vars); }
  static Poly constant(std::size_t num_vars, const Scalar& c);
  /// The coordinate polynomial z_index.
  static Poly variable(std::size_t num_vars, std::size_t index);
  static Poly monomial(std::size_t num_vars, Exponents exp, const Scalar& c);

  std::size_t num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the all-zeros exponent vector.
  Scalar constant_term() const;
  /// Coefficient of a given exponent vector (zero if absent).
  Scalar coefficient(const Exponents& exp) const;
  std::size_t total_degree() const;  // 0 for the zero polynomial
  /// Largest exponent of one variable across all terms.
  std::uint32_t degree_in(std::size_t var) const;
  /// True if no term uses the given variable.
  bool independent_of(std::size_t var) const;

  /// Adds c * z^exp, erasing the term if the sum cancels.
  void add_term(const Exponents& exp, const Scalar& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Scalar& c, const Poly& p);
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  /// Lexicographic on (num_vars, term map); canonical deterministic order.
  friend bool operator<(const Poly& a, const Poly& b);

  /// Exact formal partial derivative.
  Poly diff(std::size_t var) const;
  /// Exact antiderivative in one variable with zero constant of integration.
  Poly antiderivative(std::size_t var) const;
  Scalar eval(const std::vector<Scalar>& point) const;
  /// Substitutes subs[k] for variable k; all subs share one variable count.
  Poly compose(const std::vector<Poly>& subs) const;
  /// Fixes one variable to a value; the variable count is unchanged.
  Poly substitute(std::size_t var, const Scalar& value) const;
  /// Removes an unused variable slot (throws if the variable occurs).
  Poly drop_var(std::size_t var) const;

  std::string str(const std::vector<std::string>& var_names) const;

 private:
  std::size_t num_vars_;
  TermMap terms_;
};

}  // namespace equiconn

#endif
