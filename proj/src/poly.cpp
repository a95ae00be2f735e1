#include "equiconn/poly.hpp"

#include <algorithm>
#include <sstream>

namespace equiconn {

namespace {

void check_same_vars(const Poly& a, const Poly& b, const char* op) {
  if (a.num_vars() != b.num_vars())
    throw DimensionError(std::string("polynomial ") + op + ": operands have " +
                         std::to_string(a.num_vars()) + " and " + std::to_string(b.num_vars()) +
                         " variables");
}

}  // namespace

Poly Poly::constant(std::size_t num_vars, const Scalar& c) {
  Poly p(num_vars);
  p.add_term(Exponents(num_vars, 0), c);
  return p;
}

Poly Poly::variable(std::size_t num_vars, std::size_t index) {
  if (index >= num_vars)
    throw DimensionError("variable index " + std::to_string(index) + " out of range for " +
                         std::to_string(num_vars) + " variables");
  Exponents e(num_vars, 0);
  e[index] = 1;
  return monomial(num_vars, std::move(e), Scalar(1));
}

Poly Poly::monomial(std::size_t num_vars, Exponents exp, const Scalar& c) {
  if (exp.size() != num_vars) throw DimensionError("monomial exponent vector has wrong length");
  Poly p(num_vars);
  p.add_term(exp, c);
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 &&
         terms_.begin()->first == Exponents(num_vars_, 0);
}

Scalar Poly::constant_term() const { return coefficient(Exponents(num_vars_, 0)); }

Scalar Poly::coefficient(const Exponents& exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? Scalar(0) : it->second;
}

std::size_t Poly::total_degree() const {
  std::size_t deg = 0;
  for (const auto& [exp, c] : terms_) {
    std::size_t d = 0;
    for (auto e : exp) d += e;
    deg = std::max(deg, d);
  }
  return deg;
}

std::uint32_t Poly::degree_in(std::size_t var) const {
  std::uint32_t deg = 0;
  for (const auto& [exp, c] : terms_) deg = std::max(deg, exp[var]);
  return deg;
}

bool Poly::independent_of(std::size_t var) const { return degree_in(var) == 0; }

void Poly::add_term(const Exponents& exp, const Scalar& c) {
  if (exp.size() != num_vars_) throw DimensionError("term exponent vector has wrong length");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(exp, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r(num_vars_);
  for (const auto& [exp, c] : terms_) r.terms_.emplace(exp, -c);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  check_same_vars(*this, o, "add");
  for (const auto& [exp, c] : o.terms_) add_term(exp, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_same_vars(*this, o, "sub");
  for (const auto& [exp, c] : o.terms_) add_term(exp, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  check_same_vars(a, b, "mul");
  Poly r(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Poly::Exponents e(a.num_vars_);
      for (std::size_t k = 0; k < a.num_vars_; ++k) e[k] = ea[k] + eb[k];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Poly operator*(const Scalar& c, const Poly& p) {
  Poly r(p.num_vars_);
  if (c.is_zero()) return r;
  for (const auto& [exp, pc] : p.terms_) r.terms_.emplace(exp, c * pc);
  return r;
}

bool operator<(const Poly& a, const Poly& b) {
  if (a.num_vars_ != b.num_vars_) return a.num_vars_ < b.num_vars_;
  return std::lexicographical_compare(
      a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
      [](const auto& ta, const auto& tb) {
        if (ta.first != tb.first) return ta.first < tb.first;
        return ta.second < tb.second;
      });
}

Poly Poly::diff(std::size_t var) const {
  if (var >= num_vars_)
    throw DimensionError("derivative index " + std::to_string(var) + " out of range");
  Poly r(num_vars_);
  for (const auto& [exp, c] : terms_) {
    if (exp[var] == 0) continue;
    Exponents e = exp;
    Scalar factor(static_cast<long>(e[var]));
    e[var] -= 1;
    r.add_term(e, factor * c);
  }
  return r;
}

Poly Poly::antiderivative(std::size_t var) const {
  if (var >= num_vars_)
    throw DimensionError("antiderivative index " + std::to_string(var) + " out of range");
  Poly r(num_vars_);
  for (const auto& [exp, c] : terms_) {
    Exponents e = exp;
    e[var] += 1;
    r.add_term(e, c / Scalar(static_cast<long>(e[var])));
  }
  return r;
}

Scalar Poly::eval(const std::vector<Scalar>& point) const {
  if (point.size() != num_vars_)
    throw DimensionError("evaluation point has " + std::to_string(point.size()) +
                         " coordinates, expected " + std::to_string(num_vars_));
  Scalar acc(0);
  for (const auto& [exp, c] : terms_) {
    Scalar term = c;
    for (std::size_t k = 0; k < num_vars_; ++k) {
      for (std::uint32_t e = 0; e < exp[k]; ++e) term *= point[k];
    }
    acc += term;
  }
  return acc;
}

Poly Poly::compose(const std::vector<Poly>& subs) const {
  if (subs.size() != num_vars_)
    throw DimensionError("compose: got " + std::to_string(subs.size()) + " substitutions for " +
                         std::to_string(num_vars_) + " variables");
  std::size_t target_vars = subs.empty() ? 0 : subs[0].num_vars();
  for (const auto& s : subs) check_same_vars(subs[0], s, "compose");
  Poly acc(target_vars);
  for (const auto& [exp, c] : terms_) {
    Poly term = Poly::constant(target_vars, c);
    for (std::size_t k = 0; k < num_vars_; ++k) {
      for (std::uint32_t e = 0; e < exp[k]; ++e) term = term * subs[k];
    }
    acc += term;
  }
  return acc;
}

Poly Poly::substitute(std::size_t var, const Scalar& value) const {
  if (var >= num_vars_)
    throw DimensionError("substitute index " + std::to_string(var) + " out of range");
  Poly r(num_vars_);
  for (const auto& [exp, c] : terms_) {
    Scalar factor = c;
    for (std::uint32_t e = 0; e < exp[var]; ++e) factor *= value;
    Exponents reduced = exp;
    reduced[var] = 0;
    r.add_term(reduced, factor);
  }
  return r;
}

Poly Poly::drop_var(std::size_t var) const {
  if (!independent_of(var)) throw DimensionError("drop_var: polynomial still uses the variable");
  Poly r(num_vars_ - 1);
  for (const auto& [exp, c] : terms_) {
    Exponents e;
    e.reserve(num_vars_ - 1);
    for (std::size_t k = 0; k < num_vars_; ++k)
      if (k != var) e.push_back(exp[k]);
    r.add_term(e, c);
  }
  return r;
}

std::string Poly::str(const std::vector<std::string>& var_names) const {
  if (var_names.size() != num_vars_)
    throw DimensionError("str: wrong number of variable names");
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [exp, c] : terms_) {
    std::string monom;
    for (std::size_t k = 0; k < num_vars_; ++k) {
      if (exp[k] == 0) continue;
      if (!monom.empty()) monom += "*";
      monom += var_names[k];
      if (exp[k] > 1) monom += "^" + std::to_string(exp[k]);
    }
    std::string coeff = c.str();
    bool negative_real = c.is_real() && coeff.size() > 0 && coeff[0] == '-';
    if (!first) {
      os << (negative_real ? " - " : " + ");
      if (negative_real) coeff = coeff.substr(1);
    }
    bool needs_parens = !c.is_real() || coeff.find('/') != std::string::npos;
    if (monom.empty()) {
      os << (needs_parens && !first ? "(" + coeff + ")" : coeff);
    } else if (coeff == "1") {
      os << monom;
    } else if (coeff == "-1" && first) {
      os << "-" << monom;
    } else {
      os << (needs_parens ? "(" + coeff + ")" : coeff) << "*" << monom;
    }
    first = false;
  }
  return os.str();
}

}  // namespace equiconn
