#ifndef EQUICONN_RATIONAL_HPP
#define EQUICONN_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "equiconn/errors.hpp"

namespace equiconn {

/// Gaussian rational a + b*i with a, b exact rationals in lowest terms.
/// The coefficient field for every polynomial in the library; all arithmetic
/// is exact, so zero tests are decidable.
class Scalar {
 public:
  Scalar() : re_(0), im_(0) {}
  Scalar(long re) : re_(re), im_(0) {}  // NOLINT: implicit on purpose
  Scalar(long re_num, long re_den, long im_num = 0, long im_den = 1);
  Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar i() { return Scalar(0, 1, 1, 1); }
  /// Builds from the four integer parts; denominators must be nonzero.
  static Scalar from_parts(const mpz_class& re_num, const mpz_class& re_den,
                           const mpz_class& im_num, const mpz_class& im_den);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }
  mpz_class re_num() const { return re_.get_num(); }
  mpz_class re_den() const { return re_.get_den(); }
  mpz_class im_num() const { return im_.get_num(); }
  mpz_class im_den() const { return im_.get_den(); }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }

  /// Real part as double (requires is_real()); used only by the flow harness.
  double to_double() const;

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Total order (re lexicographically before im); used only for canonical
  /// term ordering and pivot tie-breaks, it has no analytic meaning.
  friend bool operator<(const Scalar& a, const Scalar& b) {
    int c = cmp(a.re_, b.re_);
    if (c != 0) return c < 0;
    return cmp(a.im_, b.im_) < 0;
  }

  std::string str() const;

 private:
  mpq_class re_, im_;
};

}  // namespace equiconn

#endif
