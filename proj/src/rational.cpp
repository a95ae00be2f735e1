#include "equiconn/rational.hpp"

#include <sstream>

namespace equiconn {

namespace {

mpq_class make_canonical(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw ValidationError("scalar denominator must be nonzero");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// Renders one rational as "n" or "n/d".
std::string rat_str(const mpq_class& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

}  // namespace

Scalar::Scalar(long re_num, long re_den, long im_num, long im_den)
    : re_(make_canonical(re_num, re_den)), im_(make_canonical(im_num, im_den)) {}

Scalar Scalar::from_parts(const mpz_class& re_num, const mpz_class& re_den,
                          const mpz_class& im_num, const mpz_class& im_den) {
  return Scalar(make_canonical(re_num, re_den), make_canonical(im_num, im_den));
}

double Scalar::to_double() const {
  if (!is_real()) throw UnsupportedError("complex scalar has no double value: " + str());
  return re_.get_d();
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw ValidationError("division by zero scalar");
  mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / norm;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / norm;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string Scalar::str() const {
  if (im_ == 0) return rat_str(re_);
  std::string im_part;
  if (im_ == 1) {
    im_part = "i";
  } else if (im_ == -1) {
    im_part = "-i";
  } else {
    im_part = rat_str(im_) + "i";
  }
  if (re_ == 0) return im_part;
  if (im_ > 0) return rat_str(re_) + "+" + im_part;
  return rat_str(re_) + im_part;  // im_part already carries the minus sign
}

}  // namespace equiconn
