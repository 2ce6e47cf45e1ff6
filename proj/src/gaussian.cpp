#include "invarforms/gaussian.hpp"

#include <stdexcept>

namespace invarforms {

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  mpq_class den = o.norm2();
  if (sgn(den) == 0) throw std::domain_error("division by zero in Q(i)");
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / den;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational GaussRational::parse_rational(std::string_view text) {
  mpq_class q;
  if (q.set_str(std::string(text), 10) != 0) throw std::invalid_argument("bad rational: " + std::string(text));
  q.canonicalize();
  if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  return GaussRational(q);
}

std::string rational_to_string(const mpq_class& q) { return q.get_str(); }

std::string GaussRational::to_string() const {
  if (is_real()) return rational_to_string(re_);
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = rational_to_string(im_) + "*i";
  }
  if (sgn(re_) == 0) return imag;
  std::string out = "(" + rational_to_string(re_);
  if (sgn(im_) > 0) out += "+";
  return out + imag + ")";
}

}  // namespace invarforms
