#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace invarforms {

/// Exact element of Q(i): re + i*im with arbitrary-precision rational parts.
class GaussRational {
public:
  GaussRational() = default;
  GaussRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussRational i() { return {0, 1}; }
  /// Parses "p", "p/q" (no imaginary part).
  static GaussRational parse_rational(std::string_view text);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  GaussRational conj() const { return {re_, -im_}; }
  /// |z|^2, always a nonnegative rational.
  mpq_class norm2() const { return re_ * re_ + im_ * im_; }

  GaussRational operator-() const { return {-re_, -im_}; }
  GaussRational& operator+=(const GaussRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o);
  /// Throws std::domain_error on division by zero.
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }

  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  /// Arbitrary total order (lexicographic on re, im); used only for canonical containers.
  friend std::strong_ordering operator<=>(const GaussRational& a, const GaussRational& b) {
    if (int c = cmp(a.re_, b.re_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (int c = cmp(a.im_, b.im_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Exact textual form: "3/2", "-i", "(1/2+3*i)".
  std::string to_string() const;

private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::string rational_to_string(const mpq_class& q);

}  // namespace invarforms
