#pragma once

#include "invarforms/gaussian.hpp"

#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace invarforms {

/// Real indeterminates are fixed by conjugation; a complex indeterminate is the
/// pair (Holo, Anti) sharing one name, swapped by conjugation.
enum class VarKind : unsigned char { Real, Holo, Anti };

struct Var {
  std::string name;
  VarKind kind = VarKind::Real;

  static Var real(std::string n) { return {std::move(n), VarKind::Real}; }
  static Var holo(std::string n) { return {std::move(n), VarKind::Holo}; }
  static Var anti(std::string n) { return {std::move(n), VarKind::Anti}; }

  Var conj() const;
  std::string to_string() const;

  friend bool operator==(const Var&, const Var&) = default;
  friend auto operator<=>(const Var&, const Var&) = default;
};

/// Sorted (variable, exponent) list; exponents are nonzero and may be negative
/// (Laurent monomials in parameters such as 1/g).
using Monomial = std::vector<std::pair<Var, int>>;

Monomial monomial_product(const Monomial& a, const Monomial& b);
Monomial monomial_conj(const Monomial& m);

/// Laurent polynomial over Q(i) with a conjugation involution. Zero is the
/// empty term map; stored coefficients are never zero.
class Scalar {
public:
  using Terms = std::map<Monomial, GaussRational>;

  Scalar() = default;
  Scalar(GaussRational c);  // NOLINT(google-explicit-constructor)
  Scalar(long c) : Scalar(GaussRational(c)) {}  // NOLINT(google-explicit-constructor)

  static Scalar variable(const Var& v, int exponent = 1);
  static Scalar i() { return Scalar(GaussRational::i()); }
  static Scalar from_terms(Terms terms);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Throws std::logic_error when the scalar still contains indeterminates.
  GaussRational constant_value() const;
  std::set<Var> variables() const;
  bool contains(const Var& v) const;
  bool is_monomial() const { return terms_.size() == 1; }

  Scalar conj() const;
  bool is_real() const { return *this == conj(); }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }

  Scalar pow(int e) const;
  /// Inverse of a single-term scalar (Laurent monomial times nonzero constant).
  /// Throws std::domain_error otherwise: polynomials are never divided.
  Scalar inverse() const;

  /// Ring homomorphism replacing each listed indeterminate. Negative exponents
  /// require the replacement to be invertible.
  Scalar substitute(const std::map<Var, Scalar>& values) const;

  /// Parseable text, e.g. "2*r2*conj(u)^2-(1/2+i)*t".
  std::string to_string() const;

private:
  Terms terms_;
};

}  // namespace invarforms
