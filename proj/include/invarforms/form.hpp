#pragma once

#include "invarforms/scalar.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace invarforms {

/// Generator layout. Complex frames of rank n carry 2n generators: bits
/// 0..n-1 are phi^1..phi^n, bits n..2n-1 are their conjugates. Real frames of
/// dimension n carry e^1..e^n on bits 0..n-1.
struct Frame {
  bool complex = true;
  int n = 0;

  static Frame complex_rank(int n) { return {true, n}; }
  static Frame real_dim(int n) { return {false, n}; }

  int gens() const { return complex ? 2 * n : n; }
  std::uint32_t top_mask() const { return gens() == 32 ? ~0u : ((1u << gens()) - 1u); }
  friend bool operator==(const Frame&, const Frame&) = default;
};

using Mono = std::uint32_t;

int popcount(Mono m);
/// Sign of e^a ^ e^b relative to the canonical monomial a|b; 0 if they overlap.
int wedge_sign(Mono a, Mono b);

/// Labels such as "12b3" (phi^{1 2 3bar}), "b12", "e12" for real frames, "1" for
/// the unit 0-form.
std::string monomial_label(const Frame& f, Mono m);
/// Inverse of monomial_label; throws std::invalid_argument on bad input.
Mono parse_monomial_label(const Frame& f, const std::string& label);

/// Canonical basis of degree k: masks ordered lexicographically by index list.
std::vector<Mono> basis(const Frame& f, int k);
/// Basis of the (p,q) piece of a complex frame, ordered as in basis().
std::vector<Mono> basis(const Frame& f, int p, int q);
/// Holomorphic and antiholomorphic counts of a monomial.
std::pair<int, int> bidegree(const Frame& f, Mono m);

class Form {
public:
  using Terms = std::map<Mono, Scalar>;

  Form() = default;
  explicit Form(Frame f) : frame_(f) {}

  static Form unit(Frame f, Scalar c = Scalar(1));
  static Form monomial(Frame f, Mono m, Scalar c = Scalar(1));
  /// Generator by bit index.
  static Form generator(Frame f, int bit) { return monomial(f, Mono{1} << bit); }
  /// phi^j (1-based) of a complex frame.
  static Form phi(Frame f, int j) { return generator(f, j - 1); }
  static Form cphi(Frame f, int j) { return generator(f, f.n + j - 1); }

  const Frame& frame() const { return frame_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Degree of a homogeneous form; -1 for zero; throws for mixed degree.
  int degree() const;
  bool is_homogeneous() const;
  Scalar coefficient(Mono m) const;
  void add_term(Mono m, const Scalar& c);
  bool is_constant() const;
  std::set<Var> variables() const;

  Form operator-() const;
  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form& operator*=(const Scalar& s);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const Scalar& s, Form a) { return a *= s; }
  friend Form operator*(Form a, const Scalar& s) { return a *= s; }
  friend bool operator==(const Form& a, const Form& b) { return a.frame_ == b.frame_ && a.terms_ == b.terms_; }

  Form substitute(const std::map<Var, Scalar>& values) const;

  /// DSL text: "2*phi1^cphi2-i*r2*e3".
  std::string to_string() const;

private:
  Frame frame_;
  Terms terms_;
};

/// Throws std::invalid_argument when the frames differ.
Form wedge(const Form& a, const Form& b);
Form power(const Form& a, int k);
Form conjugate_form(const Form& a);
bool is_real_form(const Form& a);
Form bidegree_project(const Form& a, int p, int q);
Form degree_project(const Form& a, int k);
/// Coefficient of the canonical top monomial; throws on wrong degree.
Scalar top_coefficient(const Form& a);
/// Interior product with the dual vector of generator `bit`.
Form interior(const Form& a, int bit);

}  // namespace invarforms
