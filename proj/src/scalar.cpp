#include "invarforms/scalar.hpp"

#include <algorithm>
#include <stdexcept>

namespace invarforms {

Var Var::conj() const {
  switch (kind) {
    case VarKind::Holo: return {name, VarKind::Anti};
    case VarKind::Anti: return {name, VarKind::Holo};
    case VarKind::Real: break;
  }
  return *this;
}

std::string Var::to_string() const { return kind == VarKind::Anti ? "conj(" + name + ")" : name; }

Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      out.push_back(*ib++);
    } else {
      int e = ia->second + ib->second;
      if (e != 0) out.emplace_back(ia->first, e);
      ++ia;
      ++ib;
    }
  }
  return out;
}

Monomial monomial_conj(const Monomial& m) {
  Monomial out;
  out.reserve(m.size());
  for (const auto& [v, e] : m) out.emplace_back(v.conj(), e);
  std::sort(out.begin(), out.end());
  return out;
}

Scalar::Scalar(GaussRational c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, std::move(c));
}

Scalar Scalar::variable(const Var& v, int exponent) {
  Scalar s;
  if (exponent == 0) return Scalar(1);
  s.terms_.emplace(Monomial{{v, exponent}}, GaussRational(1));
  return s;
}

Scalar Scalar::from_terms(Terms terms) {
  Scalar s;
  for (auto& [m, c] : terms)
    if (!c.is_zero()) s.terms_.emplace(m, std::move(c));
  return s;
}

bool Scalar::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

GaussRational Scalar::constant_value() const {
  if (terms_.empty()) return {};
  if (!is_constant()) throw std::logic_error("scalar is not constant: " + to_string());
  return terms_.begin()->second;
}

std::set<Var> Scalar::variables() const {
  std::set<Var> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) out.insert(v);
  return out;
}

bool Scalar::contains(const Var& v) const {
  for (const auto& [m, c] : terms_)
    for (const auto& [w, e] : m)
      if (w == v) return true;
  return false;
}

Scalar Scalar::conj() const {
  Scalar s;
  for (const auto& [m, c] : terms_) s.terms_.emplace(monomial_conj(m), c.conj());
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  for (auto& [m, c] : s.terms_) c = -c;
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  for (const auto& [m, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  for (const auto& [m, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(m, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = monomial_product(ma, mb);
      GaussRational c = ca * cb;
      auto [it, inserted] = out.terms_.emplace(std::move(m), c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) out.terms_.erase(it);
      }
    }
  }
  return out;
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar Scalar::inverse() const {
  if (terms_.size() != 1) throw std::domain_error("only single-term scalars are invertible: " + to_string());
  const auto& [m, c] = *terms_.begin();
  Monomial inv;
  for (const auto& [v, e] : m) inv.emplace_back(v, -e);
  Scalar s;
  s.terms_.emplace(std::move(inv), GaussRational(1) / c);
  return s;
}

Scalar Scalar::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar result(1);
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Scalar Scalar::substitute(const std::map<Var, Scalar>& values) const {
  if (values.empty()) return *this;
  Scalar out;
  for (const auto& [m, c] : terms_) {
    Scalar term(c);
    Monomial kept;
    for (const auto& [v, e] : m) {
      auto it = values.find(v);
      if (it == values.end()) {
        kept.emplace_back(v, e);
      } else {
        term *= it->second.pow(e);
      }
    }
    if (!kept.empty()) {
      Scalar k;
      k.terms_.emplace(std::move(kept), GaussRational(1));
      term *= k;
    }
    out += term;
  }
  return out;
}

std::string Scalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string factors;
    for (const auto& [v, e] : m) {
      if (!factors.empty()) factors += "*";
      factors += v.to_string();
      if (e != 1) factors += "^" + std::to_string(e);
    }
    std::string coeff;
    bool negative = false;
    if (c.is_real()) {
      negative = sgn(c.re()) < 0;
      mpq_class a = abs(c.re());
      if (!(a == 1 && !factors.empty())) coeff = rational_to_string(a);
    } else if (sgn(c.re()) == 0) {
      negative = sgn(c.im()) < 0;
      mpq_class a = abs(c.im());
      coeff = (a == 1) ? "i" : rational_to_string(a) + "*i";
    } else {
      coeff = c.to_string();
    }
    std::string term = coeff;
    if (!factors.empty()) term = coeff.empty() ? factors : coeff + "*" + factors;
    if (first) {
      out += negative ? "-" + term : term;
    } else {
      out += (negative ? "-" : "+") + term;
    }
    first = false;
  }
  return out;
}

}  // namespace invarforms
