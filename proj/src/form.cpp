#include "invarforms/form.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace invarforms {

int popcount(Mono m) { return std::popcount(m); }

int wedge_sign(Mono a, Mono b) {
  if (a & b) return 0;
  // inversions: pairs (i in a, j in b) with i > j
  int inv = 0;
  for (Mono rest = b; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    Mono above = (j >= 31) ? 0u : (a >> (j + 1));
    inv += std::popcount(above);
  }
  return (inv & 1) ? -1 : 1;
}

std::string monomial_label(const Frame& f, Mono m) {
  if (m == 0) return "1";
  std::string out;
  if (!f.complex) {
    out = "e";
    for (int b = 0; b < f.n; ++b)
      if (m & (Mono{1} << b)) out += std::to_string(b + 1);
    return out;
  }
  for (int b = 0; b < f.n; ++b)
    if (m & (Mono{1} << b)) out += std::to_string(b + 1);
  bool bar = false;
  for (int b = 0; b < f.n; ++b) {
    if (m & (Mono{1} << (f.n + b))) {
      if (!bar) out += "b";
      bar = true;
      out += std::to_string(b + 1);
    }
  }
  return out;
}

Mono parse_monomial_label(const Frame& f, const std::string& label) {
  if (label == "1") return 0;
  Mono m = 0;
  std::size_t pos = 0;
  bool bar = false;
  if (!f.complex) {
    if (label.empty() || label[0] != 'e') throw std::invalid_argument("bad label: " + label);
    pos = 1;
  }
  for (; pos < label.size(); ++pos) {
    char ch = label[pos];
    if (f.complex && ch == 'b' && !bar) {
      bar = true;
      continue;
    }
    if (ch < '1' || ch > '9') throw std::invalid_argument("bad label: " + label);
    int idx = ch - '1';
    if (idx >= f.n) throw std::invalid_argument("index out of range in label: " + label);
    Mono bit = Mono{1} << (bar ? f.n + idx : idx);
    if (m & bit) throw std::invalid_argument("repeated index in label: " + label);
    m |= bit;
  }
  return m;
}

namespace {

void combos(int gens, int k, int start, Mono cur, std::vector<Mono>& out) {
  if (k == 0) {
    out.push_back(cur);
    return;
  }
  for (int b = start; b <= gens - k; ++b) combos(gens, k - 1, b + 1, cur | (Mono{1} << b), out);
}

}  // namespace

std::vector<Mono> basis(const Frame& f, int k) {
  std::vector<Mono> out;
  if (k < 0 || k > f.gens()) return out;
  combos(f.gens(), k, 0, 0, out);
  return out;
}

std::pair<int, int> bidegree(const Frame& f, Mono m) {
  if (!f.complex) return {popcount(m), 0};
  Mono holo_mask = (Mono{1} << f.n) - 1;
  return {popcount(m & holo_mask), popcount(m >> f.n)};
}

std::vector<Mono> basis(const Frame& f, int p, int q) {
  std::vector<Mono> out;
  for (Mono m : basis(f, p + q))
    if (bidegree(f, m) == std::pair{p, q}) out.push_back(m);
  return out;
}

Form Form::unit(Frame f, Scalar c) { return monomial(f, 0, std::move(c)); }

Form Form::monomial(Frame f, Mono m, Scalar c) {
  Form out(f);
  out.add_term(m, c);
  return out;
}

int Form::degree() const {
  if (terms_.empty()) return -1;
  int d = popcount(terms_.begin()->first);
  for (const auto& [m, c] : terms_)
    if (popcount(m) != d) throw std::logic_error("form is not homogeneous: " + to_string());
  return d;
}

bool Form::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = popcount(terms_.begin()->first);
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return popcount(t.first) == d; });
}

Scalar Form::coefficient(Mono m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

void Form::add_term(Mono m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool Form::is_constant() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_constant(); });
}

std::set<Var> Form::variables() const {
  std::set<Var> out;
  for (const auto& [m, c] : terms_) {
    auto v = c.variables();
    out.insert(v.begin(), v.end());
  }
  return out;
}

Form Form::operator-() const {
  Form out(frame_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

static void check_frames(const Frame& a, const Frame& b) {
  if (!(a == b)) throw std::invalid_argument("forms live on different frames");
}

Form& Form::operator+=(const Form& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) frame_ = o.frame_;
  check_frames(frame_, o.frame_);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Form& Form::operator-=(const Form& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) frame_ = o.frame_;
  check_frames(frame_, o.frame_);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Form& Form::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (it->second.is_zero()) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

Form Form::substitute(const std::map<Var, Scalar>& values) const {
  Form out(frame_);
  for (const auto& [m, c] : terms_) out.add_term(m, c.substitute(values));
  return out;
}

std::string Form::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string gens;
    for (int b = 0; b < frame_.gens(); ++b) {
      if (!(m & (Mono{1} << b))) continue;
      if (!gens.empty()) gens += "^";
      if (!frame_.complex) {
        gens += "e" + std::to_string(b + 1);
      } else if (b < frame_.n) {
        gens += "phi" + std::to_string(b + 1);
      } else {
        gens += "cphi" + std::to_string(b - frame_.n + 1);
      }
    }
    std::string coeff = c.to_string();
    std::string term;
    if (gens.empty()) {
      term = "(" + coeff + ")";
    } else if (coeff == "1") {
      term = gens;
    } else if (coeff == "-1") {
      term = "-" + gens;
    } else {
      term = "(" + coeff + ")*" + gens;
    }
    if (!first && term[0] != '-') out += "+";
    out += term;
    first = false;
  }
  return out;
}

Form wedge(const Form& a, const Form& b) {
  if (a.is_zero() || b.is_zero()) return Form(a.is_zero() ? b.frame() : a.frame());
  check_frames(a.frame(), b.frame());
  Form out(a.frame());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      Scalar c = ca * cb;
      out.add_term(ma | mb, s > 0 ? c : -c);
    }
  }
  return out;
}

Form power(const Form& a, int k) {
  Form out = Form::unit(a.frame());
  for (int j = 0; j < k; ++j) out = wedge(out, a);
  return out;
}

Form conjugate_form(const Form& a) {
  const Frame& f = a.frame();
  Form out(f);
  for (const auto& [m, c] : a.terms()) {
    if (!f.complex) {
      out.add_term(m, c.conj());
      continue;
    }
    // conj of the ordered product: swap each generator across the block, then
    // re-sort. Build incrementally so the wedge sign does the bookkeeping.
    Mono acc = 0;
    int sign = 1;
    for (int b = 0; b < f.gens(); ++b) {
      if (!(m & (Mono{1} << b))) continue;
      int nb = b < f.n ? b + f.n : b - f.n;
      Mono g = Mono{1} << nb;
      sign *= wedge_sign(acc, g);
      acc |= g;
    }
    Scalar cc = c.conj();
    out.add_term(acc, sign > 0 ? cc : -cc);
  }
  return out;
}

bool is_real_form(const Form& a) { return conjugate_form(a) == a; }

Form bidegree_project(const Form& a, int p, int q) {
  Form out(a.frame());
  for (const auto& [m, c] : a.terms())
    if (bidegree(a.frame(), m) == std::pair{p, q}) out.add_term(m, c);
  return out;
}

Form degree_project(const Form& a, int k) {
  Form out(a.frame());
  for (const auto& [m, c] : a.terms())
    if (popcount(m) == k) out.add_term(m, c);
  return out;
}

Scalar top_coefficient(const Form& a) {
  const Frame& f = a.frame();
  for (const auto& [m, c] : a.terms())
    if (popcount(m) != f.gens()) throw std::invalid_argument("top_coefficient needs a top-degree form");
  return a.coefficient(f.top_mask());
}

Form interior(const Form& a, int bit) {
  Form out(a.frame());
  Mono g = Mono{1} << bit;
  for (const auto& [m, c] : a.terms()) {
    if (!(m & g)) continue;
    int below = popcount(m & (g - 1));
    out.add_term(m & ~g, (below & 1) ? -c : c);
  }
  return out;
}

}  // namespace invarforms
