#include "invarforms/feasibility.hpp"

#include "invarforms/linalg.hpp"
#include "invarforms/operators.hpp"
#include "invarforms/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <stdexcept>

namespace invarforms {

std::string mode_name(StructureMode m) {
  switch (m) {
    case StructureMode::LcK: return "lcK";
    case StructureMode::Lcb: return "lcb";
    case StructureMode::Lcht: return "lcht";
    case StructureMode::Balanced: return "balanced";
    case StructureMode::Pluriclosed: return "pluriclosed";
    case StructureMode::KGauduchon: return "kGauduchon";
    case StructureMode::Kahler: return "kahler";
  }
  return "";
}

StructureMode parse_mode(const std::string& name) {
  std::string l;
  for (char c : name) l += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (l == "lck") return StructureMode::LcK;
  if (l == "lcb") return StructureMode::Lcb;
  if (l == "lcht") return StructureMode::Lcht;
  if (l == "balanced") return StructureMode::Balanced;
  if (l == "pluriclosed" || l == "skt") return StructureMode::Pluriclosed;
  if (l == "kgauduchon" || l == "gauduchon") return StructureMode::KGauduchon;
  if (l == "kahler" || l == "kaehler") return StructureMode::Kahler;
  throw std::invalid_argument("unknown structure: " + name);
}

namespace {

std::size_t pair_index(int j, int k) {  // 1-based, j < k
  return static_cast<std::size_t>((k - 1) * (k - 2) / 2 + (j - 1));
}

std::string pick(const std::vector<std::string>& v, std::size_t i, const std::string& fallback) {
  return i < v.size() ? v[i] : fallback;
}

}  // namespace

std::string NamingScheme::diag_name(int j) const {
  return pick(diag, static_cast<std::size_t>(j - 1), "h" + std::to_string(j) + std::to_string(j));
}
std::string NamingScheme::offdiag_name(int j, int k) const {
  return pick(offdiag, pair_index(j, k), "u" + std::to_string(j) + std::to_string(k));
}
std::string NamingScheme::twozero_name(int j, int k) const {
  return pick(twozero, pair_index(j, k), "w" + std::to_string(j) + std::to_string(k));
}
std::string NamingScheme::theta_name(int j) const {
  return pick(theta, static_cast<std::size_t>(j - 1), "a" + std::to_string(j));
}

NamingScheme NamingScheme::nil() { return {{"r2", "s2", "t2"}, {"u", "z", "v"}, {"A", "B", "C"}, {"alpha", "beta", "gamma"}}; }
NamingScheme NamingScheme::solv() { return {{"r2", "s2", "t2"}, {"u", "z", "v"}, {"L", "M", "N"}, {"a", "b", "c"}}; }
NamingScheme NamingScheme::surface() { return {{"A", "B"}, {"D"}, {"L"}, {"a", "b"}}; }
NamingScheme NamingScheme::nakamura() { return {{"A", "B", "C"}, {"D", "E", "F"}, {"L", "M", "N"}, {"a", "b", "c"}}; }

AnsatzOptions fixture_options(const std::string& name) {
  AnsatzOptions o;
  if (name.rfind("h", 0) == 0 && name.find("heis") != 0) {
    o.names = NamingScheme::nil();
    o.reduced_hermitian = name == "h3_Jminus" || name == "h9";
  } else if (name == "nakamura") {
    o.names = NamingScheme::nakamura();
  } else if (name == "torus4" || name == "hyperelliptic" || name.rfind("inoue", 0) == 0 ||
             name.rfind("kodaira", 0) == 0) {
    o.names = NamingScheme::surface();
  }
  return o;
}

SymbolTable GenericAnsatz::symbols() const {
  SymbolTable t = spec.symbols();
  for (const auto& u : unknowns) t.add(u.var());
  for (const auto& u : theta_unknowns) t.add(u.var());
  return t;
}

std::size_t GenericAnsatz::real_dimension() const {
  std::size_t d = 0;
  for (const auto& u : unknowns) d += u.complex ? 2 : 1;
  return d;
}

const Unknown* GenericAnsatz::find(const std::string& name) const {
  for (const auto& u : unknowns)
    if (u.name == name) return &u;
  for (const auto& u : theta_unknowns)
    if (u.name == name) return &u;
  return nullptr;
}

namespace {

bool uses_theta(StructureMode m) {
  return m == StructureMode::LcK || m == StructureMode::Lcb || m == StructureMode::Lcht;
}

/// Coefficient of a single indeterminate in a linear scalar with constant
/// coefficients; nullopt when the scalar is not of that shape.
std::optional<std::map<Var, GaussRational>> linear_coefficients(const Scalar& p) {
  std::map<Var, GaussRational> out;
  for (const auto& [mono, c] : p.terms()) {
    if (mono.size() != 1 || mono[0].second != 1) return std::nullopt;
    out[mono[0].first] += c;
  }
  return out;
}

/// Solves dθ = 0 over the reals and records the simple consequences as
/// substitutions (a = 0, a real); anything else stays an equation.
void solve_theta(GenericAnsatz& a, const std::vector<std::string>& all_names) {
  const AlgebraSpec& s = a.spec;
  Form dth = exterior_d(s, a.theta_generic);
  std::vector<Scalar> pending;
  for (const auto& [m, c] : dth.terms()) pending.push_back(c);
  // single-term equations kill their variable whatever the parameters are
  std::set<std::string> killed;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : pending) {
      if (!e.is_monomial()) continue;
      const Monomial& mono = e.terms().begin()->first;
      std::vector<std::string> hit;
      for (const auto& [v, x] : mono)
        if (x > 0 && std::find(all_names.begin(), all_names.end(), v.name) != all_names.end()) hit.push_back(v.name);
      if (hit.size() != 1) continue;
      killed.insert(hit[0]);
      a.theta_substitution[Var::holo(hit[0])] = Scalar();
      a.theta_substitution[Var::anti(hit[0])] = Scalar();
      changed = true;
    }
    std::vector<Scalar> next;
    for (const auto& e : pending) {
      Scalar r = e.substitute(a.theta_substitution);
      if (!r.is_zero()) next.push_back(r);
    }
    pending = next;
  }
  for (const auto& nm : all_names)
    if (killed.count(nm)) a.theta_constraints.push_back(nm + " = 0");
  std::vector<std::string> names;
  for (const auto& nm : all_names)
    if (!killed.count(nm)) names.push_back(nm);
  std::vector<std::map<Var, GaussRational>> rows;
  bool linear = true;
  for (const auto& c : pending) {
    auto lc = linear_coefficients(c);
    if (!lc) {
      linear = false;
      break;
    }
    rows.push_back(*lc);
  }
  if (!linear) {
    for (const auto& c : pending) {
      a.theta_equations.push_back(c);
      a.theta_constraints.push_back(c.to_string() + " = 0");
    }
    for (const auto& nm : names) a.theta_unknowns.push_back({nm, true, false});
    a.theta = a.theta_generic.substitute(a.theta_substitution);
    return;
  }
  // real coordinates: x_{2j} = Re a_j, x_{2j+1} = Im a_j
  std::size_t N = 2 * names.size();
  std::vector<Vec> real_rows;
  for (const auto& r : rows) {
    Vec re(N), im(N);
    for (std::size_t j = 0; j < names.size(); ++j) {
      GaussRational ch, ca;
      if (auto it = r.find(Var::holo(names[j])); it != r.end()) ch = it->second;
      if (auto it = r.find(Var::anti(names[j])); it != r.end()) ca = it->second;
      GaussRational cx = ch + ca, cy = GaussRational::i() * (ch - ca);
      re[2 * j] = GaussRational(cx.re());
      im[2 * j] = GaussRational(cx.im());
      re[2 * j + 1] = GaussRational(cy.re());
      im[2 * j + 1] = GaussRational(cy.im());
    }
    real_rows.push_back(re);
    real_rows.push_back(im);
  }
  Matrix M(real_rows.size(), N);
  for (std::size_t r = 0; r < real_rows.size(); ++r)
    for (std::size_t c = 0; c < N; ++c) M(r, c) = real_rows[r][c];
  std::vector<std::size_t> piv;
  Matrix R = real_rows.empty() ? Matrix(0, N) : rref(M, &piv);
  std::vector<bool> used(piv.size(), false);
  std::vector<bool> zero(names.size(), false), real(names.size(), false), imag(names.size(), false);
  auto support = [&](std::size_t r) {
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < N; ++c)
      if (!R(r, c).is_zero()) cols.push_back(c);
    return cols;
  };
  // rows "Im a = 0" make a real; "Re a = 0" stays an equation unless Im a = 0 too
  for (std::size_t r = 0; r < piv.size(); ++r) {
    auto cols = support(r);
    if (cols.size() != 1) continue;
    (cols[0] % 2 ? real : imag)[cols[0] / 2] = true;
  }
  for (std::size_t j = 0; j < names.size(); ++j)
    if (real[j] && imag[j]) {
      zero[j] = true;
      real[j] = imag[j] = false;
    }
  for (std::size_t r = 0; r < piv.size(); ++r) {
    auto cols = support(r);
    if (cols.size() == 1 && (zero[cols[0] / 2] || real[cols[0] / 2])) used[r] = true;
  }
  for (std::size_t j = 0; j < names.size(); ++j) {
    const std::string& nm = names[j];
    if (zero[j]) {
      a.theta_substitution[Var::holo(nm)] = Scalar();
      a.theta_substitution[Var::anti(nm)] = Scalar();
      a.theta_constraints.push_back(nm + " = 0");
    } else if (real[j]) {
      a.theta_substitution[Var::holo(nm)] = Scalar::variable(Var::real(nm));
      a.theta_substitution[Var::anti(nm)] = Scalar::variable(Var::real(nm));
      a.theta_constraints.push_back(nm + " = conj(" + nm + ")");
      a.theta_unknowns.push_back({nm, false, false});
    } else {
      a.theta_unknowns.push_back({nm, true, false});
    }
  }
  Scalar half(GaussRational(mpq_class(1, 2)));
  Scalar minus_half_i = Scalar(GaussRational(0, mpq_class(-1, 2)));
  for (std::size_t r = 0; r < piv.size(); ++r) {
    if (used[r]) continue;
    Scalar eq;
    for (std::size_t c = 0; c < N; ++c) {
      if (R(r, c).is_zero()) continue;
      std::size_t j = c / 2;
      Scalar h = Scalar::variable(Var::holo(names[j])), an = Scalar::variable(Var::anti(names[j]));
      // Re a = (a + ā)/2, Im a = -i (a - ā)/2
      Scalar coord = c % 2 == 0 ? half * (h + an) : minus_half_i * (h - an);
      eq += Scalar(R(r, c)) * coord;
    }
    eq = eq.substitute(a.theta_substitution);
    if (eq.is_zero()) continue;
    a.theta_equations.push_back(eq);
    auto cols = support(r);
    if (cols.size() == 1 && cols[0] % 2 == 0)
      a.theta_constraints.push_back("re(" + names[cols[0] / 2] + ") = 0");
    else
      a.theta_constraints.push_back(eq.to_string() + " = 0");
  }
  a.theta = a.theta_generic.substitute(a.theta_substitution);
  auto key = [&](const std::string& c) {
    for (std::size_t j = 0; j < all_names.size(); ++j)
      if (c.rfind(all_names[j] + " =", 0) == 0 || c.rfind("re(" + all_names[j] + ")", 0) == 0) return j;
    return all_names.size();
  };
  std::stable_sort(a.theta_constraints.begin(), a.theta_constraints.end(),
                   [&](const std::string& x, const std::string& y) { return key(x) < key(y); });
}

}  // namespace

GenericAnsatz build_ansatz(const AlgebraSpec& s, StructureMode mode, const AnsatzOptions& opt) {
  if (!s.frame.complex) throw ValidationError("an ansatz needs a complex frame");
  if (!validate_spec(s).integrable.value_or(false))
    throw ValidationError("an ansatz needs an integrable complex structure");
  const Frame f = s.frame;
  const int n = f.n;
  GenericAnsatz a;
  a.spec = s;
  a.mode = mode;
  a.k = opt.k;
  const NamingScheme& nm = opt.names;
  Form Om(f);
  for (int j = 1; j <= n; ++j) {
    std::string name = nm.diag_name(j);
    a.unknowns.push_back({name, false, true});
    Om += Scalar::i() * Scalar::variable(Var::real(name)) * wedge(Form::phi(f, j), Form::cphi(f, j));
  }
  for (int k = 2; k <= n; ++k)
    for (int j = 1; j < k; ++j) {
      if (opt.reduced_hermitian && !(j == 1 && k == 2)) continue;
      std::string name = nm.offdiag_name(j, k);
      a.unknowns.push_back({name, true, false});
      Scalar u = Scalar::variable(Var::holo(name));
      Om += u * wedge(Form::phi(f, j), Form::cphi(f, k)) - u.conj() * wedge(Form::phi(f, k), Form::cphi(f, j));
    }
  if (mode == StructureMode::Lcht)
    for (int k = 2; k <= n; ++k)
      for (int j = 1; j < k; ++j) {
        std::string name = nm.twozero_name(j, k);
        a.unknowns.push_back({name, true, false});
        Scalar L = Scalar::variable(Var::holo(name));
        Om += L * wedge(Form::phi(f, j), Form::phi(f, k)) + L.conj() * wedge(Form::cphi(f, j), Form::cphi(f, k));
      }
  a.Omega = Om;
  a.theta_generic = Form(f);
  a.theta = Form(f);
  if (uses_theta(mode)) {
    std::vector<std::string> names;
    for (int j = 1; j <= n; ++j) {
      std::string name = nm.theta_name(j);
      names.push_back(name);
      Scalar c = Scalar::variable(Var::holo(name));
      a.theta_generic += c * Form::phi(f, j) + c.conj() * Form::cphi(f, j);
    }
    solve_theta(a, names);
  }
  return a;
}

const ResidualEquation* ResidualSystem::find(const std::string& label) const {
  for (const auto& e : equations)
    if (e.label == label) return &e;
  return nullptr;
}

namespace {

void append(ResidualSystem& out, const Form& r, const std::string& provenance) {
  for (const auto& [m, c] : r.terms()) out.equations.push_back({monomial_label(r.frame(), m), c, provenance});
}

ResidualSystem conformal_unchecked(const AlgebraSpec& s, const Form& Omega, const Form& theta, int m) {
  if (m < 1) throw ValidationError("power must be positive");
  Form P = power(Omega, m);
  Form r = exterior_d(s, P) - wedge(theta, P);
  ResidualSystem out;
  append(out, r, "dOmega^" + std::to_string(m) + " - theta^Omega^" + std::to_string(m));
  return out;
}

Form ddbar(const AlgebraSpec& s, const Form& a) { return del(s, delbar(s, a)); }

}  // namespace

ResidualSystem residual_conformal(const AlgebraSpec& s, const Form& Omega, const Form& theta, int m) {
  if (!theta.is_zero() && theta.degree() != 1) throw ValidationError("theta must be a 1-form");
  if (!exterior_d(s, theta).is_zero()) throw ValidationError("theta is not closed");
  return conformal_unchecked(s, Omega, theta, m);
}

ResidualSystem ansatz_residual(const GenericAnsatz& a) {
  const AlgebraSpec& s = a.spec;
  int n = s.frame.n;
  ResidualSystem out;
  switch (a.mode) {
    case StructureMode::LcK:
    case StructureMode::Lcht:
      out = conformal_unchecked(s, a.Omega, a.theta, 1);
      break;
    case StructureMode::Kahler:
      out = conformal_unchecked(s, a.Omega, Form(s.frame), 1);
      break;
    case StructureMode::Lcb:
      out = conformal_unchecked(s, a.Omega, a.theta, std::max(1, n - 1));
      break;
    case StructureMode::Balanced:
      out = conformal_unchecked(s, a.Omega, Form(s.frame), std::max(1, n - 1));
      break;
    case StructureMode::Pluriclosed:
      append(out, ddbar(s, a.Omega), "ddbar omega");
      break;
    case StructureMode::KGauduchon: {
      if (a.k < 1 || a.k > n - 1) throw ValidationError("k must lie in 1..n-1");
      Form x = ddbar(s, power(a.Omega, a.k));
      if (n - a.k - 1 > 0) x = wedge(x, power(a.Omega, n - a.k - 1));
      append(out, x, "ddbar omega^" + std::to_string(a.k) + " ^ omega^" + std::to_string(n - a.k - 1));
      break;
    }
  }
  for (std::size_t i = 0; i < a.theta_equations.size(); ++i)
    out.equations.push_back({"theta:" + std::to_string(i), a.theta_equations[i], "d theta = 0"});
  return out;
}

Scalar determinant(const std::vector<std::vector<Scalar>>& m) {
  std::size_t n = m.size();
  if (n == 0) return Scalar(1);
  if (n == 1) return m[0][0];
  Scalar det;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<Scalar>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Scalar> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    Scalar term = m[0][c] * determinant(minor);
    if (c % 2) det -= term;
    else det += term;
  }
  return det;
}

PositivityProfile positivity_check(const Form& Omega) {
  PositivityProfile p;
  p.hmat = hermitian_matrix(bidegree_project(Omega, 1, 1));
  std::size_t n = p.hmat.size();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (p.hmat[j][k] != p.hmat[k][j].conj()) throw ValidationError("(1,1)-part is not Hermitian");
  bool constant = true, positive = true;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<Scalar>> lead(k);
    for (std::size_t r = 0; r < k; ++r) lead[r].assign(p.hmat[r].begin(), p.hmat[r].begin() + static_cast<long>(k));
    Scalar d = determinant(lead);
    p.minors.push_back(d);
    if (!d.is_constant()) {
      constant = false;
      continue;
    }
    GaussRational v = d.constant_value();
    positive = positive && v.is_real() && sgn(v.re()) > 0;
  }
  if (constant) p.positive = positive;
  return p;
}

namespace {

bool positive_constant(const Form& Omega) {
  auto h = hermitian_matrix(bidegree_project(Omega, 1, 1));
  std::size_t n = h.size();
  Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      if (!h[j][k].is_constant()) return false;
      m(j, k) = h[j][k].constant_value();
    }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (m(j, k) != m(k, j).conj()) return false;
  for (const auto& d : leading_minors(m))
    if (!d.is_real() || sgn(d.re()) <= 0) return false;
  return true;
}

ResidualSystem mode_residual(const AlgebraSpec& s, StructureMode mode, const Form& Omega, const Form& theta, int k) {
  GenericAnsatz a;
  a.spec = s;
  a.mode = mode;
  a.k = k;
  a.Omega = Omega;
  a.theta = theta;
  return ansatz_residual(a);
}

}  // namespace

bool verify_witness(const AlgebraSpec& s, StructureMode mode, const Witness& w, int k, std::vector<std::string>* why) {
  auto fail = [&](const std::string& m) {
    if (why) why->push_back(m);
    return false;
  };
  if (!w.Omega.is_constant() || !w.theta.is_constant()) return fail("witness is not constant");
  if (!is_real_form(w.Omega)) return fail("Omega is not real");
  if (!w.theta.is_zero()) {
    if (!is_real_form(w.theta)) return fail("theta is not real");
    if (!exterior_d(s, w.theta).is_zero()) return fail("theta is not closed");
  }
  if (mode != StructureMode::Lcht && !(w.Omega - bidegree_project(w.Omega, 1, 1)).is_zero())
    return fail("Omega is not of type (1,1)");
  auto r = mode_residual(s, mode, w.Omega, w.theta, k);
  if (!r.empty()) return fail("residual is not empty at " + r.equations.front().label);
  if (!positive_constant(w.Omega)) return fail("(1,1)-part is not positive");
  return true;
}

namespace {

std::vector<Form> real_one_form_basis(const Frame& f) {
  std::vector<Form> out;
  for (int j = 1; j <= f.n; ++j) {
    out.push_back(Form::phi(f, j) + Form::cphi(f, j));
    out.push_back(Scalar::i() * (Form::phi(f, j) - Form::cphi(f, j)));
  }
  return out;
}

std::vector<Form> real_two_form_basis(const Frame& f, bool with_twozero) {
  std::vector<Form> out;
  auto pc = [&](int j, int k) { return wedge(Form::phi(f, j), Form::cphi(f, k)); };
  for (int j = 1; j <= f.n; ++j) out.push_back(Scalar::i() * pc(j, j));
  for (int k = 2; k <= f.n; ++k)
    for (int j = 1; j < k; ++j) {
      out.push_back(pc(j, k) - pc(k, j));
      out.push_back(Scalar::i() * (pc(j, k) + pc(k, j)));
    }
  if (with_twozero)
    for (int k = 2; k <= f.n; ++k)
      for (int j = 1; j < k; ++j) {
        Form h = wedge(Form::phi(f, j), Form::phi(f, k)), a = wedge(Form::cphi(f, j), Form::cphi(f, k));
        out.push_back(h + a);
        out.push_back(Scalar::i() * (h - a));
      }
  return out;
}

/// Real kernel of a real-linear map given by its images of a real basis.
std::vector<Vec> real_kernel(const std::vector<Form>& images) {
  std::map<Mono, std::size_t> row_of;
  for (const auto& img : images)
    for (const auto& [m, c] : img.terms()) row_of.emplace(m, 0);
  std::size_t r = 0;
  for (auto& [m, idx] : row_of) idx = r++;
  Matrix M(2 * row_of.size(), images.size());
  for (std::size_t c = 0; c < images.size(); ++c)
    for (const auto& [m, coef] : images[c].terms()) {
      GaussRational v = coef.constant_value();
      std::size_t row = row_of.at(m);
      M(2 * row, c) = GaussRational(v.re());
      M(2 * row + 1, c) = GaussRational(v.im());
    }
  if (M.rows() == 0) {
    std::vector<Vec> all;
    for (std::size_t c = 0; c < images.size(); ++c) {
      Vec e(images.size());
      e[c] = GaussRational(1);
      all.push_back(e);
    }
    return all;
  }
  return kernel(M);
}

Form combine(const std::vector<Form>& basis, const Vec& x, const Frame& f) {
  Form out(f);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!x[i].is_zero()) out += Scalar(x[i]) * basis[i];
  return out;
}

GaussRational sample_rational(std::mt19937_64& rng, bool nonnegative) {
  std::uniform_int_distribution<int> num(nonnegative ? 0 : -16, 16), den(1, 16);
  return GaussRational(mpq_class(num(rng), den(rng)));
}

std::map<std::string, GaussRational> read_values(const Frame& f, const NamingScheme& nm, const Form& Om,
                                                 const Form& th) {
  std::map<std::string, GaussRational> v;
  auto coef = [&](const Form& a, Mono m) {
    Scalar c = a.coefficient(m);
    return c.is_zero() ? GaussRational() : c.constant_value();
  };
  auto bit = [](int b) { return Mono{1} << b; };
  for (int j = 1; j <= f.n; ++j) {
    v[nm.diag_name(j)] = GaussRational(0, -1) * coef(Om, bit(j - 1) | bit(f.n + j - 1));
    v[nm.theta_name(j)] = coef(th, bit(j - 1));
  }
  for (int k = 2; k <= f.n; ++k)
    for (int j = 1; j < k; ++j) {
      v[nm.offdiag_name(j, k)] = coef(Om, bit(j - 1) | bit(f.n + k - 1));
      v[nm.twozero_name(j, k)] = coef(Om, bit(j - 1) | bit(k - 1));
    }
  return v;
}

bool linear_mode(StructureMode m) {
  return m == StructureMode::LcK || m == StructureMode::Lcht || m == StructureMode::Kahler ||
         m == StructureMode::Pluriclosed;
}

std::optional<Witness> search_theta(const AlgebraSpec& s, StructureMode mode, const SearchOptions& opt,
                                    const Form& theta, std::size_t index) {
  const Frame& f = s.frame;
  std::mt19937_64 rng(opt.seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  auto finish = [&](const Form& Om, const std::string& how) -> std::optional<Witness> {
    Witness w;
    w.Omega = Om;
    w.theta = theta;
    std::vector<std::string> why;
    if (!verify_witness(s, mode, w, opt.k, &why)) return std::nullopt;
    w.values = read_values(f, opt.names, Om, theta);
    w.transcript.push_back("theta candidate " + std::to_string(index) + ": " + theta.to_string());
    w.transcript.push_back(how);
    w.transcript.push_back("residual empty (exact)");
    for (const auto& d : positivity_check(Om).minors) w.transcript.push_back("minor " + d.to_string() + " > 0");
    return w;
  };
  if (linear_mode(mode)) {
    auto basis = real_two_form_basis(f, mode == StructureMode::Lcht);
    std::vector<Form> images;
    for (const auto& b : basis) {
      if (mode == StructureMode::Pluriclosed) images.push_back(ddbar(s, b));
      else images.push_back(exterior_d(s, b) - wedge(theta, b));
    }
    auto ker = real_kernel(images);
    if (ker.empty()) return std::nullopt;
    std::size_t dim = basis.size();
    std::vector<Vec> canon;
    Vec sum(dim);
    for (const auto& k : ker) {
      canon.push_back(k);
      Vec neg(dim);
      for (std::size_t i = 0; i < dim; ++i) neg[i] = -k[i], sum[i] += k[i];
      canon.push_back(neg);
    }
    canon.push_back(sum);
    for (std::size_t c = 0; c < canon.size(); ++c) {
      Form Om = combine(basis, canon[c], f);
      if (positive_constant(Om))
        if (auto w = finish(Om, "canonical kernel candidate " + std::to_string(c))) return w;
    }
    for (int t = 0; t < opt.budget; ++t) {
      Vec x(dim);
      bool nonneg = t % 2 == 0;
      for (const auto& k : ker) {
        GaussRational c = sample_rational(rng, nonneg);
        for (std::size_t i = 0; i < dim; ++i) x[i] += c * k[i];
      }
      Form Om = combine(basis, x, f);
      if (positive_constant(Om))
        if (auto w = finish(Om, "kernel sample " + std::to_string(t))) return w;
    }
    return std::nullopt;
  }
  // nonlinear conditions: sample positive Hermitian forms directly
  int n = f.n;
  for (int t = 0; t < opt.budget; ++t) {
    Form Om(f);
    for (int j = 1; j <= n; ++j) {
      GaussRational d = t == 0 ? GaussRational(1) : sample_rational(rng, true) + GaussRational(mpq_class(1, 16));
      Om += Scalar(GaussRational(0, 1) * d) * wedge(Form::phi(f, j), Form::cphi(f, j));
    }
    if (t > 0)
      for (int k = 2; k <= n; ++k)
        for (int j = 1; j < k; ++j) {
          GaussRational u(mpq_class(sample_rational(rng, false).re() / 8), mpq_class(sample_rational(rng, false).re() / 8));
          Scalar su(u);
          Om += su * wedge(Form::phi(f, j), Form::cphi(f, k)) - su.conj() * wedge(Form::phi(f, k), Form::cphi(f, j));
        }
    if (!positive_constant(Om)) continue;
    if (mode_residual(s, mode, Om, theta, opt.k).empty())
      if (auto w = finish(Om, "direct sample " + std::to_string(t))) return w;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Witness> witness_search(const AlgebraSpec& s, StructureMode mode, const SearchOptions& opt) {
  if (s.has_params()) throw ValidationError("witness search needs all parameters instantiated");
  if (!s.frame.complex) throw ValidationError("witness search needs a complex frame");
  for (const auto& d : s.d_table)
    if (!d.is_constant()) throw ValidationError("witness search needs constant structure equations");
  const Frame& f = s.frame;
  std::vector<Form> thetas;
  auto add_theta = [&](const Form& t) {
    for (const auto& o : thetas)
      if (o == t) return;
    thetas.push_back(t);
  };
  for (const auto& h : opt.theta_hints) {
    if (!h.is_zero() && (!is_real_form(h) || !exterior_d(s, h).is_zero())) continue;
    add_theta(h);
  }
  add_theta(Form(f));
  if (uses_theta(mode)) {
    auto basis = real_one_form_basis(f);
    std::vector<Form> images;
    for (const auto& b : basis) images.push_back(exterior_d(s, b));
    auto ker = real_kernel(images);
    std::size_t k = ker.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= 3;
    for (std::size_t code = 1; code < total; ++code) {
      Vec x(basis.size());
      std::size_t c = code;
      for (std::size_t i = 0; i < k; ++i, c /= 3) {
        int digit = static_cast<int>(c % 3) == 2 ? -1 : static_cast<int>(c % 3);
        if (digit == 0) continue;
        for (std::size_t j = 0; j < basis.size(); ++j) x[j] += GaussRational(digit) * ker[i][j];
      }
      add_theta(combine(basis, x, f));
    }
  }
  // batches of one round of workers; the lowest successful index wins, so the
  // result does not depend on the worker count
  std::size_t batch = thread_budget();
  for (std::size_t from = 0; from < thetas.size(); from += batch) {
    std::size_t n = std::min(batch, thetas.size() - from);
    auto results = parallel_map<std::optional<Witness>>(n, [&](std::size_t i) {
      return search_theta(s, mode, opt, thetas[from + i], from + i);
    });
    for (auto& r : results)
      if (r) return r;
  }
  return std::nullopt;
}

std::optional<Form> d_theta_exact_solve(const AlgebraSpec& s, const Form& Omega, const Form& theta) {
  if (Omega.is_zero()) return Form(s.frame);
  int k = Omega.degree();
  if (k < 1) throw ValidationError("Omega must have positive degree");
  require_closed_one_form(s, theta);
  if (!(exterior_d(s, Omega) - wedge(theta, Omega)).is_zero()) throw ValidationError("Omega is not d_theta-closed");
  OperatorMatrix M = twisted_d(s, theta, TwistVariant::Plain, GaussRational(1), k - 1);
  Vec rhs(M.rows());
  for (std::size_t r = 0; r < M.rows(); ++r) {
    Scalar c = Omega.coefficient(M.dst_basis[r]);
    if (!c.is_constant()) throw ValidationError("Omega must have constant coefficients");
    rhs[r] = c.is_zero() ? GaussRational() : c.constant_value();
  }
  auto x = solve(M.numeric(), rhs);
  if (!x) return std::nullopt;
  Form beta(s.frame);
  for (std::size_t c = 0; c < M.cols(); ++c)
    if (!(*x)[c].is_zero()) beta.add_term(M.src_basis[c], Scalar((*x)[c]));
  return beta;
}

ContactResult contact_search(const AlgebraSpec& s) {
  const Frame& f = s.frame;
  if (f.complex) throw ValidationError("contact search needs a real frame");
  int dim = f.gens();
  if (dim % 2 == 0) throw ValidationError("contact search needs odd dimension");
  int n = (dim + 1) / 2;
  Form alpha(f);
  std::vector<Var> xs;
  for (int i = 0; i < dim; ++i) {
    xs.push_back(Var::real("x" + std::to_string(i + 1)));
    alpha += Scalar::variable(xs.back()) * Form::generator(f, i);
  }
  Form da = exterior_d(s, alpha);
  Form top = n > 1 ? wedge(alpha, power(da, n - 1)) : alpha;
  ContactResult r;
  r.polynomial = top_coefficient(top);
  if (r.polynomial.is_zero()) return r;
  // deterministic enumeration: coordinate vectors first, then small integer points
  auto eval = [&](const std::vector<int>& pt) {
    std::map<Var, Scalar> sub;
    for (int i = 0; i < dim; ++i) sub[xs[static_cast<std::size_t>(i)]] = Scalar(pt[static_cast<std::size_t>(i)]);
    return r.polynomial.substitute(sub);
  };
  auto make = [&](const std::vector<int>& pt) {
    Form a(f);
    for (int i = 0; i < dim; ++i)
      if (pt[static_cast<std::size_t>(i)]) a += Scalar(pt[static_cast<std::size_t>(i)]) * Form::generator(f, i);
    return a;
  };
  for (int i = dim - 1; i >= 0; --i) {
    std::vector<int> pt(static_cast<std::size_t>(dim), 0);
    pt[static_cast<std::size_t>(i)] = 1;
    if (!eval(pt).is_zero()) {
      r.alpha = make(pt);
      return r;
    }
  }
  const int vals[] = {0, 1, -1, 2};
  long total = 1;
  for (int i = 0; i < dim; ++i) total *= 4;
  for (long code = 1; code < total; ++code) {
    std::vector<int> pt(static_cast<std::size_t>(dim));
    long c = code;
    for (int i = 0; i < dim; ++i, c /= 4) pt[static_cast<std::size_t>(i)] = vals[c % 4];
    if (!eval(pt).is_zero()) {
      r.alpha = make(pt);
      return r;
    }
  }
  return r;
}

namespace {

mpz_class factorial(int k) {
  mpz_class r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

Scalar divide_by_monomial(const Scalar& num, const Scalar& den) {
  if (den.is_zero()) throw ValidationError("degenerate omega: omega^n = 0");
  try {
    return num * den.inverse();
  } catch (const std::domain_error&) {
    throw ValidationError("the volume coefficient " + den.to_string() + " is not a monomial");
  }
}

}  // namespace

Scalar k_gauduchon_scalar(const AlgebraSpec& s, const Form& omega, int k) {
  int n = s.frame.n;
  if (!s.frame.complex) throw ValidationError("k-Gauduchon needs a complex frame");
  if (k < 1 || k > n - 1) throw ValidationError("k must lie in 1..n-1");
  Form x = Scalar::i() * ddbar(s, power(omega, k));
  if (n - k - 1 > 0) x = wedge(x, power(omega, n - k - 1));
  Scalar vol = top_coefficient(power(omega, n)) * Scalar(GaussRational(mpq_class(1, factorial(n))));
  Scalar num = x.is_zero() ? Scalar() : top_coefficient(x);
  return num.is_zero() ? Scalar() : divide_by_monomial(num, vol);
}

GaussRational positivity_coefficient(const AlgebraSpec& s, const Form& theta, const Form& omega) {
  const Frame& f = s.frame;
  if (!f.complex) throw ValidationError("positivity coefficient needs a complex frame");
  if (!theta.is_constant() || !omega.is_constant()) throw ValidationError("constant coefficients required");
  int n = f.n;
  Scalar vol = top_coefficient(power(omega, n));
  if (vol.is_zero()) throw ValidationError("degenerate omega");
  Form t10 = bidegree_project(theta, 1, 0);
  if (t10.is_zero()) return GaussRational();
  Form x = Scalar::i() * wedge(t10, conjugate_form(t10));
  if (n > 1) x = wedge(x, power(omega, n - 1));
  return top_coefficient(x).constant_value() / vol.constant_value();
}

std::optional<std::pair<Scalar, Scalar>> split_parameter_factor(const Scalar& p, const std::set<Var>& unknowns) {
  std::map<Monomial, Scalar::Terms> groups;
  for (const auto& [mono, c] : p.terms()) {
    Monomial u, rest;
    for (const auto& ve : mono) (unknowns.count(ve.first) ? u : rest).push_back(ve);
    groups[u][rest] += c;
  }
  if (groups.size() != 1) return std::nullopt;
  const auto& [u, rest] = *groups.begin();
  Scalar factor = Scalar::from_terms(rest);
  Scalar::Terms ut;
  ut[u] = GaussRational(1);
  return std::make_pair(factor, Scalar::from_terms(ut));
}

}  // namespace invarforms
