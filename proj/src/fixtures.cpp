#include "invarforms/fixtures.hpp"

#include "invarforms/catalog.hpp"
#include "invarforms/certificate.hpp"
#include "invarforms/operators.hpp"

#include <fstream>
#include <set>

namespace invarforms {

std::vector<Form> fixture_theta_hints(const std::string& name, const AlgebraSpec& s) {
  const Frame& f = s.frame;
  std::vector<Form> out;
  if (name == "h3_Jplus" || name.rfind("class3", 0) == 0) out.push_back(Form::phi(f, 3) + Form::cphi(f, 3));
  return out;
}

// ---------------------------------------------------------------------------
// surfaces

std::vector<SurfaceFamily> surface_families() {
  auto c = [](const char* v) { return parse_constant(v); };
  return {
      {"complex torus", "torus4", "clearly admits a K\\\"ahler structure", {{}}},
      {"hyperelliptic surface", "hyperelliptic", "it admits both gcK\\ structures", {{}}},
      {"Inoue surface S_M", "inoue_SM", "b = \\im\\, \\alpha",
       {{{"alpha", c("1")}, {"beta", c("0")}},
        {{"alpha", c("1")}, {"beta", c("2")}},
        {{"alpha", c("-1")}, {"beta", c("1")}}}},
      {"primary Kodaira surface", "kodaira_primary", "b = - \\frac{\\im\\,B^2}{2\\left(AB-|D|^2\\right)}", {{}}},
      {"secondary Kodaira surface", "kodaira_secondary", "b = - \\frac{B\\, \\im}{2\\, A}", {{}}},
      {"Inoue surface S^pm", "inoue_Spm", "Except in the case of Inoue surface of type $\\mathcal{S}^\\pm$ with $q\\neq0$",
       {{{"q", c("0")}}, {{"q", c("1")}}, {{"q", c("-2")}}}},
  };
}

std::vector<SurfaceSample> surface_samples() {
  auto c = [](const char* v) { return parse_constant(v); };
  return {
      {c("1"), c("1"), c("0"), c("0")},
      {c("2"), c("3"), c("1/2+1/3*i"), c("1-i")},
      {c("3"), c("1"), c("i"), c("2")},
      {c("1/2"), c("5"), c("-1+1/2*i"), c("-3/2*i")},
  };
}

namespace {

GaussRational param(const Assignment& a, const std::string& k) {
  auto it = a.find(k);
  return it == a.end() ? GaussRational() : it->second;
}

Witness surface_form(const Frame& f, const GaussRational& A, const GaussRational& B, const GaussRational& D,
                     const GaussRational& L, const GaussRational& a, const GaussRational& b) {
  auto pc = [&](int j, int k) { return wedge(Form::phi(f, j), Form::cphi(f, k)); };
  Witness w;
  Scalar i = Scalar::i();
  w.Omega = i * Scalar(A) * pc(1, 1) + i * Scalar(B) * pc(2, 2) + Scalar(D) * pc(1, 2) - Scalar(D.conj()) * pc(2, 1) +
            Scalar(L) * wedge(Form::phi(f, 1), Form::phi(f, 2)) +
            Scalar(L.conj()) * wedge(Form::cphi(f, 1), Form::cphi(f, 2));
  w.theta = Scalar(a) * Form::phi(f, 1) + Scalar(b) * Form::phi(f, 2) + Scalar(a.conj()) * Form::cphi(f, 1) +
            Scalar(b.conj()) * Form::cphi(f, 2);
  w.values = {{"A", A}, {"B", B}, {"D", D}, {"L", L}, {"a", a}, {"b", b}};
  return w;
}

}  // namespace

std::optional<Witness> surface_witness(const std::string& catalog, StructureMode mode, const Assignment& point,
                                       const SurfaceSample& x) {
  bool lck = mode == StructureMode::LcK;
  if (!lck && mode != StructureMode::Lcht) return std::nullopt;
  const Frame f{true, 2};
  const GaussRational i = GaussRational::i(), zero;
  GaussRational A = x.A, B = x.B, D = x.D, L = lck ? zero : x.L;
  if (catalog == "torus4") return surface_form(f, A, B, D, L, zero, zero);
  if (catalog == "hyperelliptic") {
    if (lck) D = zero;
    return surface_form(f, A, B, D, -D, zero, zero);
  }
  if (catalog == "inoue_SM") {
    if (lck) D = zero;
    return surface_form(f, A, B, D, -D, zero, i * param(point, "alpha"));
  }
  if (catalog == "kodaira_primary") {
    // lcK is the L = 0 case of the lcht formula
    GaussRational K = A * B - GaussRational(D.norm2()) + GaussRational(L.norm2());
    GaussRational a = -(B * (D + L)) / (GaussRational(2) * K);
    GaussRational b = -(i * B * B) / (GaussRational(2) * K);
    return surface_form(f, A, B, D, L, a, b);
  }
  if (catalog == "kodaira_secondary") {
    if (lck) D = zero;
    return surface_form(f, A, B, D, -D, zero, -(B * i) / (GaussRational(2) * A));
  }
  if (catalog == "inoue_Spm") {
    GaussRational q = param(point, "q");
    GaussRational half_i = i / GaussRational(2);
    if (lck) {
      if (!q.is_zero()) return std::nullopt;
      return surface_form(f, A, B, GaussRational(0, D.im()), zero, zero, half_i);
    }
    return surface_form(f, A, B, D, -GaussRational(D.re()) + half_i * A * q, zero, half_i);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// coefficient table

bool TableReproduction::all_match() const {
  for (const auto& c : cells)
    if (!c.match) return false;
  return !cells.empty();
}

std::vector<const CellCheck*> TableReproduction::mismatches() const {
  std::vector<const CellCheck*> out;
  for (const auto& c : cells)
    if (!c.match) out.push_back(&c);
  return out;
}

nlohmann::json load_table3() {
  std::string path = data_dir() + "/table3.json";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return nlohmann::json::parse(in);
}

namespace {

std::string point_label(const Assignment& p) {
  std::string out;
  for (const auto& [k, v] : p) out += (out.empty() ? "" : ",") + k + "=" + v.to_string();
  return out.empty() ? "-" : out;
}

Assignment read_assignment(const nlohmann::json& j) {
  Assignment a;
  for (const auto& [k, v] : j.items()) a[k] = parse_constant(v.is_string() ? v.get<std::string>() : v.dump());
  return a;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return out;
}

/// "a=0, b=0" against constraints rendered as "a = 0".
std::string squash(std::string s) {
  std::string out;
  for (char ch : s)
    if (ch != ' ') out += ch;
  return out;
}

}  // namespace

namespace {

/// Names a cell may use: ansatz unknowns, generic θ coefficients, spec
/// parameters and the bound constants of the column.
std::map<std::string, Scalar> cell_symbols(const AlgebraSpec& s, const std::string& catalog, const Assignment& bind) {
  AnsatzOptions opt = fixture_options(catalog);
  std::map<std::string, Scalar> symbols = build_ansatz(s, StructureMode::Lcht, opt).symbols().symbols;
  for (int j = 1; j <= s.frame.n; ++j) {
    std::string t = opt.names.theta_name(j);
    symbols[t] = Scalar::variable(Var::holo(t));
  }
  for (const auto& [k, v] : bind) symbols[k] = Scalar::variable(Var::real(k));
  return symbols;
}

std::string cell_text(const nlohmann::json& table, const std::string& column, const std::string& row, bool errata) {
  if (errata && table.contains("errata") && table.at("errata").contains(column) &&
      table.at("errata").at(column).contains(row))
    return table.at("errata").at(column).at(row).get<std::string>();
  const auto& col = column == "theta_wedge_omega" ? table.at(column) : table.at("columns").at(column).at("cells");
  return col.value(row, "0");
}

}  // namespace

TableReproduction reproduce_table(const nlohmann::json& table, bool errata) {
  TableReproduction rep;
  std::vector<std::string> rows = table.at("rows").get<std::vector<std::string>>();
  for (const auto& cls : table.at("classes")) {
    std::string name = cls.at("name").get<std::string>();
    std::string catalog = cls.at("catalog").get<std::string>();
    std::string column = cls.at("column").get<std::string>();
    AlgebraSpec s = load_catalog(catalog);
    Assignment bind = cls.contains("bind") ? read_assignment(cls.at("bind")) : Assignment{};
    // cells are parsed against the symbolic spec, then evaluated at the point
    std::map<std::string, Scalar> symbols = cell_symbols(s, catalog, bind);
    for (const auto& pj : cls.at("points")) {
      Assignment point = read_assignment(pj);
      AlgebraSpec si = instantiate(s, point);
      GenericAnsatz a = build_ansatz(si, StructureMode::Lcht, fixture_options(catalog));
      std::map<Var, Scalar> sub = assignment_substitution(s, point);
      for (const auto& [k, v] : bind) sub[Var::real(k)] = Scalar(v);
      std::string label = point_label(point);
      rep.points[name] += 1;
      Form d = exterior_d(si, a.Omega);
      Form tw = wedge(a.theta_generic, a.Omega);
      auto check = [&](const std::string& row, const std::string& col, const std::string& text, const Scalar& got) {
        CellCheck c{name, label, row, col, text, got.to_string(), false};
        c.match = parse_scalar(text, symbols).substitute(sub) == got;
        rep.cells.push_back(std::move(c));
      };
      for (const auto& row : rows) {
        Mono m = parse_monomial_label(si.frame, row);
        check(row, "theta^Omega", cell_text(table, "theta_wedge_omega", row, errata), tw.coefficient(m));
        check(row, "dOmega", cell_text(table, column, row, errata), d.coefficient(m));
      }
      std::string want = table.at("columns").at(column).value("theta", "");
      std::string got = join(a.theta_constraints);
      rep.cells.push_back({name, label, "-", "dtheta=0", want, got, squash(want) == squash(got)});
    }
  }
  return rep;
}

std::vector<ConjugationConflict> table_conjugation_conflicts(const nlohmann::json& table, bool errata) {
  std::vector<ConjugationConflict> out;
  std::vector<std::string> rows = table.at("rows").get<std::vector<std::string>>();
  std::vector<std::pair<std::string, const nlohmann::json*>> columns{{"theta_wedge_omega", nullptr}};
  for (const auto& cls : table.at("classes")) columns.emplace_back(cls.at("column").get<std::string>(), &cls);
  std::set<std::string> seen;
  for (const auto& [column, cls] : columns) {
    if (!seen.insert(column).second) continue;
    std::string catalog = cls ? cls->at("catalog").get<std::string>() : "class1";
    AlgebraSpec s = load_catalog(catalog);
    Assignment bind = cls && cls->contains("bind") ? read_assignment(cls->at("bind")) : Assignment{};
    std::map<std::string, Scalar> symbols = cell_symbols(s, catalog, bind);
    for (const auto& row : rows) {
      // a real form has conj(coefficient at m) at conj(m)
      Mono m = parse_monomial_label(s.frame, row);
      Form cm = conjugate_form(Form::monomial(s.frame, m));
      const auto& [pm, sign] = *cm.terms().begin();
      std::string partner = monomial_label(s.frame, pm);
      if (partner < row) continue;
      Scalar x = parse_scalar(cell_text(table, column, row, errata), symbols);
      Scalar y = parse_scalar(cell_text(table, column, partner, errata), symbols);
      if (!(sign * x.conj() == y)) out.push_back({column, row, partner});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Nakamura

NakamuraReport nakamura_checks() {
  NakamuraReport r;
  AlgebraSpec s = load_catalog("nakamura");
  AnsatzOptions opt = fixture_options("nakamura");
  GenericAnsatz herm = build_ansatz(s, StructureMode::Pluriclosed, opt);
  const Form& w = herm.Omega;
  SymbolTable tab = herm.symbols();

  Form ddb = del(s, delbar(s, w));
  Form want = parse_form(
      "-i*(1+t)*(1+conj(t))*(B*phi1^phi2^cphi1^cphi2 + C*phi1^phi3^cphi1^cphi3)"
      " + (-1+t)*(-1+conj(t))*(F*phi1^phi2^cphi1^cphi3 - conj(F)*phi1^phi3^cphi1^cphi2)",
      tab);
  r.ddbar_difference = (ddb - want).to_string();
  r.ddbar_closed_form = (ddb - want).is_zero();

  Scalar top = top_coefficient(wedge(ddb, w));
  Scalar want_top = parse_scalar("2*((1+t)*(1+conj(t))*B*C + (-1+t)*(-1+conj(t))*F*conj(F))", tab.symbols);
  r.ddbar_wedge = top == want_top;

  std::set<Var> unknowns;
  for (const auto& u : herm.unknowns) {
    unknowns.insert(u.var());
    if (u.complex) unknowns.insert(Var::anti(u.name));
  }
  std::set<std::string> factors;
  bool all_split = true;
  for (const auto& e : ansatz_residual(herm).equations) {
    auto sp = split_parameter_factor(e.value, unknowns);
    if (!sp) {
      all_split = false;
      continue;
    }
    // conj(F) = 0 and F = 0 are the same condition
    Scalar g = sp->second;
    std::string name = g.to_string();
    if (name.rfind("conj(", 0) == 0) name = name.substr(5, name.size() - 6);
    factors.insert(name);
  }
  r.pluriclosed_factors.assign(factors.begin(), factors.end());
  r.pluriclosed_forces_BCF = all_split && factors == std::set<std::string>{"B", "C", "F"};

  Form std_omega(s.frame);
  for (int j = 1; j <= 3; ++j) std_omega += Scalar::i() * wedge(Form::phi(s.frame, j), Form::cphi(s.frame, j));
  r.balanced = exterior_d(s, power(std_omega, 2)).is_zero();

  GenericAnsatz full = build_ansatz(s, StructureMode::Lcht, opt);
  Form dO = exterior_d(s, full.Omega);
  // the display leaves the last label blank; by conjugation symmetry with the
  // phi^{13 3bar} term it is phi^{3 1bar 3bar}
  Form want_d = parse_form(
      "(conj(D) - t*L)*phi1^phi2^cphi1 - i*B*(1+conj(t))*phi1^phi2^cphi2 - F*(1-conj(t))*phi1^phi2^cphi3"
      " + (-conj(E) + t*M)*phi1^phi3^cphi1 - conj(F)*(1-conj(t))*phi1^phi3^cphi2 + i*C*(1+conj(t))*phi1^phi3^cphi3"
      " + (D - conj(t)*conj(L))*phi1^cphi1^cphi2 + i*B*(1+t)*phi2^cphi1^cphi2 - conj(F)*(1-t)*phi3^cphi1^cphi2"
      " + (-E + conj(t)*conj(M))*phi1^cphi1^cphi3 - F*(1-t)*phi2^cphi1^cphi3 - i*C*(1+t)*phi3^cphi1^cphi3",
      full.symbols());
  r.dOmega_difference = (dO - want_d).to_string();
  r.dOmega_expansion = (dO - want_d).is_zero();
  return r;
}

}  // namespace invarforms
