#include "invarforms/spec.hpp"

#include "invarforms/catalog.hpp"
#include "invarforms/linalg.hpp"

#include <json.hpp>

#include <fstream>
#include <regex>
#include <sstream>

namespace invarforms {

Form AlgebraSpec::d_generator(int bit) const {
  if (!frame.complex || bit < frame.n) return d_table.at(static_cast<std::size_t>(bit));
  return conjugate_form(d_table.at(static_cast<std::size_t>(bit - frame.n)));
}

SymbolTable AlgebraSpec::symbols() const {
  SymbolTable t;
  t.frame = frame;
  for (const auto& p : params) t.add(p.var());
  return t;
}

const ParamDecl* AlgebraSpec::find_param(const std::string& pname) const {
  for (const auto& p : params)
    if (p.name == pname) return &p;
  return nullptr;
}

bool equal_specs(const AlgebraSpec& a, const AlgebraSpec& b) {
  return a.frame == b.frame && a.d_table == b.d_table && a.params == b.params;
}

Form exterior_d(const AlgebraSpec& s, const Form& a) {
  Form out(s.frame);
  std::vector<Form> dg;
  dg.reserve(static_cast<std::size_t>(s.frame.gens()));
  for (int b = 0; b < s.frame.gens(); ++b) dg.push_back(s.d_generator(b));
  for (const auto& [m, c] : a.terms()) {
    int p = 0;
    for (int b = 0; b < s.frame.gens(); ++b) {
      Mono g = Mono{1} << b;
      if (!(m & g)) continue;
      if (!dg[static_cast<std::size_t>(b)].is_zero()) {
        Mono prefix = m & (g - 1);
        Mono suffix = m & ~(g | (g - 1));
        Form t = wedge(wedge(Form::monomial(s.frame, prefix), dg[static_cast<std::size_t>(b)]),
                       Form::monomial(s.frame, suffix));
        t *= (p & 1) ? Scalar(-c) : c;
        out += t;
      }
      ++p;
    }
  }
  return out;
}

namespace {

void check_degree_two(const Form& f, const std::string& what) {
  for (const auto& [m, c] : f.terms())
    if (popcount(m) != 2) throw ValidationError(what + " must be a 2-form");
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

AlgebraSpec parse_salamon(const std::string& text) {
  std::string t = trim(text);
  if (t.size() < 2 || t.front() != '(' || t.back() != ')') throw ParseError("Salamon spec must be parenthesized");
  std::vector<std::string> entries;
  std::string cur;
  for (char ch : t.substr(1, t.size() - 2)) {
    if (ch == ',') {
      entries.push_back(trim(cur));
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  entries.push_back(trim(cur));
  int dim = static_cast<int>(entries.size());
  if (dim > 9) throw ParseError("Salamon notation supports dimension at most 9");
  AlgebraSpec s;
  s.frame = Frame::real_dim(dim);
  s.name = t;
  static const std::regex term_re(R"(([+-]?)([0-9/]*\*?)([0-9])([0-9]))");
  for (int k = 0; k < dim; ++k) {
    Form f(s.frame);
    const std::string& e = entries[static_cast<std::size_t>(k)];
    if (e.empty()) throw ParseError("empty entry in Salamon spec");
    if (e != "0") {
      auto it = std::sregex_iterator(e.begin(), e.end(), term_re);
      std::size_t consumed = 0;
      for (; it != std::sregex_iterator(); ++it) {
        const auto& m = *it;
        if (static_cast<std::size_t>(m.position(0)) != consumed) throw ParseError("malformed Salamon entry: " + e);
        consumed += static_cast<std::size_t>(m.length(0));
        std::string coeff = m[2].str();
        if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
        GaussRational c = coeff.empty() ? GaussRational(1) : GaussRational::parse_rational(coeff);
        if (m[1].str() == "-") c = -c;
        int a = m[3].str()[0] - '0';
        int b = m[4].str()[0] - '0';
        if (a < 1 || b < 1 || a > dim || b > dim || a == b) throw ParseError("index out of range in Salamon entry: " + e);
        Form ea = Form::generator(s.frame, a - 1);
        Form eb = Form::generator(s.frame, b - 1);
        f += wedge(ea, eb) * Scalar(c);
      }
      if (consumed != e.size()) throw ParseError("malformed Salamon entry: " + e);
    }
    s.d_table.push_back(f);
  }
  return s;
}

AlgebraSpec parse_complex_dsl(const std::string& text) {
  AlgebraSpec s;
  bool have_frame = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  static const std::regex frame_re(R"(frame\s+(complex|real)\s+([0-9]+))");
  static const std::regex name_re(R"(name\s+(\S+))");
  static const std::regex param_re(R"(param\s+([A-Za-z_][A-Za-z0-9_]*)\s*:\s*(real|complex)((\s+(nonzero|positive))*))");
  static const std::regex d_re(R"(d\s+(phi|e)([0-9]+)\s*=\s*(.+))");
  auto err = [&](const std::string& why) { return ParseError("line " + std::to_string(lineno) + ": " + why); };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    line = trim(line);
    if (line.empty()) continue;
    std::smatch m;
    if (std::regex_match(line, m, frame_re)) {
      if (have_frame) throw err("duplicate frame header");
      int n = std::stoi(m[2].str());
      bool cx = m[1].str() == "complex";
      if (n < 1 || (cx ? 2 * n : n) > 24) throw err("unsupported frame size");
      s.frame = cx ? Frame::complex_rank(n) : Frame::real_dim(n);
      s.d_table.assign(static_cast<std::size_t>(n), Form(s.frame));
      have_frame = true;
    } else if (std::regex_match(line, m, name_re)) {
      s.name = m[1].str();
    } else if (std::regex_match(line, m, param_re)) {
      ParamDecl p;
      p.name = m[1].str();
      p.complex = m[2].str() == "complex";
      std::string flags = m[3].str();
      p.nonzero = flags.find("nonzero") != std::string::npos;
      p.positive = flags.find("positive") != std::string::npos;
      if (p.positive && p.complex) throw err("a complex parameter cannot be positive");
      if (s.find_param(p.name)) throw err("duplicate parameter " + p.name);
      s.params.push_back(p);
    } else if (std::regex_match(line, m, d_re)) {
      if (!have_frame) throw err("structure equation before frame header");
      bool phi = m[1].str() == "phi";
      if (phi != s.frame.complex) throw err("generator kind does not match frame");
      int j = std::stoi(m[2].str());
      if (j < 1 || j > s.frame.n) throw err("generator index out of range");
      Form f;
      try {
        f = parse_form(m[3].str(), s.symbols());
      } catch (const ParseError& e) {
        throw err(e.what());
      }
      if (!f.is_zero()) check_degree_two(f, "d " + m[1].str() + m[2].str());
      s.d_table[static_cast<std::size_t>(j - 1)] = Form(s.frame) + f;
    } else {
      throw err("unrecognized line: " + line);
    }
  }
  if (!have_frame) throw ParseError("missing frame header");
  return s;
}

AlgebraSpec parse_spec_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  AlgebraSpec s;
  std::string frame = j.value("frame", "complex");
  int n = j.at("n").get<int>();
  s.frame = frame == "complex" ? Frame::complex_rank(n) : Frame::real_dim(n);
  s.name = j.value("name", "");
  s.d_table.assign(static_cast<std::size_t>(n), Form(s.frame));
  const nlohmann::json params = j.value("params", nlohmann::json::array());
  for (const auto& p : params) {
    ParamDecl d;
    d.name = p.at("name").get<std::string>();
    d.complex = p.value("kind", "real") == "complex";
    d.nonzero = p.value("nonzero", false);
    d.positive = p.value("positive", false);
    s.params.push_back(d);
  }
  SymbolTable sym = s.symbols();
  const nlohmann::json dtab = j.value("d", nlohmann::json::object());
  for (const auto& [key, terms] : dtab.items()) {
    std::string prefix = s.frame.complex ? "phi" : "e";
    if (key.rfind(prefix, 0) != 0) throw ParseError("bad generator key " + key);
    int idx = std::stoi(key.substr(prefix.size()));
    if (idx < 1 || idx > n) throw ParseError("generator index out of range: " + key);
    Form f(s.frame);
    for (const auto& t : terms) {
      Scalar c = parse_scalar(t.at("coeff").get<std::string>(), sym.symbols);
      Form mono = Form::unit(s.frame);
      for (int g : t.at("mon")) {
        int bit;
        if (g > 0) {
          bit = g - 1;
        } else {
          if (!s.frame.complex) throw ParseError("negative index in a real frame");
          bit = n + (-g) - 1;
        }
        if (g == 0 || std::abs(g) > n) throw ParseError("monomial index out of range");
        mono = wedge(mono, Form::generator(s.frame, bit));
      }
      f += mono * c;
    }
    if (!f.is_zero()) check_degree_two(f, key);
    s.d_table[static_cast<std::size_t>(idx - 1)] = f;
  }
  return s;
}

AlgebraSpec parse_spec_any(const std::string& text) {
  std::string t = trim(text);
  if (t.rfind("catalog:", 0) == 0) return load_catalog(t.substr(8));
  if (!t.empty() && t.front() == '{') return parse_spec_json(t);
  if (!t.empty() && t.front() == '(') return parse_salamon(t);
  return parse_complex_dsl(text);
}

AlgebraSpec load_spec_file(const std::string& path) {
  if (path.rfind("catalog:", 0) == 0) return load_catalog(path.substr(8));
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec_any(ss.str());
}

std::string serialize_dsl(const AlgebraSpec& s) {
  std::ostringstream out;
  out << "frame " << (s.frame.complex ? "complex " : "real ") << s.frame.n << "\n";
  if (!s.name.empty() && s.name.find_first_of(" \t#") == std::string::npos) out << "name " << s.name << "\n";
  for (const auto& p : s.params) {
    out << "param " << p.name << " : " << (p.complex ? "complex" : "real");
    if (p.nonzero) out << " nonzero";
    if (p.positive) out << " positive";
    out << "\n";
  }
  for (int j = 0; j < s.frame.n; ++j)
    out << "d " << (s.frame.complex ? "phi" : "e") << (j + 1) << " = " << s.d_table[static_cast<std::size_t>(j)].to_string()
        << "\n";
  return out.str();
}

std::map<Var, Scalar> assignment_substitution(const AlgebraSpec& s, const Assignment& values) {
  std::map<Var, Scalar> sub;
  for (const auto& [name, v] : values) {
    const ParamDecl* p = s.find_param(name);
    if (!p) throw ValidationError("unknown parameter " + name);
    if (!p->complex && !v.is_real()) throw ValidationError("parameter " + name + " is real");
    if ((p->nonzero || p->positive) && v.is_zero()) throw ValidationError("parameter " + name + " must be nonzero");
    if (p->positive && sgn(v.re()) <= 0) throw ValidationError("parameter " + name + " must be positive");
    sub[p->var()] = Scalar(v);
    if (p->complex) sub[p->var().conj()] = Scalar(v.conj());
  }
  bool complete = true;
  for (const auto& p : s.params) complete = complete && values.count(p.name);
  if (complete) {
    for (const auto& c : s.constraints)
      if (!c.holds(values)) throw ValidationError("constraint violated: " + c.description);
  }
  return sub;
}

Form evaluate_params(const Form& a, const AlgebraSpec& s, const Assignment& values) {
  return a.substitute(assignment_substitution(s, values));
}

AlgebraSpec instantiate(const AlgebraSpec& s, const Assignment& values) {
  auto sub = assignment_substitution(s, values);
  AlgebraSpec out = s;
  for (auto& f : out.d_table) f = f.substitute(sub);
  out.params.clear();
  for (const auto& p : s.params)
    if (!values.count(p.name)) out.params.push_back(p);
  if (out.params.empty()) out.constraints.clear();
  std::string suffix;
  for (const auto& [k, v] : values) suffix += (suffix.empty() ? "" : ",") + k + "=" + v.to_string();
  if (!suffix.empty()) out.name = s.name + "[" + suffix + "]";
  return out;
}

AlgebraSpec complexify(const AlgebraSpec& real, const std::vector<std::pair<int, int>>& pairs) {
  if (real.frame.complex) throw std::invalid_argument("complexify expects a real frame");
  if (static_cast<int>(pairs.size()) * 2 != real.frame.n) throw std::invalid_argument("J pairs must cover the frame");
  Frame cf = Frame::complex_rank(static_cast<int>(pairs.size()));
  std::vector<Form> image(static_cast<std::size_t>(real.frame.n));
  const Scalar half(GaussRational(mpq_class(1, 2)));
  const Scalar minus_half_i(GaussRational(0, mpq_class(-1, 2)));
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    auto [a, b] = pairs[j];
    Form ph = Form::phi(cf, static_cast<int>(j) + 1);
    Form cph = Form::cphi(cf, static_cast<int>(j) + 1);
    image[static_cast<std::size_t>(a - 1)] = (ph + cph) * half;
    image[static_cast<std::size_t>(b - 1)] = (ph - cph) * minus_half_i;
  }
  auto map_form = [&](const Form& f) {
    Form out(cf);
    for (const auto& [m, c] : f.terms()) {
      Form t = Form::unit(cf, c);
      for (int bit = 0; bit < real.frame.n; ++bit)
        if (m & (Mono{1} << bit)) t = wedge(t, image[static_cast<std::size_t>(bit)]);
      out += t;
    }
    return out;
  };
  AlgebraSpec out;
  out.name = real.name;
  out.frame = cf;
  out.params = real.params;
  out.constraints = real.constraints;
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    auto [a, b] = pairs[j];
    out.d_table.push_back(map_form(real.d_table[static_cast<std::size_t>(a - 1)]) +
                          map_form(real.d_table[static_cast<std::size_t>(b - 1)]) * Scalar::i());
  }
  return out;
}

std::vector<std::vector<std::vector<GaussRational>>> structure_constants(const AlgebraSpec& s) {
  int g = s.frame.gens();
  std::vector<std::vector<std::vector<GaussRational>>> br(
      static_cast<std::size_t>(g), std::vector<std::vector<GaussRational>>(static_cast<std::size_t>(g), Vec(static_cast<std::size_t>(g))));
  for (int k = 0; k < g; ++k) {
    Form dk = s.d_generator(k);
    for (const auto& [m, c] : dk.terms()) {
      if (!c.is_constant()) throw ValidationError("structure constants need instantiated parameters");
      int a = std::countr_zero(m);
      int b = std::countr_zero(m & (m - 1));
      // de^k(E_a,E_b) = -e^k([E_a,E_b])
      br[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)][static_cast<std::size_t>(k)] -= c.constant_value();
      br[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] += c.constant_value();
    }
  }
  return br;
}

namespace {

bool nilpotent_constant(const AlgebraSpec& s) {
  auto br = structure_constants(s);
  std::size_t g = static_cast<std::size_t>(s.frame.gens());
  std::vector<Vec> cur;
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = a + 1; b < g; ++b) cur.push_back(br[a][b]);
  for (std::size_t step = 0; step <= g; ++step) {
    Matrix m = Matrix::from_columns(g, cur);
    std::size_t r = rank(m);
    if (r == 0) return true;
    // reduce to a basis before bracketing again
    std::vector<std::size_t> piv;
    rref(m, &piv);
    std::vector<Vec> basis_vecs;
    for (auto p : piv) basis_vecs.push_back(cur[p]);
    std::vector<Vec> nxt;
    for (std::size_t a = 0; a < g; ++a) {
      for (const auto& v : basis_vecs) {
        Vec w(g);
        for (std::size_t b = 0; b < g; ++b)
          if (!v[b].is_zero())
            for (std::size_t k = 0; k < g; ++k) w[k] += v[b] * br[a][b][k];
        nxt.push_back(std::move(w));
      }
    }
    cur = std::move(nxt);
  }
  return false;
}

}  // namespace

ValidationReport validate_spec(const AlgebraSpec& s) {
  ValidationReport r;
  const Frame& f = s.frame;
  r.jacobi_valid = true;
  int primary = f.n;
  for (int j = 0; j < primary; ++j) {
    Form dd = exterior_d(s, s.d_table[static_cast<std::size_t>(j)]);
    if (!dd.is_zero()) {
      r.jacobi_valid = false;
      r.failures.push_back("d^2 " + std::string(f.complex ? "phi" : "e") + std::to_string(j + 1) + " = " + dd.to_string());
    }
  }
  if (!r.jacobi_valid && !s.constraints.empty()) {
    // d^2 may vanish only on the constrained locus; test it on every admissible grid point
    static const std::vector<GaussRational> grid = {
        GaussRational(0), GaussRational(1), GaussRational(-1), GaussRational(0, 1), GaussRational(0, -1),
        GaussRational(mpq_class(1, 2), mpq_class(1, 3)), GaussRational(2)};
    std::vector<Form> dd;
    for (int j = 0; j < primary; ++j) dd.push_back(exterior_d(s, s.d_table[static_cast<std::size_t>(j)]));
    std::size_t admissible = 0;
    bool all_zero = true;
    std::vector<std::size_t> idx(s.params.size(), 0);
    while (all_zero) {
      Assignment a;
      bool ok = true;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        const ParamDecl& p = s.params[k];
        const GaussRational& v = grid[idx[k]];
        if ((!p.complex && !v.is_real()) || ((p.nonzero || p.positive) && v.is_zero()) ||
            (p.positive && sgn(v.re()) <= 0))
          ok = false;
        a[p.name] = v;
      }
      if (ok)
        for (const auto& c : s.constraints) ok = ok && c.holds(a);
      if (ok) {
        ++admissible;
        auto sub = assignment_substitution(s, a);
        for (const auto& d : dd) all_zero = all_zero && d.substitute(sub).is_zero();
      }
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == grid.size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
    if (admissible > 0 && all_zero) {
      r.jacobi_valid = true;
      r.failures.clear();
      r.notes.push_back("d^2 = 0 holds on the constrained parameter locus (" + std::to_string(admissible) +
                        " admissible grid points)");
    }
  }
  if (f.complex) {
    bool integ = true;
    bool abel = true;
    for (int j = 0; j < primary; ++j) {
      const Form& dj = s.d_table[static_cast<std::size_t>(j)];
      if (!bidegree_project(dj, 0, 2).is_zero()) {
        integ = false;
        r.failures.push_back("pi^{0,2} d phi" + std::to_string(j + 1) + " != 0");
      }
      if (!bidegree_project(dj, 2, 0).is_zero() || !bidegree_project(dj, 0, 2).is_zero()) abel = false;
    }
    r.integrable = integ;
    r.abelian_J = abel;
  } else {
    r.notes.push_back("real frame: integrability and abelian_J not applicable");
  }
  r.unimodular = true;
  for (Mono m : basis(f, f.gens() - 1)) {
    Scalar t = exterior_d(s, Form::monomial(f, m)).coefficient(f.top_mask());
    if (!t.is_zero()) {
      r.unimodular = false;
      break;
    }
  }
  AlgebraSpec sample = s;
  if (s.has_params()) {
    Assignment a;
    for (const auto& p : s.params) a[p.name] = p.complex ? GaussRational(mpq_class(2, 7), mpq_class(3, 11)) : GaussRational(mpq_class(5, 7));
    for (auto& d : sample.d_table) d = d.substitute([&] {
      std::map<Var, Scalar> sub;
      for (const auto& p : s.params) {
        sub[p.var()] = Scalar(a[p.name]);
        if (p.complex) sub[p.var().conj()] = Scalar(a[p.name].conj());
      }
      return sub;
    }());
    r.notes.push_back("nilpotency evaluated at a generic parameter sample");
  }
  r.nilpotent = nilpotent_constant(sample);
  return r;
}

}  // namespace invarforms
