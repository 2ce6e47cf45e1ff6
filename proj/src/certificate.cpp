#include "invarforms/certificate.hpp"

#include "invarforms/catalog.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace invarforms {

namespace {

std::string str_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) throw ParseError(std::string("certificate: missing string field '") + key + "'");
  return j.at(key).get<std::string>();
}

}  // namespace

Certificate parse_certificate(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("certificate: expected a JSON object");
  Certificate c;
  c.raw = j;
  c.name = j.value("name", "");
  c.spec = j.value("spec", "");
  try {
    c.mode = parse_mode(str_field(j, "ansatz"));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
  if (j.contains("naming")) c.naming = j.at("naming").get<std::string>();
  if (j.contains("reduced")) c.reduced = j.at("reduced").get<bool>();
  if (j.contains("atoms"))
    for (const auto& a : j.at("atoms")) c.atoms.push_back(a.get<std::string>());
  if (j.contains("instances"))
    for (const auto& inst : j.at("instances")) {
      Assignment a;
      for (const auto& [k, v] : inst.items()) a[k] = parse_constant(v.get<std::string>());
      c.instances.push_back(a);
    }
  if (!j.contains("tree") || !j.at("tree").is_object()) throw ParseError("certificate: missing tree");
  c.tree = j.at("tree");
  return c;
}

Certificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_certificate(ss.str());
}

AnsatzOptions certificate_options(const Certificate& c) {
  AnsatzOptions o = fixture_options(c.spec);
  if (c.naming) {
    if (*c.naming == "nil") o.names = NamingScheme::nil();
    else if (*c.naming == "solv") o.names = NamingScheme::solv();
    else if (*c.naming == "surface") o.names = NamingScheme::surface();
    else if (*c.naming == "nakamura") o.names = NamingScheme::nakamura();
    else throw ParseError("certificate: unknown naming " + *c.naming);
  }
  if (c.reduced) o.reduced_hermitian = *c.reduced;
  return o;
}

namespace {

struct Invalid {
  int step;
  std::string message;
};

struct Branch {
  std::map<std::string, Scalar> eqs;
  std::map<Var, Scalar> zero;
  std::set<std::string> nonzero;
};

class Checker {
public:
  Checker(const AlgebraSpec& s, const GenericAnsatz& a, const Certificate& c, const Assignment& inst)
      : spec_(s), ansatz_(a), cert_(c) {
    for (const auto& p : s.params) symbols_[p.name] = Scalar::variable(p.var());
    for (const auto& [k, v] : inst) symbols_[k] = Scalar(v);
    for (const auto& u : a.unknowns) symbols_[u.name] = Scalar::variable(u.var()), unknown_[u.name] = u;
    for (const auto& u : a.theta_unknowns) symbols_[u.name] = Scalar::variable(u.var()), unknown_[u.name] = u;
    auto minors = positivity_check(a.Omega).minors;
    for (std::size_t k = 0; k < minors.size(); ++k) minor_["minor" + std::to_string(k + 1)] = minors[k];
  }

  CheckResult run() {
    CheckResult r;
    try {
      check_atoms();
      Branch root;
      auto res = ansatz_residual(ansatz_);
      for (std::size_t i = 0; i < res.equations.size(); ++i) {
        root.eqs[res.equations[i].label] = res.equations[i].value;
        root.eqs["#" + std::to_string(i)] = res.equations[i].value;
      }
      visit(cert_.tree, root);
      r.valid = true;
    } catch (const Invalid& e) {
      r.step = e.step;
      r.message = e.message;
    }
    r.nodes = static_cast<std::size_t>(step_);
    return r;
  }

private:
  const AlgebraSpec& spec_;
  const GenericAnsatz& ansatz_;
  const Certificate& cert_;
  std::map<std::string, Scalar> symbols_;
  std::map<std::string, Unknown> unknown_;
  std::map<std::string, Scalar> minor_;
  std::set<std::string> strict_;
  int step_ = 0;

  [[noreturn]] void fail(int step, const std::string& m) { throw Invalid{step, m}; }

  void check_atoms() {
    for (const auto& a : cert_.atoms) {
      if (auto it = unknown_.find(a); it != unknown_.end() && it->second.positive) {
        strict_.insert(a);
        continue;
      }
      if (minor_.count(a)) {
        strict_.insert(a);
        continue;
      }
      const ParamDecl* p = spec_.find_param(a);
      if (p && p->positive && !p->complex) {
        strict_.insert(a);
        continue;
      }
      fail(0, "atom '" + a + "' is not a positive unknown, positive parameter or leading minor");
    }
  }

  Scalar expr(const nlohmann::json& node, const char* key, const Branch& b, int step) {
    if (!node.contains(key)) fail(step, std::string("missing field '") + key + "'");
    const auto& v = node.at(key);
    std::string text = v.is_string() ? v.get<std::string>() : v.dump();
    try {
      return parse_scalar(text, symbols_).substitute(b.zero);
    } catch (const std::exception& e) {
      fail(step, std::string("cannot parse '") + text + "': " + e.what());
    }
  }

  const Scalar& equation(const Branch& b, const std::string& ref, int step) {
    auto it = b.eqs.find(ref);
    if (it == b.eqs.end()) fail(step, "unknown equation '" + ref + "'");
    return it->second;
  }

  std::string ref_of(const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : "#" + v.dump(); }

  void store(Branch& b, const nlohmann::json& node, const Scalar& value, int step) {
    if (!node.contains("id") || !node.at("id").is_string()) fail(step, "derived equation needs an id");
    b.eqs[node.at("id").get<std::string>()] = value;
  }

  bool nonzero_var(const Var& v, const Branch& b) const {
    if (b.nonzero.count(v.name)) return true;
    if (strict_.count(v.name)) return true;
    if (const ParamDecl* p = spec_.find_param(v.name); p && (p->nonzero || p->positive)) return true;
    return false;
  }

  /// A single nonzero term whose indeterminates are all known to be nonzero.
  bool nonzero_factor(const Scalar& f, const Branch& b) const {
    if (!f.is_monomial()) return false;
    for (const auto& [v, e] : f.terms().begin()->first)
      if (!nonzero_var(v, b)) return false;
    return true;
  }

  void visit(const nlohmann::json& start, Branch b) {
    for (const nlohmann::json* cur = &start;;) {
      const nlohmann::json& node = *cur;
      int step = step_++;
      if (!node_ok(node)) fail(step, "node is not an object with a kind");
      std::string kind = node.at("kind").get<std::string>();
      if (kind == "combine") {
        if (!node.contains("terms") || !node.at("terms").is_array() || node.at("terms").empty())
          fail(step, "combine needs terms");
        Scalar sum;
        for (const auto& t : node.at("terms")) {
          if (!t.contains("eq")) fail(step, "combine term needs eq");
          sum += expr(t, "coeff", b, step) * equation(b, ref_of(t.at("eq")), step);
        }
        Scalar result = expr(node, "result", b, step);
        if (sum != result) fail(step, "combination is " + sum.to_string() + ", not " + result.to_string());
        store(b, node, result, step);
      } else if (kind == "cancel") {
        if (!node.contains("from")) fail(step, "cancel needs from");
        const Scalar& from = equation(b, ref_of(node.at("from")), step);
        Scalar factor = expr(node, "factor", b, step);
        Scalar result = expr(node, "result", b, step);
        if (!nonzero_factor(factor, b)) fail(step, "factor " + factor.to_string() + " is not known to be nonzero");
        if (factor * result != from) fail(step, "factor times result differs from the equation");
        store(b, node, result, step);
      } else if (kind == "conjugate") {
        if (!node.contains("from")) fail(step, "conjugate needs from");
        Scalar c = equation(b, ref_of(node.at("from")), step).conj();
        Scalar result = expr(node, "result", b, step);
        if (c != result) fail(step, "conjugate is " + c.to_string());
        store(b, node, result, step);
      } else if (kind == "split") {
        std::string var = node.value("var", "");
        auto it = unknown_.find(var);
        if (it == unknown_.end()) fail(step, "split on unknown '" + var + "'");
        if (!node.contains("zero") || !node.contains("nonzero")) fail(step, "split needs both branches");
        Branch z = b;
        const Unknown& u = it->second;
        if (u.complex) {
          z.zero[Var::holo(var)] = Scalar();
          z.zero[Var::anti(var)] = Scalar();
        } else {
          z.zero[Var::real(var)] = Scalar();
        }
        for (auto& [k, e] : z.eqs) e = e.substitute(z.zero);
        Branch nz = b;
        nz.nonzero.insert(var);
        visit(node.at("zero"), z);
        visit(node.at("nonzero"), nz);
        return;
      } else if (kind == "contradiction") {
        leaf(node, b, step);
        return;
      } else {
        fail(step, "unknown node kind '" + kind + "'");
      }
      if (!node.contains("next")) fail(step, "chain ends without a contradiction");
      cur = &node.at("next");
    }
  }

  static bool node_ok(const nlohmann::json& node) {
    return node.is_object() && node.contains("kind") && node.at("kind").is_string();
  }

  void leaf(const nlohmann::json& node, const Branch& b, int step) {
    if (!node.contains("eq")) fail(step, "contradiction needs eq");
    const Scalar& e = equation(b, ref_of(node.at("eq")), step);
    if (!node.contains("terms") || !node.at("terms").is_array() || node.at("terms").empty())
      fail(step, "contradiction needs terms");
    Scalar sum;
    bool some_strict = false;
    for (const auto& t : node.at("terms")) {
      if (!t.contains("coeff")) fail(step, "term needs coeff");
      std::string ctext = t.at("coeff").is_string() ? t.at("coeff").get<std::string>() : t.at("coeff").dump();
      GaussRational c;
      try {
        c = parse_constant(ctext);
      } catch (const std::exception&) {
        fail(step, "coefficient '" + ctext + "' is not a constant");
      }
      if (!c.is_real() || sgn(c.re()) <= 0) fail(step, "coefficient " + c.to_string() + " is not positive");
      Scalar prod(c);
      bool strict = true;
      if (t.contains("factors"))
        for (const auto& fj : t.at("factors")) {
          std::string f = fj.get<std::string>();
          if (f.rfind("sq:", 0) == 0) {
            std::string x = f.substr(3);
            auto it = unknown_.find(x);
            if (it == unknown_.end() || it->second.complex) fail(step, "sq: needs a real unknown, got " + x);
            prod *= Scalar::variable(Var::real(x)).pow(2);
            strict = strict && (b.nonzero.count(x) || strict_.count(x));
          } else if (f.rfind("abs2:", 0) == 0) {
            std::string x = f.substr(5);
            auto it = unknown_.find(x);
            if (it == unknown_.end() || !it->second.complex) fail(step, "abs2: needs a complex unknown, got " + x);
            prod *= Scalar::variable(Var::holo(x)) * Scalar::variable(Var::anti(x));
            strict = strict && b.nonzero.count(x);
          } else if (strict_.count(f)) {
            prod *= minor_.count(f) ? minor_.at(f) : Scalar::variable(Var::real(f));
          } else {
            fail(step, "factor '" + f + "' is not a declared atom");
          }
        }
      sum += prod.substitute(b.zero);
      some_strict = some_strict || strict;
    }
    if (!some_strict) fail(step, "no summand is strictly positive");
    if (sum != e) fail(step, "equation " + e.to_string() + " is not the positive combination " + sum.to_string());
  }
};

}  // namespace

CheckResult certificate_check(const AlgebraSpec& s, const GenericAnsatz& a, const Certificate& c,
                              const Assignment& instance) {
  if (c.mode != a.mode) {
    CheckResult r;
    r.step = 0;
    r.message = "certificate is for mode " + mode_name(c.mode) + ", ansatz is " + mode_name(a.mode);
    return r;
  }
  return Checker(s, a, c, instance).run();
}

CertifyReport certify(const AlgebraSpec& s, const Certificate& c) {
  CertifyReport rep;
  AnsatzOptions opt = certificate_options(c);
  std::vector<Assignment> runs = c.instances;
  if (runs.empty() || c.raw.value("symbolic", false)) runs.insert(runs.begin(), Assignment{});
  for (const auto& inst : runs) {
    std::string label;
    for (const auto& [k, v] : inst) label += (label.empty() ? "" : ",") + k + "=" + v.to_string();
    CheckResult r;
    try {
      AlgebraSpec si = inst.empty() ? s : instantiate(s, inst);
      GenericAnsatz a = build_ansatz(si, c.mode, opt);
      r = certificate_check(si, a, c, inst);
    } catch (const ValidationError& e) {
      r.step = 0;
      r.message = e.what();
    }
    rep.valid = rep.valid && r.valid;
    rep.runs.emplace_back(label.empty() ? "symbolic" : label, r);
  }
  return rep;
}

std::string data_dir() {
  if (const char* env = std::getenv("INVARFORMS_DATA")) return env;
  return INVARFORMS_DATA_DIR;
}

std::vector<std::string> shipped_certificates() {
  std::vector<std::string> out;
  std::filesystem::path dir = std::filesystem::path(data_dir()) / "certificates";
  if (!std::filesystem::exists(dir)) return out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".json") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace invarforms
