#include "invarforms/catalog.hpp"
#include "invarforms/certificate.hpp"
#include "invarforms/expr.hpp"
#include "invarforms/feasibility.hpp"
#include "invarforms/fixtures.hpp"
#include "invarforms/linalg.hpp"
#include "invarforms/operators.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace invarforms;

namespace {

Form form(const AlgebraSpec& s, const std::string& text) {
  SymbolTable t = s.symbols();
  return parse_form(text, t);
}

GaussRational value(const Witness& w, const std::string& name) {
  auto it = w.values.find(name);
  return it == w.values.end() ? GaussRational() : it->second;
}

// Dense Gauss-Jordan nullity, independent of the library's elimination.
std::size_t naive_nullity(std::vector<std::vector<GaussRational>> m, std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c].is_zero()) continue;
      GaussRational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return cols - rank;
}

}  // namespace

TEST_CASE("ansatz dimensions and closedness constraints") {
  GenericAnsatz full = build_ansatz(load_catalog("class1"), StructureMode::Lcht);
  CHECK(full.real_dimension() == 15);
  CHECK(build_ansatz(load_catalog("torus(3)"), StructureMode::LcK).real_dimension() == 9);

  auto constraints = [](const std::string& name, const Assignment& at = {}) {
    AlgebraSpec s = load_catalog(name);
    if (!at.empty()) s = instantiate(s, at);
    return build_ansatz(s, StructureMode::Lcht, fixture_options(name)).theta_constraints;
  };
  CHECK(constraints("class7") == std::vector<std::string>{"a = conj(a)", "b = 0", "c = 0"});
  CHECK(constraints("class1") == std::vector<std::string>{"a = 0", "b = 0"});
  CHECK(constraints("class2") == std::vector<std::string>{"b = 0", "c = 0"});
  CHECK(constraints("class3", {{"A", GaussRational::i()}, {"s11", 1}, {"s22", 2}, {"s12", 0}}) ==
        std::vector<std::string>{"a = 0", "b = 0", "c = conj(c)"});

  // Ω and θ are real
  for (const char* name : {"class2", "h19minus_Jplus", "nakamura"}) {
    GenericAnsatz a = build_ansatz(load_catalog(name), StructureMode::Lcht, fixture_options(name));
    CHECK(is_real_form(a.Omega));
    CHECK(is_real_form(a.theta));
  }
}

TEST_CASE("residual systems") {
  SUBCASE("h3 J+ lcK pair") {
    AlgebraSpec s = load_catalog("h3_Jplus");
    Form w = form(s, "i*phi1^cphi1 + i*phi2^cphi2 + i*phi3^cphi3");
    Form th = form(s, "phi3 + cphi3");
    CHECK(residual_conformal(s, w, th, 1).empty());
    CHECK(positivity_check(w).positive == true);
    // lcK implies lcb with Lee form (n-1)θ
    CHECK(residual_conformal(s, w, Scalar(2) * th, 2).empty());
    CHECK_FALSE(residual_conformal(s, w, Form(s.frame), 1).empty());
  }
  SUBCASE("h3 J- generic coefficient") {
    GenericAnsatz a = build_ansatz(load_catalog("h3_Jminus"), StructureMode::Lcht, fixture_options("h3_Jminus"));
    ResidualSystem sys = ansatz_residual(a);
    const ResidualEquation* e = sys.find("13b3");
    REQUIRE(e);
    std::string got = e->value.to_string();
    INFO(got);
    CHECK(e->value == parse_scalar("-i*alpha*t2 - gamma*B", a.symbols().symbols));
  }
  SUBCASE("class (2) cell") {
    AlgebraSpec s = load_catalog("class2");
    GenericAnsatz a = build_ansatz(s, StructureMode::Lcht, fixture_options("class2"));
    ResidualSystem sys = ansatz_residual(a);
    const ResidualEquation* e = sys.find("12b3");
    REQUIRE(e);
    std::string got = e->value.to_string();
    INFO(got);
    // dΩ entry minus the θ∧Ω entry, with b = c = 0
    CHECK(e->value == parse_scalar("-g*s2 + i/2*t2 - a*v", a.symbols().symbols));
  }
  SUBCASE("closed forms on the torus") {
    AlgebraSpec s = load_catalog("torus(3)");
    Form w = form(s, "i*phi1^cphi1 + 2*i*phi2^cphi2 + i*phi3^cphi3 + phi1^cphi2 - cphi1^phi2");
    for (int m = 1; m <= 3; ++m) CHECK(residual_conformal(s, w, Form(s.frame), m).empty());
  }
  SUBCASE("non-closed theta is rejected") {
    AlgebraSpec s = load_catalog("h3_Jplus");
    Form w = form(s, "i*phi1^cphi1 + i*phi2^cphi2 + i*phi3^cphi3");
    CHECK_THROWS_AS(residual_conformal(s, w, form(s, "phi3 + cphi3 + phi1^cphi1"), 1), std::exception);
    CHECK_THROWS_AS(residual_conformal(s, w, form(s, "i*phi3 - i*cphi3"), 1), ValidationError);
  }
}

TEST_CASE("positivity") {
  AlgebraSpec s = load_catalog("torus(3)");
  CHECK(positivity_check(form(s, "i*phi1^cphi1 + i*phi2^cphi2 + i*phi3^cphi3")).positive == true);
  AlgebraSpec k = load_catalog("nakamura");
  GenericAnsatz a = build_ansatz(k, StructureMode::Balanced, fixture_options("nakamura"));
  std::map<Var, Scalar> at{{Var::real("A"), Scalar(1)}, {Var::real("B"), Scalar(1)}, {Var::real("C"), Scalar(1)}};
  for (const char* z : {"D", "E", "F"}) {
    at[Var::holo(z)] = Scalar();
    at[Var::anti(z)] = Scalar();
  }
  CHECK(positivity_check(a.Omega.substitute(at)).positive == true);

  // r2 = s2 = 1, u = 2: the 2x2 minor is 1 - 4
  AlgebraSpec t2 = load_catalog("torus4");
  PositivityProfile p = positivity_check(form(t2, "i*phi1^cphi1 + i*phi2^cphi2 + 2*phi1^cphi2 - 2*phi2^cphi1"));
  CHECK(p.positive == false);
  REQUIRE(p.minors.size() == 2);
  CHECK(p.minors[1] == Scalar(-3));

  // symbolic minors of the full 3x3 system
  PositivityProfile sym = positivity_check(a.Omega);
  CHECK_FALSE(sym.positive.has_value());
  CHECK(sym.minors[0] == parse_scalar("A", a.symbols().symbols));
  CHECK(sym.minors[1] == parse_scalar("A*B - D*conj(D)", a.symbols().symbols));
}

TEST_CASE("witness search") {
  SUBCASE("primary Kodaira lcK") {
    AlgebraSpec s = load_catalog("kodaira_primary");
    SearchOptions opt;
    opt.names = NamingScheme::surface();
    auto w = witness_search(s, StructureMode::LcK, opt);
    REQUIRE(w);
    CHECK(verify_witness(s, StructureMode::LcK, *w));
    GaussRational A = value(*w, "A"), B = value(*w, "B"), D = value(*w, "D");
    GaussRational K = A * B - GaussRational(D.norm2());
    CHECK(value(*w, "a") == -(B * D) / (GaussRational(2) * K));
    CHECK(value(*w, "b") == -(GaussRational::i() * B * B) / (GaussRational(2) * K));
  }
  SUBCASE("torus kahler") {
    AlgebraSpec s = load_catalog("torus(3)");
    auto w = witness_search(s, StructureMode::Kahler, SearchOptions{});
    REQUIRE(w);
    CHECK(w->theta.is_zero());
    CHECK(verify_witness(s, StructureMode::Kahler, *w));
  }
  SUBCASE("class (1) at A = i") {
    AlgebraSpec s = instantiate(load_catalog("class1"), {{"A", GaussRational::i()}});
    SearchOptions opt;
    opt.theta_hints = fixture_theta_hints("class1", s);
    auto w = witness_search(s, StructureMode::LcK, opt);
    REQUIRE(w);
    CHECK(verify_witness(s, StructureMode::LcK, *w));
    CHECK(value(*w, "u").is_zero());
    CHECK(value(*w, "M") == value(*w, "z"));
    CHECK(value(*w, "N") == value(*w, "v"));
    CHECK(residual_conformal(s, w->Omega, Scalar(2) * w->theta, 2).empty());
  }
  SUBCASE("class (3) at A = ±i") {
    for (GaussRational A : {GaussRational::i(), -GaussRational::i()}) {
      AlgebraSpec s = instantiate(load_catalog("class3"), {{"A", A}, {"s11", 1}, {"s22", 2}, {"s12", 0}});
      SearchOptions opt;
      opt.theta_hints = fixture_theta_hints("class3", s);
      auto w = witness_search(s, StructureMode::LcK, opt);
      REQUIRE(w);
      CHECK(verify_witness(s, StructureMode::LcK, *w));
    }
  }
  SUBCASE("deterministic") {
    AlgebraSpec s = load_catalog("kodaira_secondary");
    SearchOptions opt;
    opt.names = NamingScheme::surface();
    opt.seed = 7;
    auto a = witness_search(s, StructureMode::Lcht, opt);
    auto b = witness_search(s, StructureMode::Lcht, opt);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(a->values == b->values);
  }
  SUBCASE("symbolic parameters are rejected") {
    CHECK_THROWS_AS(witness_search(load_catalog("class1"), StructureMode::LcK, SearchOptions{}), ValidationError);
  }
  SUBCASE("tampered witness fails") {
    AlgebraSpec s = load_catalog("h3_Jplus");
    Witness w;
    w.Omega = form(s, "i*phi1^cphi1 + i*phi2^cphi2 + i*phi3^cphi3");
    w.theta = form(s, "phi3 + cphi3");
    CHECK(verify_witness(s, StructureMode::LcK, w));
    w.theta = form(s, "2*phi3 + 2*cphi3");
    std::vector<std::string> why;
    CHECK_FALSE(verify_witness(s, StructureMode::LcK, w, 1, &why));
    CHECK_FALSE(why.empty());
  }
}

TEST_CASE("surface witness formulas") {
  for (const auto& fam : surface_families()) {
    for (const auto& point : fam.points) {
      AlgebraSpec s = instantiate(load_catalog(fam.catalog), point);
      for (StructureMode mode : {StructureMode::LcK, StructureMode::Lcht}) {
        for (const auto& x : surface_samples()) {
          auto w = surface_witness(fam.catalog, mode, point, x);
          bool none_expected =
              fam.catalog == "inoue_Spm" && mode == StructureMode::LcK && !point.at("q").is_zero();
          CHECK(w.has_value() == !none_expected);
          if (!w) continue;
          CAPTURE(fam.catalog);
          CAPTURE(mode_name(mode));
          CHECK(verify_witness(s, mode, *w));
        }
      }
    }
  }
}

TEST_CASE("d_theta exactness") {
  SUBCASE("heis5 x R") {
    AlgebraSpec s = load_catalog("heis5xR");
    Form om = form(s, "e1^e2 + e3^e4 + e5^e6");
    Form th = form(s, "-e5");
    auto beta = d_theta_exact_solve(s, om, th);
    REQUIRE(beta);
    CHECK(exterior_d(s, *beta) - wedge(th, *beta) == om);
    // e6 is a solution, so every solution differs from it by a d_θ-closed 1-form
    Form e6 = form(s, "e6");
    CHECK(exterior_d(s, e6) - wedge(th, e6) == om);
  }
  SUBCASE("exact form with theta = 0") {
    AlgebraSpec s = load_catalog("h3");
    Form b0 = form(s, "e6 + 2*e1");
    Form om = exterior_d(s, b0);
    auto beta = d_theta_exact_solve(s, om, Form(s.frame));
    REQUIRE(beta);
    CHECK(exterior_d(s, *beta) == om);
  }
  SUBCASE("h3 J+ lcK data") {
    AlgebraSpec s = load_catalog("h3_Jplus");
    Form w = form(s, "i*phi1^cphi1 + i*phi2^cphi2 + i*phi3^cphi3");
    Form th = form(s, "phi3 + cphi3");
    auto beta = d_theta_exact_solve(s, w, th);
    REQUIRE(beta);
    CHECK(exterior_d(s, *beta) - wedge(th, *beta) == w);
  }
  SUBCASE("not d_theta closed") {
    AlgebraSpec s = load_catalog("h3");
    CHECK_THROWS_AS(d_theta_exact_solve(s, form(s, "e5^e6"), Form(s.frame)), ValidationError);
  }
}

TEST_CASE("contact search") {
  ContactResult heis = contact_search(load_catalog("heis5"));
  REQUIRE(heis.alpha);
  std::map<Var, Scalar> e5;
  for (int j = 1; j <= 5; ++j) e5[Var::real("x" + std::to_string(j))] = Scalar(j == 5 ? 1 : 0);
  CHECK(heis.polynomial.substitute(e5) == Scalar(2));

  ContactResult flat = contact_search(load_catalog("r5"));
  CHECK(flat.polynomial.is_zero());
  CHECK_FALSE(flat.alpha);

  for (const auto& name : contact5_list()) {
    AlgebraSpec s = parse_salamon(name);
    ContactResult r = contact_search(s);
    REQUIRE(r.alpha);
    Form da = exterior_d(s, *r.alpha);
    CHECK_FALSE(top_coefficient(wedge(*r.alpha, wedge(da, da))).is_zero());
  }
  CHECK_THROWS_AS(contact_search(load_catalog("h3")), ValidationError);
  CHECK_THROWS_AS(contact_search(load_catalog("torus(3)")), ValidationError);
}

TEST_CASE("k-Gauduchon scalar") {
  AlgebraSpec t = load_catalog("torus(3)");
  CHECK(k_gauduchon_scalar(t, form(t, "i*phi1^cphi1 + 3*i*phi2^cphi2 + i*phi3^cphi3"), 1).is_zero());

  // every invariant Hermitian metric on h8 is pluriclosed
  AlgebraSpec h8 = load_catalog("h8");
  GenericAnsatz a = build_ansatz(h8, StructureMode::Balanced);
  CHECK(del(h8, delbar(h8, a.Omega)).is_zero());
  Form w8 = form(h8, "2*i*phi1^cphi1 + i*phi2^cphi2 + i*phi3^cphi3 + phi1^cphi2 - cphi1^phi2");
  CHECK(k_gauduchon_scalar(h8, w8, 1).is_zero());

  AlgebraSpec nk = instantiate(load_catalog("nakamura"), {{"t", GaussRational(1) / GaussRational(2)}});
  Form wn = form(nk, "i*phi1^cphi1 + i*phi2^cphi2 + i*phi3^cphi3");
  Scalar c = k_gauduchon_scalar(nk, wn, 1);
  REQUIRE(c.is_constant());
  GaussRational cv = c.constant_value();
  CHECK(cv.is_real());
  CHECK(sgn(cv.re()) > 0);
  CHECK_THROWS_AS(k_gauduchon_scalar(nk, wn, 0), ValidationError);
  CHECK_THROWS_AS(k_gauduchon_scalar(nk, wn, 3), ValidationError);
}

TEST_CASE("positivity coefficient") {
  AlgebraSpec s = load_catalog("torus(3)");
  Form w = form(s, "i*phi1^cphi1 + i*phi2^cphi2 + i*phi3^cphi3");
  Form w2 = form(s, "2*i*phi1^cphi1 + i*phi2^cphi2 + i*phi3^cphi3");
  Form th = form(s, "phi1 + cphi1");
  CHECK(positivity_coefficient(s, Form(s.frame), w).is_zero());
  GaussRational one = positivity_coefficient(s, th, w);
  // |α₁|²/(n A₁) with the ωⁿ normalization
  CHECK(one == GaussRational(1) / GaussRational(3));
  CHECK(positivity_coefficient(s, th, w2) == one / GaussRational(2));
  // nonnegative, and zero exactly when θ^{1,0} = 0
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    Form t = Scalar(GaussRational(d(rng), d(rng))) * Form::phi(s.frame, 1) +
             Scalar(GaussRational(d(rng), d(rng))) * Form::phi(s.frame, 3);
    t = t + conjugate_form(t);
    GaussRational p = positivity_coefficient(s, t, w2);
    CHECK(p.is_real());
    CHECK(sgn(p.re()) >= 0);
    CHECK(p.is_zero() == bidegree_project(t, 1, 0).is_zero());
  }
}

TEST_CASE("twisted kernel against a dense oracle") {
  struct Case {
    const char* name;
    std::vector<std::string> thetas;
  };
  std::vector<Case> cases{
      {"h3", {"e5", "-e1 + 2*e3", "e2 + e4 - e5"}},
      {"heis3", {"e1", "e1 - e2"}},
      {"h3_Jplus", {"phi3 + cphi3", "phi1 + cphi1 - i*phi2 + i*cphi2"}},
      {"kodaira_primary", {"phi1 + cphi1", "i*phi2 - i*cphi2"}},
  };
  for (const auto& c : cases) {
    AlgebraSpec s = load_catalog(c.name);
    for (const auto& text : c.thetas) {
      Form th = form(s, text);
      REQUIRE(exterior_d(s, th).is_zero());
      for (int k = 1; k <= 2; ++k) {
        auto src = basis(s.frame, k), dst = basis(s.frame, k + 1);
        std::vector<std::vector<GaussRational>> dense(dst.size(), std::vector<GaussRational>(src.size()));
        for (std::size_t j = 0; j < src.size(); ++j) {
          Form x = Form::monomial(s.frame, src[j]);
          Form img = exterior_d(s, x) - wedge(th, x);
          for (std::size_t i = 0; i < dst.size(); ++i) {
            Scalar v = img.coefficient(dst[i]);
            if (!v.is_zero()) dense[i][j] = v.constant_value();
          }
        }
        Matrix m = twisted_d(s, th, TwistVariant::Plain, GaussRational(1), k).numeric();
        auto ker = kernel(m);
        CAPTURE(c.name);
        CAPTURE(text);
        CHECK(ker.size() == naive_nullity(dense, src.size()));
        for (const auto& v : ker) {
          Form x(s.frame);
          for (std::size_t j = 0; j < src.size(); ++j)
            if (!v[j].is_zero()) x += Form::monomial(s.frame, src[j], Scalar(v[j]));
          CHECK((exterior_d(s, x) - wedge(th, x)).is_zero());
        }
      }
    }
  }
}

TEST_CASE("split parameter factor") {
  Scalar p = parse_scalar("(1+t)*(1+conj(t))*B", {{"t", Scalar::variable(Var::holo("t"))},
                                                  {"B", Scalar::variable(Var::real("B"))}});
  auto sp = split_parameter_factor(p, {Var::real("B")});
  REQUIRE(sp);
  CHECK(sp->second == Scalar::variable(Var::real("B")));
  Scalar q = p + Scalar::variable(Var::real("C"));
  CHECK_FALSE(split_parameter_factor(q, {Var::real("B"), Var::real("C")}));
}

TEST_CASE("Nakamura identities") {
  NakamuraReport r = nakamura_checks();
  CHECK(r.ddbar_closed_form);
  CHECK(r.ddbar_wedge);
  CHECK(r.pluriclosed_forces_BCF);
  CHECK(r.pluriclosed_factors == std::vector<std::string>{"B", "C", "F"});
  CHECK(r.balanced);
  CHECK(r.dOmega_expansion);
}

TEST_CASE("coefficient table") {
  nlohmann::json t = load_table3();
  // the transcription disagrees only where the table contradicts its own
  // conjugation symmetry
  TableReproduction literal = reproduce_table(t);
  auto conflicts = table_conjugation_conflicts(t);
  CHECK_FALSE(conflicts.empty());
  std::set<std::pair<std::string, std::string>> flagged;
  for (const auto& c : conflicts) {
    std::string col = c.column == "theta_wedge_omega" ? "theta^Omega" : c.column;
    flagged.insert({col, c.row});
    flagged.insert({col, c.partner});
  }
  std::map<std::string, std::string> column_of;
  for (const auto& cls : t.at("classes"))
    column_of[cls.at("name").get<std::string>()] = cls.at("column").get<std::string>();
  CHECK_FALSE(literal.mismatches().empty());
  for (const auto* m : literal.mismatches()) {
    std::string col = m->column == "theta^Omega" ? "theta^Omega" : column_of.at(m->klass);
    CAPTURE(m->klass);
    CAPTURE(m->row);
    CHECK(flagged.count({col, m->row}) == 1);
  }
  TableReproduction fixed = reproduce_table(t, true);
  CHECK(fixed.all_match());
  CHECK(table_conjugation_conflicts(t, true).empty());
  CHECK(fixed.points.at("class (1)") >= 3);
  CHECK(fixed.points.at("class (2)") >= 3);
  CHECK(fixed.points.at("class (3)") >= 3);
  CHECK(fixed.points.at("class (4)") >= 3);
}

namespace {

CertifyReport run_certificate(const Certificate& c) { return certify(load_catalog(c.spec), c); }

void collect(nlohmann::json& j, std::vector<std::pair<std::string, nlohmann::json*>>& out) {
  if (j.is_object()) {
    for (auto& [k, v] : j.items()) {
      if (k == "result" || k == "factor" || k == "coeff" || k == "eq" || k == "from" || k == "kind")
        out.emplace_back(k, &v);
      collect(v, out);
    }
  } else if (j.is_array()) {
    for (auto& v : j) collect(v, out);
  }
}

std::string as_text(const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

TEST_CASE("shipped certificates") {
  auto paths = shipped_certificates();
  CHECK(paths.size() >= 12);
  for (const auto& p : paths) {
    Certificate c = load_certificate(p);
    CertifyReport r = run_certificate(c);
    CAPTURE(p);
    for (const auto& [inst, res] : r.runs) {
      CAPTURE(inst);
      CAPTURE(res.message);
      CHECK(res.valid);
    }
    CHECK(r.valid);
  }
}

TEST_CASE("certificate rejection") {
  Certificate h3 = load_certificate(data_dir() + "/certificates/h3_Jminus_lcht.json");
  SUBCASE("undeclared atom") {
    nlohmann::json raw = h3.raw;
    raw["atoms"] = nlohmann::json::array();
    CHECK_FALSE(run_certificate(parse_certificate(raw.dump())).valid);
  }
  SUBCASE("degenerate metric") {
    // with r2 = 0 the leaf's strict factor is no longer positive
    nlohmann::json raw = h3.raw;
    raw["atoms"] = nlohmann::json::array({"s2"});
    CertifyReport r = run_certificate(parse_certificate(raw.dump()));
    CHECK_FALSE(r.valid);
  }
  SUBCASE("chain without contradiction") {
    CHECK_THROWS_AS(parse_certificate("{\"name\":\"x\""), ParseError);
    nlohmann::json raw = h3.raw;
    raw["tree"] = nlohmann::json{{"kind", "conjugate"}, {"id", "x"}, {"from", "#0"}, {"result", "0"}};
    CHECK_FALSE(run_certificate(parse_certificate(raw.dump())).valid);
  }
}

TEST_CASE("certificate fuzz") {
  auto paths = shipped_certificates();
  REQUIRE_FALSE(paths.empty());
  std::mt19937 rng(2024);
  int rejected = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Certificate c = load_certificate(paths[rng() % paths.size()]);
    nlohmann::json raw = c.raw;
    std::vector<std::pair<std::string, nlohmann::json*>> fields;
    collect(raw["tree"], fields);
    REQUIRE_FALSE(fields.empty());
    auto& [key, v] = fields[rng() % fields.size()];
    std::string old = as_text(*v);
    if (key == "kind") *v = "bogus";
    else if (key == "eq" || key == "from") *v = "no_such_equation";
    else *v = "(" + old + ") + 1";
    CAPTURE(c.name);
    CAPTURE(key);
    CAPTURE(old);
    bool valid = true;
    try {
      valid = run_certificate(parse_certificate(raw.dump())).valid;
    } catch (const ParseError&) {
      valid = false;
    }
    CHECK_FALSE(valid);
    rejected += !valid;
  }
  CHECK(rejected == 100);
}
