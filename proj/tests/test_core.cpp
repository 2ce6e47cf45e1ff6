#include "invarforms/catalog.hpp"
#include "invarforms/expr.hpp"
#include "invarforms/form.hpp"
#include "invarforms/spec.hpp"

#include <doctest.h>

#include <random>

using namespace invarforms;

namespace {

Frame C3 = Frame::complex_rank(3);

Form F(const std::string& text, const SymbolTable& t) { return parse_form(text, t); }

SymbolTable table(Frame f, std::initializer_list<Var> vars = {}) {
  SymbolTable t;
  t.frame = f;
  for (const auto& v : vars) t.add(v);
  return t;
}

Scalar random_scalar(std::mt19937& rng) {
  static const Var vars[] = {Var::real("r"), Var::holo("u"), Var::anti("u"), Var::holo("w"), Var::anti("w")};
  std::uniform_int_distribution<int> small(-3, 3);
  std::uniform_int_distribution<int> pick(0, 4);
  std::uniform_int_distribution<int> nterms(0, 3);
  Scalar s;
  for (int k = nterms(rng); k > 0; --k) {
    Scalar t(GaussRational(mpq_class(small(rng), 1 + std::abs(small(rng))), small(rng)));
    for (int f = pick(rng) % 3; f > 0; --f) t *= Scalar::variable(vars[pick(rng)], 1 + pick(rng) % 2);
    s += t;
  }
  return s;
}

}  // namespace

TEST_CASE("wedge sorts with the permutation sign") {
  auto t = table(C3);
  CHECK(wedge(F("phi1", t), F("phi1", t)).is_zero());
  CHECK(wedge(F("phi1", t), F("cphi1", t)) == -wedge(F("cphi1", t), F("phi1", t)));
  // 1,2,1b,2b: no inversions
  Form w = wedge(F("phi1^phi2", t), F("cphi1^cphi2", t));
  CHECK(w.coefficient(parse_monomial_label(C3, "12b12")) == Scalar(1));
  // phi^{1 1b} ^ phi^2 -> phi^{1 2 1b} with one swap
  CHECK(wedge(F("phi1^cphi1", t), F("phi2", t)).coefficient(parse_monomial_label(C3, "12b1")) == Scalar(-1));
}

TEST_CASE("conjugation of forms") {
  auto t = table(C3, {Var::real("r2"), Var::holo("u")});
  CHECK(conjugate_form(F("phi1", t)) == F("cphi1", t));
  Form real = F("i*r2*phi1^cphi1", t);
  CHECK(conjugate_form(real) == real);
  // u phi^{1 2b} -> conj(u) phi^{1b 2} = -conj(u) phi^{2 1b}
  CHECK(conjugate_form(F("u*phi1^cphi2", t)) == F("-conj(u)*phi2^cphi1", t));
  CHECK(is_real_form(F("u*phi1^cphi2 - conj(u)*phi2^cphi1", t)));
}

TEST_CASE("bidegree projections reassemble the form") {
  auto t = table(C3);
  Form a = F("phi1^phi2 + phi1^cphi1 + 3*cphi2^cphi3 + phi1^phi2^cphi3", t);
  CHECK(bidegree_project(F("phi1^phi2 + phi1^cphi1", t), 1, 1) == F("phi1^cphi1", t));
  Form sum(C3);
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q) sum += bidegree_project(a, p, q);
  CHECK(sum == a);
}

TEST_CASE("top coefficient of the standard volume form") {
  auto t = table(C3);
  Form w = F("i*(phi1^cphi1 + phi2^cphi2 + phi3^cphi3)", t);
  Form vol = power(w, 3) * Scalar(GaussRational(mpq_class(1, 6)));
  // phi^{1 1b 2 2b 3 3b} -> phi^{123 1b2b3b}: inversions (1b,2),(1b,3),(2b,3) = 3, sign -1; i^3 = -i
  CHECK(top_coefficient(vol) == Scalar(GaussRational::i()));
  CHECK(top_coefficient(Form(C3)).is_zero());
  CHECK_THROWS(top_coefficient(w));
}

TEST_CASE("scalar ring identities on random polynomials") {
  std::mt19937 rng(7);
  for (int k = 0; k < 1000; ++k) {
    Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE((a * b).conj() == a.conj() * b.conj());
    REQUIRE(a.conj().conj() == a);
    REQUIRE((a - a).terms().empty());
  }
}

TEST_CASE("wedge associativity and graded commutativity") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-2, 2);
  auto rnd = [&](int k) {
    Form f(C3);
    for (Mono m : basis(C3, k))
      if (int c = coef(rng); c != 0) f.add_term(m, Scalar(c));
    return f;
  };
  for (int trial = 0; trial < 60; ++trial) {
    int p = trial % 3 + 1, q = (trial / 3) % 3 + 1, r = 1;
    Form a = rnd(p), b = rnd(q), c = rnd(r);
    REQUIRE(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    Form ab = wedge(a, b), ba = wedge(b, a);
    REQUIRE(ab == (((p * q) % 2) ? -ba : ba));
    REQUIRE(conjugate_form(ab) == wedge(conjugate_form(a), conjugate_form(b)));
  }
}

TEST_CASE("parameter evaluation") {
  AlgebraSpec nak = load_catalog("nakamura");
  Form d2 = evaluate_params(nak.d_table[1], nak, {{"t", GaussRational(mpq_class(1, 2))}});
  auto t = table(C3);
  CHECK(d2 == F("-phi1^phi2 + 1/2*phi2^cphi1", t));
  CHECK(evaluate_params(nak.d_table[1], nak, {}) == nak.d_table[1]);
  AlgebraSpec c1 = load_catalog("class1");
  CHECK(evaluate_params(c1.d_table[0], c1, {{"A", GaussRational::i()}}) == F("i*phi1^phi3 + i*phi1^cphi3", t));
  AlgebraSpec sm = load_catalog("inoue_SM");
  CHECK_THROWS_AS(instantiate(sm, {{"alpha", GaussRational(0)}, {"beta", GaussRational(1)}}), ValidationError);
  AlgebraSpec c2 = load_catalog("class2");
  CHECK_THROWS_AS(instantiate(c2, {{"g", GaussRational(-1)}}), ValidationError);
  CHECK_THROWS_AS(instantiate(c2, {{"g", GaussRational::i()}}), ValidationError);
  AlgebraSpec c4 = load_catalog("class4");
  CHECK_THROWS_AS(instantiate(c4, {{"A", GaussRational(2)}}), ValidationError);
}

TEST_CASE("Salamon notation") {
  AlgebraSpec h3 = parse_salamon("(0,0,0,0,0,12+34)");
  Frame r6 = Frame::real_dim(6);
  CHECK(h3.d_table[5] == parse_form("e1^e2 + e3^e4", table(r6)));
  ValidationReport ab = validate_spec(parse_salamon("(0,0,0,0,0,0)"));
  CHECK(ab.ok());
  CHECK(ab.nilpotent);
  CHECK(ab.unimodular);
  AlgebraSpec bad = parse_salamon("(0,12,13,23)");
  CHECK_FALSE(validate_spec(bad).jacobi_valid);
  CHECK(exterior_d(bad, bad.d_table[3]) == parse_form("2*e1^e2^e3", table(Frame::real_dim(4))));
  CHECK(parse_salamon("(0,0,-1/2*12)").d_table[2] == parse_form("-1/2*e1^e2", table(Frame::real_dim(3))));
  CHECK_THROWS_AS(parse_salamon("(0,0,13"), ParseError);
  CHECK_THROWS_AS(parse_salamon("(0,0,14)"), ParseError);
  CHECK_THROWS_AS(parse_salamon("(0,0,0,0,0,0,0,0,0,0)"), ParseError);
  CHECK_THROWS_AS(parse_salamon("(0,0,1x2)"), ParseError);
}

TEST_CASE("complex DSL and JSON inputs") {
  AlgebraSpec h3p = parse_complex_dsl("frame complex 3\nd phi1 = 0\nd phi2 = 0\nd phi3 = phi1^cphi1 + phi2^cphi2 # J+\n");
  auto t = table(C3);
  CHECK(h3p.d_table[2] == F("phi1^cphi1 + phi2^cphi2", t));
  AlgebraSpec nak = load_catalog("nakamura");
  SymbolTable nt = nak.symbols();
  CHECK(nak.d_table[2] == F("phi1^phi3 - t*phi3^cphi1", nt));
  CHECK_THROWS_AS(parse_complex_dsl("frame complex 2\nd phi1 = s*phi1^phi2\n"), ParseError);
  CHECK_THROWS_AS(parse_complex_dsl("frame complex 2\nd phi3 = 0\n"), ParseError);
  CHECK_THROWS_AS(parse_complex_dsl("frame complex 2\nd phi1 = phi1^(\n"), ParseError);
  AlgebraSpec js = parse_spec_json(
      R"({"frame":"complex","n":3,"params":[{"name":"t","kind":"complex"}],"d":{"phi3":[{"coeff":"1","mon":[1,-1]},{"coeff":"1","mon":[2,-2]}]}})");
  CHECK(js.d_table[2] == h3p.d_table[2]);
  CHECK(js.params.size() == 1);
}

TEST_CASE("serialization round-trips") {
  for (const auto& name : catalog_names()) {
    AlgebraSpec s = load_catalog(name);
    AlgebraSpec back = parse_spec_any(serialize_dsl(s));
    INFO(name);
    CHECK(equal_specs(s, back));
  }
}

TEST_CASE("catalog fixtures validate") {
  for (const auto& name : catalog_names()) {
    ValidationReport r = validate_spec(load_catalog(name));
    INFO(name);
    CHECK(r.jacobi_valid);
    CHECK(r.integrable.value_or(true));
  }
  ValidationReport nak = validate_spec(load_catalog("nakamura"));
  CHECK(nak.unimodular);
  CHECK_FALSE(nak.nilpotent);
  CHECK(validate_spec(load_catalog("h19minus_Jplus")).nilpotent);
  CHECK(validate_spec(load_catalog("h19minus_Jminus")).nilpotent);
  CHECK(*validate_spec(load_catalog("h8")).abelian_J);
  CHECK_FALSE(*validate_spec(load_catalog("h19minus_Jplus")).abelian_J);
  CHECK_THROWS_AS(load_catalog("nope"), std::invalid_argument);
}

TEST_CASE("catalog structure equations") {
  AlgebraSpec spm = load_catalog("inoue_Spm");
  Frame C2 = Frame::complex_rank(2);
  Scalar c = spm.d_table[0].coefficient(parse_monomial_label(C2, "2b2"));
  CHECK(c == Scalar::variable(Var::real("q")) * Scalar(GaussRational(0, mpq_class(1, 2))));
  CHECK(load_catalog("torus(3)").d_table[2].is_zero());
  AlgebraSpec c2 = load_catalog("class2");
  SymbolTable st = c2.symbols();
  CHECK(c2.d_table[2] == F("1/2*phi1^phi2 + (1/2 - i/(4*g))*phi1^cphi2 + i/(4*g)*phi2^cphi1", st));
  AlgebraSpec heis = load_catalog("heis5xR_Jplus");
  CHECK(heis.d_table[2] == F("-1/2*(phi1^cphi1 + phi2^cphi2)", table(C3)));
}
