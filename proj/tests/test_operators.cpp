#include "invarforms/catalog.hpp"
#include "invarforms/expr.hpp"
#include "invarforms/operators.hpp"

#include <doctest.h>

#include <random>

using namespace invarforms;

namespace {

Form F(const std::string& text, const AlgebraSpec& s) { return parse_form(text, s.symbols()); }

Form random_form(const Frame& f, int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  Form out(f);
  for (Mono m : basis(f, k)) {
    if (rng() % 3) continue;
    out.add_term(m, Scalar(GaussRational(coef(rng), coef(rng))));
  }
  return out;
}

struct LcK {
  AlgebraSpec spec;
  MetricData metric;
  Form theta;
};

LcK torus_data() {
  AlgebraSpec s = load_catalog("torus(3)");
  return {s, make_metric(s, F("i*(phi1^cphi1+phi2^cphi2+phi3^cphi3)", s)), Form(s.frame)};
}

LcK h3_data() {
  AlgebraSpec s = load_catalog("h3_Jplus");
  return {s, make_metric(s, F("i*(phi1^cphi1+phi2^cphi2+phi3^cphi3)", s)), F("phi3+cphi3", s)};
}

}  // namespace

TEST_CASE("assemble_d on h3 J+ and class 7") {
  AlgebraSpec h3 = load_catalog("h3_Jplus");
  OperatorMatrix d1 = assemble_d(h3, 1);
  CHECK(d1.rows() == 15);
  CHECK(d1.cols() == 6);
  for (std::size_t c = 0; c < d1.cols(); ++c) {
    Form col = d1.column_form(c);
    if (d1.src_basis[c] == parse_monomial_label(h3.frame, "3"))
      CHECK(col == F("phi1^cphi1 + phi2^cphi2", h3));
    else if (d1.src_basis[c] == parse_monomial_label(h3.frame, "b3"))
      CHECK(col == F("-phi1^cphi1 - phi2^cphi2", h3));
    else
      CHECK(col.is_zero());
  }
  CHECK(assemble_d(load_catalog("torus(3)"), 2).is_zero());
  AlgebraSpec c7 = load_catalog("class7");
  Scalar c = assemble_d(c7, 1).apply(Form::phi(c7.frame, 2)).coefficient(parse_monomial_label(c7.frame, "2b1"));
  CHECK(c == Scalar(GaussRational(0, mpq_class(-1, 2))));
}

TEST_CASE("d squared and Leibniz on fixtures") {
  std::mt19937_64 rng(7);
  for (const char* name : {"h3_Jplus", "h9", "h19minus_Jminus", "class5", "class7", "kodaira_secondary", "heis5xR"}) {
    AlgebraSpec s = load_catalog(name);
    INFO(name);
    int top = s.frame.gens();
    for (int k = 0; k + 2 <= top; ++k) CHECK(compose(assemble_d(s, k + 1), assemble_d(s, k)).is_zero());
    for (int t = 0; t < 200; ++t) {
      int ka = static_cast<int>(rng() % 3), kb = static_cast<int>(rng() % 3);
      Form a = random_form(s.frame, ka, rng), b = random_form(s.frame, kb, rng);
      Form lhs = exterior_d(s, wedge(a, b));
      Form rhs = wedge(exterior_d(s, a), b) + wedge(a, exterior_d(s, b)) * Scalar((ka % 2) ? -1 : 1);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("twisted differentials square to zero") {
  for (const char* name : {"h3_Jplus", "h19minus_Jplus", "kodaira_primary", "inoue_Spm"}) {
    AlgebraSpec s = load_catalog(name);
    if (s.has_params()) s = instantiate(s, {{"q", GaussRational(1)}});
    INFO(name);
    OperatorMatrix d1 = assemble_d(s, 1);
    std::vector<Form> closed;
    Matrix dm = d1.numeric();
    for (const auto& v : kernel(dm)) {
      Form th(s.frame);
      for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) th.add_term(d1.src_basis[i], Scalar(v[i]));
      closed.push_back(th);
    }
    REQUIRE_FALSE(closed.empty());
    for (const Form& th : closed)
      for (int ell : {-1, 1, 2})
        for (int k = 0; k + 2 <= s.frame.gens(); ++k) {
          auto a = twisted_d(s, th, TwistVariant::Plain, GaussRational(ell), k);
          auto b = twisted_d(s, th, TwistVariant::Plain, GaussRational(ell), k + 1);
          CHECK(compose(b, a).is_zero());
          auto ac = twisted_d(s, th, TwistVariant::CTwist, GaussRational(ell), k);
          auto bc = twisted_d(s, th, TwistVariant::CTwist, GaussRational(ell), k + 1);
          CHECK(compose(bc, ac).is_zero());
        }
  }
}

TEST_CASE("twisted differential examples") {
  AlgebraSpec h3 = load_catalog("h3_Jplus");
  Form w = F("i*(phi1^cphi1+phi2^cphi2+phi3^cphi3)", h3);
  Form th = F("phi3+cphi3", h3);
  CHECK(twisted_d_apply(h3, th, GaussRational(1), w).is_zero());
  CHECK(twisted_d(h3, th, TwistVariant::Plain, GaussRational(0), 2).entries == assemble_d(h3, 2).entries);
  CHECK_THROWS_AS(twisted_d(h3, F("phi1^phi2", h3), TwistVariant::Plain, GaussRational(1), 1), ValidationError);
  CHECK_THROWS_AS(twisted_d(load_catalog("h9"), F("phi2", load_catalog("h9")), TwistVariant::Plain, GaussRational(1), 1),
                  ValidationError);
  AlgebraSpec t = load_catalog("torus(3)");
  CHECK(twisted_d(t, Form(t.frame), TwistVariant::Plain, GaussRational(3), 2).is_zero());
}

TEST_CASE("Lefschetz triple") {
  for (const LcK& d : {torus_data(), h3_data()}) {
    const MetricData& m = d.metric;
    CHECK(m.positive);
    LefschetzOps ops = lefschetz_ops(m);
    int n = m.n;
    for (int k = 0; k <= 2 * n; ++k)
      for (Mono b : basis(d.spec.frame, k)) {
        Form x = Form::monomial(d.spec.frame, b);
        Form ll = lefschetz_L(m, lefschetz_Lambda(m, x)) - lefschetz_Lambda(m, lefschetz_L(m, x));
        CHECK(ll == x * Scalar(k - n));
        CHECK(ops.H[static_cast<std::size_t>(k)].apply(x) == x * Scalar(n - k));
        // [L^2, Λ] = 2(k - n + 1) L
        Form l2 = lefschetz_L(m, lefschetz_L(m, x));
        Form c2 = lefschetz_L(m, lefschetz_L(m, lefschetz_Lambda(m, x))) - lefschetz_Lambda(m, l2);
        CHECK(c2 == lefschetz_L(m, x) * Scalar(2 * (k - n + 1)));
      }
    Form one = Form::unit(d.spec.frame);
    CHECK(lefschetz_L(m, lefschetz_Lambda(m, one)) - lefschetz_Lambda(m, lefschetz_L(m, one)) == one * Scalar(-3));
    CHECK(ops.H[3].is_zero());
  }
  AlgebraSpec t = load_catalog("torus(3)");
  CHECK_THROWS_AS(make_metric(t, F("i*(phi1^cphi1+phi2^cphi2)", t)), ValidationError);
}

TEST_CASE("Hodge star") {
  LcK d = torus_data();
  const MetricData& m = d.metric;
  const Frame& f = d.spec.frame;
  Form one = Form::unit(f);
  CHECK(hodge_star(m, one) == m.vol);
  CHECK(hodge_star(m, m.vol) == one);
  Form phi1 = Form::phi(f, 1);
  Form weyl = lefschetz_L(m, lefschetz_L(m, apply_J(phi1))) * Scalar(GaussRational(mpq_class(-1, 2)));
  CHECK(hodge_star(m, phi1) == weyl);
  // defining property and star^2 on the full basis
  for (int k = 0; k <= 6; ++k)
    for (Mono a : basis(f, k)) {
      Form x = Form::monomial(f, a);
      Form sx = hodge_star(m, x);
      for (Mono b : basis(f, k)) {
        Form y = Form::monomial(f, b);
        CHECK(wedge(y, sx) == m.vol * Scalar(inner(m, y, x)));
      }
      CHECK(hodge_star(m, sx) == x * Scalar((k % 2) ? -1 : 1));
    }
  // positivity on real forms under a non-diagonal metric
  AlgebraSpec h3 = load_catalog("h3_Jminus");
  MetricData g = make_metric(h3, F("i*(2*phi1^cphi1+phi2^cphi2+phi3^cphi3) + (1/2)*phi1^cphi2 - (1/2)*phi2^cphi1", h3));
  REQUIRE(g.positive);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    int k = static_cast<int>(rng() % 7);
    Form a = random_form(f, k, rng);
    Form r = a + conjugate_form(a);
    if (r.is_zero()) continue;
    GaussRational q = inner(g, r, r);
    CHECK(q.is_real());
    CHECK(sgn(q.re()) > 0);
  }
}

TEST_CASE("primitive decomposition") {
  LcK d = torus_data();
  const MetricData& m = d.metric;
  const Frame& f = d.spec.frame;
  auto w = primitive_decompose(m, m.omega);
  REQUIRE(w.size() == 1);
  CHECK(w[0].first == 1);
  CHECK(w[0].second == Form::unit(f));
  auto p = primitive_decompose(m, F("phi1^cphi2", d.spec));
  REQUIRE(p.size() == 1);
  CHECK(p[0].first == 0);
  auto v = primitive_decompose(m, m.vol);
  REQUIRE(v.size() == 1);
  CHECK(v[0].first == 3);
  CHECK(v[0].second == Form::unit(f) * Scalar(GaussRational(mpq_class(1, 6))));
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    int k = static_cast<int>(rng() % 7);
    Form a = random_form(f, k, rng);
    Form back(f);
    for (const auto& [j, b] : primitive_decompose(m, a)) {
      CHECK(lefschetz_Lambda(m, b).is_zero());
      Form x = b;
      for (int i = 0; i < j; ++i) x = lefschetz_L(m, x);
      back += x;
    }
    CHECK(back == a);
  }
  CHECK(primitive_basis(m, 1).size() == 6);
  CHECK(primitive_basis(m, 2).size() == 14);
  CHECK(primitive_basis(m, 3).size() == 14);
}

TEST_CASE("Weyl identity, lcs commutation and the twisted Kahler identity") {
  for (const LcK& d : {torus_data(), h3_data()}) {
    const MetricData& m = d.metric;
    INFO(d.spec.name);
    for (int k = 0; k <= m.n; ++k)
      for (int j = 0; j <= m.n - k; ++j)
        for (const Form& a : primitive_basis(m, k)) CHECK(weyl_residual(m, a, j).is_zero());
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
      Form a = random_form(d.spec.frame, static_cast<int>(rng() % 4), rng);
      for (int k = 0; k <= 2; ++k)
        for (int ell = -2; ell <= 2; ++ell) CHECK(lemma_lcs_residual(m, d.theta, k, ell, a).is_zero());
    }
    for (int k = 0; k <= m.n; ++k)
      for (int j = 0; j <= m.n - k; ++j)
        for (int ell = -2; ell <= 2; ++ell)
          for (const Form& r : verify_twisted_kahler_identity(m, d.theta, j, k, ell)) CHECK(r.is_zero());
  }
  // the opposite J convention breaks the identities on h3
  LcK h3 = h3_data();
  int bad = 0;
  for (int k = 0; k <= 3; ++k)
    for (const Form& r : verify_twisted_kahler_identity(h3.metric, h3.theta, 0, k, 1, JConvention::QminusP))
      bad += !r.is_zero();
  CHECK(bad > 0);
  AlgebraSpec t = load_catalog("torus(3)");
  MetricData tm = torus_data().metric;
  CHECK_THROWS_AS(verify_twisted_kahler_identity(tm, Form::phi(t.frame, 1) + Form::cphi(t.frame, 1), 0, 1, 1),
                  ValidationError);
}
