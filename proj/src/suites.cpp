#include "invarforms/suites.hpp"

#include "invarforms/catalog.hpp"
#include "invarforms/certificate.hpp"
#include "invarforms/cohomology.hpp"
#include "invarforms/fixtures.hpp"
#include "invarforms/operators.hpp"
#include "invarforms/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace invarforms {

namespace {

using nlohmann::json;

struct Task {
  std::string name;
  std::string fixture;
  std::string anchor;
  std::optional<Status> expected;
  std::function<void(CheckRecord&, const SuiteOptions&)> run;
};

std::vector<CheckRecord> run_tasks(const std::vector<Task>& tasks, const SuiteOptions& opt) {
  std::vector<CheckRecord> out(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& t = tasks[i];
      CheckRecord& rec = out[i];
      rec.name = t.name;
      rec.fixture = t.fixture;
      rec.anchor = t.anchor;
      rec.expected = t.expected;
      auto start = std::chrono::steady_clock::now();
      try {
        t.run(rec, opt);
      } catch (const std::exception& e) {
        rec.status = Status::Fail;
        rec.data["error"] = e.what();
      }
      if (opt.timings)
        rec.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                             .count();
    }
  };
  unsigned n = std::max(1u, std::min<unsigned>(opt.threads ? opt.threads : thread_cap(),
                                               static_cast<unsigned>(tasks.size())));
  std::vector<std::jthread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  return out;
}

json assignment_json(const Assignment& a) {
  json j = json::object();
  for (const auto& [k, v] : a) j[k] = v.to_string();
  return j;
}

Certificate shipped(const std::string& stem) { return load_certificate(data_dir() + "/certificates/" + stem + ".json"); }

json certify_json(const Certificate& c, const CertifyReport& r) {
  json runs = json::array();
  for (const auto& [label, res] : r.runs) {
    json j{{"instance", label}, {"valid", res.valid}, {"nodes", res.nodes}};
    if (!res.valid) {
      j["step"] = res.step;
      j["message"] = res.message;
    }
    runs.push_back(std::move(j));
  }
  return {{"certificate", c.name}, {"mode", mode_name(c.mode)}, {"valid", r.valid}, {"runs", std::move(runs)}};
}

// Validates a shipped nonexistence certificate against its own catalog entry.
Status run_certificate(const std::string& stem, json& data) {
  Certificate c = shipped(stem);
  CertifyReport r = certify(load_catalog(c.spec), c);
  data["certificate"] = certify_json(c, r);
  // lcK data is lcht data with vanishing (2,0)-part
  if (c.mode == StructureMode::Lcht) data["excludes"] = json::array({"lcht", "lcK"});
  return r.valid ? Status::CertifiedNonexistence : Status::Fail;
}

SearchOptions search_options(const std::string& catalog, const AlgebraSpec& s, const SuiteOptions& opt) {
  SearchOptions so;
  so.seed = opt.seed;
  so.budget = opt.budget;
  so.names = fixture_options(catalog).names;
  so.theta_hints = fixture_theta_hints(catalog, s);
  return so;
}

Status search_status(const AlgebraSpec& s, StructureMode mode, const std::optional<Witness>& w, json& data) {
  if (!w) {
    data["witness"] = nullptr;
    return Status::Unknown;
  }
  data["witness"] = witness_json(*w);
  std::vector<std::string> why;
  bool ok = verify_witness(s, mode, *w, 1, &why);
  data["reverified"] = ok;
  if (!ok) data["failures"] = why;
  return ok ? Status::Witness : Status::Fail;
}

Form parse(const AlgebraSpec& s, const std::string& text) { return parse_form(text, s.symbols()); }

// ---------------------------------------------------------------- surfaces

std::vector<Task> surfaces_suite() {
  std::vector<Task> out;
  for (const auto& fam : surface_families()) {
    out.push_back({fam.name, fam.catalog, fam.anchor, Status::Witness, [fam](CheckRecord& rec, const SuiteOptions&) {
                     AlgebraSpec base = load_catalog(fam.catalog);
                     auto samples = surface_samples();
                     bool ok = true;
                     json points = json::array();
                     for (const auto& point : fam.points) {
                       AlgebraSpec s = point.empty() ? base : instantiate(base, point);
                       json p{{"point", assignment_json(point)}};
                       for (StructureMode mode : {StructureMode::Lcht, StructureMode::LcK}) {
                         json m;
                         std::size_t verified = 0;
                         std::optional<Witness> first;
                         for (const auto& x : samples) {
                           auto w = surface_witness(fam.catalog, mode, point, x);
                           if (!w) break;
                           if (!first) first = w;
                           verified += verify_witness(s, mode, *w);
                         }
                         if (first) {
                           bool all = verified == samples.size();
                           ok = ok && all;
                           m["status"] = status_name(all ? Status::Witness : Status::Fail);
                           m["verified_samples"] = verified;
                           m["example"] = witness_json(*first);
                         } else {
                           // no formula: the nonexistence certificate must hold at this point
                           Certificate c = shipped("inoue_Spm_lcK");
                           GenericAnsatz a = build_ansatz(s, c.mode, certificate_options(c));
                           CheckResult r = certificate_check(s, a, c, point);
                           ok = ok && r.valid;
                           m["status"] = status_name(r.valid ? Status::CertifiedNonexistence : Status::Fail);
                           m["certificate"] = c.name;
                           m["nodes"] = r.nodes;
                           if (!r.valid) m["message"] = r.message;
                         }
                         p[mode_name(mode)] = std::move(m);
                       }
                       points.push_back(std::move(p));
                     }
                     rec.data["points"] = std::move(points);
                     rec.status = ok ? Status::Witness : Status::Fail;
                   }});
  }
  return out;
}

// ----------------------------------------------------------- nilmanifolds6

std::vector<Task> nilmanifolds_suite() {
  std::vector<Task> out;
  out.push_back({"h3 J+ lcK", "h3_Jplus", "\\vartheta:= \\varphi^3 + \\bar\\varphi^3", Status::Witness,
                 [](CheckRecord& rec, const SuiteOptions& opt) {
                   AlgebraSpec s = load_catalog("h3_Jplus");
                   auto w = witness_search(s, StructureMode::LcK, search_options("h3_Jplus", s, opt));
                   rec.status = search_status(s, StructureMode::LcK, w, rec.data);
                 }});
  struct Cert {
    const char* name;
    const char* stem;
    const char* fixture;
    const char* anchor;
  };
  for (const Cert& c : {
           Cert{"h3 J- lcht", "h3_Jminus_lcht", "h3_Jminus",
                "\\de\\varphi^3 \\;=\\; \\varphi^{1}\\wedge\\bar\\varphi^{1} - \\varphi^{2}\\wedge\\bar\\varphi^{2}"},
           Cert{"h9 lcht", "h9_lcht", "h9", "\\mathfrak{h}_{9} = (0,0,0,0,12,14+25)"},
           Cert{"h19- J+ lcht", "h19minus_Jplus_lcht", "h19minus_Jplus", "\\mathfrak{h}_{19}^{-} = (0,0,0,12,23,14-35)"},
           Cert{"h19- J- lcht", "h19minus_Jminus_lcht", "h19minus_Jminus",
                "\\mathfrak{h}_{19}^{-} = (0,0,0,12,23,14-35)"},
       }) {
    std::string stem = c.stem;
    out.push_back({c.name, c.fixture, c.anchor, Status::CertifiedNonexistence,
                   [stem](CheckRecord& rec, const SuiteOptions&) { rec.status = run_certificate(stem, rec.data); }});
  }
  out.push_back({"torus(3) kahler", "torus(3)", "(0,0,0,0,0,0)", Status::Witness,
                 [](CheckRecord& rec, const SuiteOptions& opt) {
                   AlgebraSpec s = load_catalog("torus(3)");
                   auto w = witness_search(s, StructureMode::Kahler, search_options("torus(3)", s, opt));
                   rec.status = search_status(s, StructureMode::Kahler, w, rec.data);
                 }});
  for (const auto& name : contact5_list()) {
    out.push_back({"contact " + name, name, name, Status::Witness, [name](CheckRecord& rec, const SuiteOptions&) {
                     AlgebraSpec s = parse_salamon(name);
                     ContactResult r = contact_search(s);
                     rec.data["polynomial_terms"] = r.polynomial.terms().size();
                     if (!r.alpha) {
                       rec.status = Status::Unknown;
                       return;
                     }
                     Form da = exterior_d(s, *r.alpha);
                     Scalar top = top_coefficient(wedge(*r.alpha, wedge(da, da)));
                     rec.data["alpha"] = r.alpha->to_string();
                     rec.data["top_coefficient"] = top.to_string();
                     rec.status = top.is_zero() ? Status::Fail : Status::Witness;
                   }});
  }
  out.push_back({"contact abelian R^5", "r5", "contact structure $\\alpha\\in\\wedge^1X$", Status::CertifiedNonexistence,
                 [](CheckRecord& rec, const SuiteOptions&) {
                   ContactResult r = contact_search(load_catalog("r5"));
                   rec.data["polynomial"] = r.polynomial.to_string();
                   // α∧(dα)² vanishes identically in the coefficients of α
                   rec.status = r.polynomial.is_zero() && !r.alpha ? Status::CertifiedNonexistence : Status::Fail;
                 }});
  out.push_back({"heis5 x R d_theta exactness", "heis5xR", "\\mathfrak{heis}_{2n-1}\\times\\mathbb{R}", Status::Pass,
                 [](CheckRecord& rec, const SuiteOptions&) {
                   AlgebraSpec s = load_catalog("heis5xR");
                   Form om = parse(s, "e1^e2 + e3^e4 + e5^e6");
                   Form th = parse(s, "-e5");
                   rec.data["Omega"] = om.to_string();
                   rec.data["theta"] = th.to_string();
                   auto beta = d_theta_exact_solve(s, om, th);
                   if (!beta) {
                     rec.status = Status::Fail;
                     return;
                   }
                   rec.data["beta"] = beta->to_string();
                   bool ok = exterior_d(s, *beta) - wedge(th, *beta) == om;
                   rec.data["reverified"] = ok;
                   rec.status = ok ? Status::Pass : Status::Fail;
                 }});
  return out;
}

// ------------------------------------------------------------- solvclasses

struct ClassPlan {
  const char* name;     // table class
  const char* catalog;
  const char* anchor;
  Status expected;
  std::vector<const char*> certificates;
  std::vector<Assignment> lck_points;  // where an lcK witness is expected
};

std::vector<ClassPlan> class_plans() {
  GaussRational i = GaussRational::i();
  return {
      {"class (1)", "class1", "A=\\cos\\theta+\\im\\sin\\theta", Status::Witness, {"class1_reA_lcht"}, {{{"A", i}}}},
      {"class (2)", "class2", "g>0", Status::CertifiedNonexistence, {"class2_lcht"}, {}},
      {"class (3)", "class3", "\\Re A \\sigma_{11}=0, \\Re A \\sigma_{22}=0, \\Im A \\sigma_{12}=0", Status::Witness,
       {"class3_reA_lcht"},
       {{{"A", i}, {"s11", 1}, {"s22", 2}, {"s12", 0}}, {{"A", -i}, {"s11", 1}, {"s22", 2}, {"s12", 0}}}},
      {"class (4)", "class4", "\\Im A \\neq 0", Status::CertifiedNonexistence, {"class4_lcht"}, {}},
      {"class (5)", "class5", "\\varepsilon = 0", Status::CertifiedNonexistence, {"class5_lcht"}, {}},
      {"class (6)", "class6", "\\varepsilon = 1", Status::CertifiedNonexistence, {"class6_lcht"}, {}},
      {"class (7)", "class7", "-\\omega^{3\\bar3}", Status::CertifiedNonexistence, {"class7_lcht"}, {}},
  };
}

json table_json(const TableReproduction& literal, const TableReproduction& fixed, const std::string& klass) {
  std::size_t cells = 0, ok = 0;
  json bad = json::array();
  for (const auto& c : literal.cells) {
    if (c.klass != klass) continue;
    ++cells;
    if (c.match) {
      ++ok;
      continue;
    }
    bad.push_back({{"point", c.point}, {"row", c.row}, {"column", c.column}, {"table", c.expected},
                   {"computed", c.computed}});
  }
  bool errata_ok = true;
  for (const auto& c : fixed.cells)
    if (c.klass == klass) errata_ok = errata_ok && c.match;
  auto pts = literal.points.find(klass);
  return {{"cells", cells},
          {"matching", ok},
          {"points", pts == literal.points.end() ? 0 : pts->second},
          {"literal", status_name(bad.empty() ? Status::Pass : Status::Fail)},
          {"mismatches", std::move(bad)},
          {"with_errata", status_name(errata_ok ? Status::Pass : Status::Fail)}};
}

std::vector<Task> solvclasses_suite() {
  json table = load_table3();
  auto literal = std::make_shared<TableReproduction>(reproduce_table(table));
  auto fixed = std::make_shared<TableReproduction>(reproduce_table(table, true));
  std::vector<Task> out;
  for (const ClassPlan& plan : class_plans()) {
    out.push_back({plan.name, plan.catalog, plan.anchor, plan.expected,
                   [plan, literal, fixed](CheckRecord& rec, const SuiteOptions& opt) {
                     bool ok = true;
                     json certs = json::array();
                     for (const char* stem : plan.certificates) {
                       json d;
                       ok = run_certificate(stem, d) == Status::CertifiedNonexistence && ok;
                       certs.push_back(d.at("certificate"));
                     }
                     rec.data["nonexistence"] = std::move(certs);
                     json wits = json::array();
                     bool found = !plan.lck_points.empty();
                     for (const auto& point : plan.lck_points) {
                       AlgebraSpec s = instantiate(load_catalog(plan.catalog), point);
                       auto w = witness_search(s, StructureMode::LcK, search_options(plan.catalog, s, opt));
                       json d{{"point", assignment_json(point)}};
                       Status st = search_status(s, StructureMode::LcK, w, d);
                       d["status"] = status_name(st);
                       found = found && st == Status::Witness;
                       wits.push_back(std::move(d));
                     }
                     if (!plan.lck_points.empty()) rec.data["lcK"] = std::move(wits);
                     rec.data["table"] = table_json(*literal, *fixed, plan.name);
                     if (!ok)
                       rec.status = Status::Fail;
                     else if (plan.lck_points.empty())
                       rec.status = Status::CertifiedNonexistence;
                     else
                       rec.status = found ? Status::Witness : Status::Unknown;
                   }});
  }
  return out;
}

// ---------------------------------------------------------------- nakamura

std::vector<Task> nakamura_suite() {
  struct Item {
    const char* name;
    const char* anchor;
    std::function<void(const NakamuraReport&, CheckRecord&)> judge;
  };
  auto flag = [](bool b) { return b ? Status::Pass : Status::Fail; };
  std::vector<Item> items{
      {"ddbar omega_t closed form", "\\partial_t\\overline{\\del}_t \\omega_t",
       [flag](const NakamuraReport& r, CheckRecord& rec) {
         rec.status = flag(r.ddbar_closed_form);
         rec.data["difference"] = r.ddbar_difference;
       }},
      {"ddbar omega_t wedge omega_t", "2\\, \\left( (1+t)\\, (1+\\bar t)\\, BC + (-1+t)\\, (-1+\\bar t)\\, |F|^2 \\right)",
       [flag](const NakamuraReport& r, CheckRecord& rec) { rec.status = flag(r.ddbar_wedge); }},
      {"pluriclosed forces B = C = F = 0", "BC", [flag](const NakamuraReport& r, CheckRecord& rec) {
         rec.status = flag(r.pluriclosed_forces_BCF);
         rec.data["factors"] = r.pluriclosed_factors;
       }},
      {"balanced Omega_t", "\\Omega_t", [flag](const NakamuraReport& r, CheckRecord& rec) {
         rec.status = flag(r.balanced);
         rec.data["Omega_t"] = "i*(phi1^cphi1 + phi2^cphi2 + phi3^cphi3)";
       }},
      {"dOmega_t expansion", "\\Omega_t &:=& \\im\\, \\left( A\\, \\phi^1_", [flag](const NakamuraReport& r, CheckRecord& rec) {
         rec.status = flag(r.dOmega_expansion);
         rec.data["difference"] = r.dOmega_difference;
       }},
  };
  auto shared = std::make_shared<std::once_flag>();
  auto report = std::make_shared<NakamuraReport>();
  std::vector<Task> out;
  for (const auto& it : items) {
    auto judge = it.judge;
    out.push_back({it.name, "nakamura", it.anchor, Status::Pass, [judge, shared, report](CheckRecord& rec, const SuiteOptions&) {
                     std::call_once(*shared, [&] { *report = nakamura_checks(); });
                     judge(*report, rec);
                   }});
  }
  return out;
}

// --------------------------------------------------------------- lefschetz

Form random_form(const Frame& f, int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  Form out(f);
  for (Mono m : basis(f, k)) {
    if (rng() % 3) continue;
    out.add_term(m, Scalar(GaussRational(coef(rng), coef(rng))));
  }
  return out;
}

struct LcsData {
  std::string name;
  AlgebraSpec spec;
  MetricData metric;
  Form theta;
};

std::vector<LcsData> lcs_fixtures() {
  AlgebraSpec t = load_catalog("torus(3)");
  AlgebraSpec h = load_catalog("h3_Jplus");
  std::string w = "i*phi1^cphi1 + i*phi2^cphi2 + i*phi3^cphi3";
  return {{"torus(3)", t, make_metric(t, parse(t, w)), Form(t.frame)},
          {"h3_Jplus", h, make_metric(h, parse(h, w)), parse(h, "phi3 + cphi3")}};
}

// Counts failures per fixture of a check run over the lcs fixtures.
using FixtureCheck = std::function<std::pair<std::size_t, std::size_t>(const LcsData&, json&)>;

Task identity_task(const std::string& name, const std::string& anchor, FixtureCheck check) {
  return {name, "torus(3), h3_Jplus", anchor, Status::Pass, [check](CheckRecord& rec, const SuiteOptions&) {
            bool ok = true;
            for (const LcsData& d : lcs_fixtures()) {
              json detail = json::object();
              auto [checked, failed] = check(d, detail);
              detail["checked"] = checked;
              detail["failed"] = failed;
              ok = ok && failed == 0 && checked > 0;
              rec.data[d.name] = std::move(detail);
            }
            rec.status = ok ? Status::Pass : Status::Fail;
          }};
}

std::vector<Task> lefschetz_suite() {
  std::vector<Task> out;
  std::vector<std::string> dfix{"torus(3)", "h3_Jplus", "h9", "h19minus_Jminus", "class5", "class7", "kodaira_secondary",
                                "heis5xR"};
  out.push_back({"d^2 = 0", "structure equations", "\\de_\\eta \\;:=\\; \\de - \\eta\\wedge", Status::Pass,
                 [dfix](CheckRecord& rec, const SuiteOptions&) {
                   bool ok = true;
                   for (const auto& name : dfix) {
                     AlgebraSpec s = load_catalog(name);
                     bool zero = true;
                     for (int k = 0; k + 2 <= s.frame.gens(); ++k)
                       zero = zero && compose(assemble_d(s, k + 1), assemble_d(s, k)).is_zero();
                     rec.data[name] = zero;
                     ok = ok && zero;
                   }
                   rec.status = ok ? Status::Pass : Status::Fail;
                 }});
  out.push_back({"Leibniz rule", "structure equations", "\\de_\\eta \\;:=\\; \\de - \\eta\\wedge", Status::Pass,
                 [dfix](CheckRecord& rec, const SuiteOptions& opt) {
                   bool ok = true;
                   for (std::size_t f = 0; f < dfix.size(); ++f) {
                     AlgebraSpec s = load_catalog(dfix[f]);
                     std::mt19937_64 rng(opt.seed + f);
                     std::size_t bad = 0;
                     for (int t = 0; t < 200; ++t) {
                       int ka = static_cast<int>(rng() % 3), kb = static_cast<int>(rng() % 3);
                       Form a = random_form(s.frame, ka, rng), b = random_form(s.frame, kb, rng);
                       Form rhs = wedge(exterior_d(s, a), b) + wedge(a, exterior_d(s, b)) * Scalar(ka % 2 ? -1 : 1);
                       bad += exterior_d(s, wedge(a, b)) != rhs;
                     }
                     rec.data[dfix[f]] = {{"pairs", 200}, {"failed", bad}};
                     ok = ok && bad == 0;
                   }
                   rec.status = ok ? Status::Pass : Status::Fail;
                 }});
  // literal form of the claim; with ⟨a,b⟩vol = a∧⋆b the square is (-1)^k
  out.push_back(identity_task("star^2 = id", "*\\colon \\wedge^{\\bullet}X\\to\\wedge^{2n-\\bullet}X",
                              [](const LcsData& d, json& detail) {
                                std::size_t n = 0, bad = 0;
                                json odd = json::array();
                                for (int k = 0; k <= d.spec.frame.gens(); ++k) {
                                  std::size_t fails = 0;
                                  for (Mono m : basis(d.spec.frame, k)) {
                                    Form x = Form::monomial(d.spec.frame, m);
                                    ++n;
                                    fails += hodge_star(d.metric, hodge_star(d.metric, x)) != x;
                                  }
                                  if (fails) odd.push_back(k);
                                  bad += fails;
                                }
                                detail["failing_degrees"] = std::move(odd);
                                return std::make_pair(n, bad);
                              }));
  out.push_back(identity_task("star^2 = (-1)^k", "*\\colon \\wedge^{\\bullet}X\\to\\wedge^{2n-\\bullet}X",
                              [](const LcsData& d, json&) {
                                std::size_t n = 0, bad = 0;
                                for (int k = 0; k <= d.spec.frame.gens(); ++k)
                                  for (Mono m : basis(d.spec.frame, k)) {
                                    Form x = Form::monomial(d.spec.frame, m);
                                    ++n;
                                    bad += hodge_star(d.metric, hodge_star(d.metric, x)) != x * Scalar(k % 2 ? -1 : 1);
                                  }
                                return std::make_pair(n, bad);
                              }));
  out.push_back(identity_task("[L^j, Lambda] = j(k-n+j-1) L^(j-1)",
                              "\\left[ L^j, \\Lambda \\right] \\;=\\; j\\, (k-n+j-1)\\, L^{j-1}",
                              [](const LcsData& d, json&) {
                                const MetricData& m = d.metric;
                                std::size_t n = 0, bad = 0;
                                for (int k = 0; k <= d.spec.frame.gens(); ++k)
                                  for (Mono b : basis(d.spec.frame, k)) {
                                    Form x = Form::monomial(d.spec.frame, b);
                                    // L^{j-1}x, L^j x and L^j Λx
                                    Form prev = x, cur = x, llam = lefschetz_Lambda(m, x);
                                    for (int j = 1; j <= m.n + 1; ++j) {
                                      prev = cur;
                                      cur = lefschetz_L(m, cur);
                                      llam = lefschetz_L(m, llam);
                                      ++n;
                                      bad += llam - lefschetz_Lambda(m, cur) != prev * Scalar(j * (k - m.n + j - 1));
                                    }
                                  }
                                return std::make_pair(n, bad);
                              }));
  out.push_back(identity_task("Weyl identity",
                              "(-1)^{\\frac{k(k+1)}{2}}\\,\\frac{j!}{(n-k-j)!}\\, L^{n-k-j}J",
                              [](const LcsData& d, json&) {
                                const MetricData& m = d.metric;
                                std::size_t n = 0, bad = 0;
                                for (int k = 0; k <= m.n; ++k) {
                                  auto prim = primitive_basis(m, k);
                                  for (int j = 0; j <= m.n - k; ++j)
                                    for (const Form& a : prim) {
                                      ++n;
                                      bad += !weyl_residual(m, a, j).is_zero();
                                    }
                                }
                                return std::make_pair(n, bad);
                              }));
  out.push_back(identity_task("lcs commutation", "\\de_{(\\ell+k)\\vartheta} L^k \\;=\\; L^k \\de_{\\ell\\vartheta}",
                              [](const LcsData& d, json&) {
                                const MetricData& m = d.metric;
                                std::size_t n = 0, bad = 0;
                                for (int deg = 0; deg <= d.spec.frame.gens(); ++deg)
                                  for (Mono b : basis(d.spec.frame, deg)) {
                                    Form x = Form::monomial(d.spec.frame, b);
                                    for (int k = 0; k <= m.n; ++k)
                                      for (int ell = -2; ell <= 2; ++ell) {
                                        ++n;
                                        bad += !lemma_lcs_residual(m, d.theta, k, ell, x).is_zero();
                                      }
                                  }
                                return std::make_pair(n, bad);
                              }));
  out.push_back(identity_task("twisted Kahler identity",
                              "\\Lambda \\de_{\\ell\\vartheta} - \\de_{(\\ell-1)\\vartheta}\\Lambda",
                              [](const LcsData& d, json&) {
                                const MetricData& m = d.metric;
                                std::size_t n = 0, bad = 0;
                                for (int k = 0; k <= m.n; ++k)
                                  for (int j = 0; j <= m.n - k; ++j)
                                    for (int ell = -2; ell <= 2; ++ell)
                                      for (const Form& r : verify_twisted_kahler_identity(m, d.theta, j, k, ell)) {
                                        ++n;
                                        bad += !r.is_zero();
                                      }
                                return std::make_pair(n, bad);
                              }));
  return out;
}

// -------------------------------------------------------------- cohomology

json bidegree_json(const std::map<std::pair<int, int>, long>& m) {
  json j = json::object();
  for (const auto& [pq, h] : m) j[std::to_string(pq.first) + "," + std::to_string(pq.second)] = h;
  return j;
}

std::vector<Form> closed_samples(const AlgebraSpec& s, int count) {
  OperatorMatrix d1 = assemble_d(s, 1);
  auto ker = kernel(d1.numeric());
  std::vector<Form> out;
  if (ker.size() < 2) return out;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) {
      if ((a == 0 && b == 0) || static_cast<int>(out.size()) == count) continue;
      Form th(s.frame);
      for (std::size_t i = 0; i < ker[0].size(); ++i) {
        GaussRational c = ker[0][i] * GaussRational(a) + ker[1][i] * GaussRational(b);
        if (!c.is_zero()) th.add_term(d1.src_basis[i], Scalar(c));
      }
      out.push_back(th);
    }
  return out;
}

std::vector<Task> cohomology_suite() {
  auto pass = [](bool b) { return b ? Status::Pass : Status::Fail; };
  std::vector<Task> out;
  out.push_back({"torus(3) Dolbeault h^{1,1} = 9", "torus(3)", "H^{\\bullet,\\bullet}_{BC}(X)", Status::Pass,
                 [pass](CheckRecord& rec, const SuiteOptions&) {
                   auto r = cohomology_dims(load_catalog("torus(3)"), Theory::Dolbeault);
                   rec.data["dolbeault"] = bidegree_json(r.by_bidegree);
                   rec.status = pass(r.by_bidegree.at({1, 1}) == 9);
                 }});
  out.push_back({"torus(3) ddbar-lemma", "torus(3)", "\\partial\\overline{\\del}$-Lemma", Status::Pass,
                 [pass](CheckRecord& rec, const SuiteOptions&) {
                   DdbarReport r = ddbar_lemma_check(load_catalog("torus(3)"));
                   rec.data["global"] = r.global;
                   rec.status = pass(r.global);
                 }});
  out.push_back({"h3 b_1 = 5", "h3", "(0,0,0,0,0,12+34)", Status::Pass, [pass](CheckRecord& rec, const SuiteOptions&) {
                   auto r = cohomology_dims(load_catalog("h3"), Theory::DeRham);
                   json b = json::object();
                   for (const auto& [k, v] : r.by_degree) b[std::to_string(k)] = v;
                   rec.data["betti"] = std::move(b);
                   rec.status = pass(r.by_degree.at(1) == 5);
                 }});
  out.push_back({"h8 Delta^5 = 0", "h8", "\\Delta^k", Status::Pass, [pass](CheckRecord& rec, const SuiteOptions&) {
                   AlgebraSpec s = load_catalog("h8");
                   long d = delta_degrees(s, 5);
                   rec.data["delta_5"] = d;
                   rec.data["delta_5_single_b"] = delta_degrees_single(s, 5);
                   rec.status = pass(d == 0);
                 }});
  out.push_back({"h8 weak (n-1,n) ddbar-lemma", "h8", "(n-1,n)", Status::Pass,
                 [pass](CheckRecord& rec, const SuiteOptions&) {
                   AlgebraSpec s = load_catalog("h8");
                   bool w = weak_ddbar_check(s);
                   rec.data["weak"] = w;
                   rec.data["abelian_J"] = validate_spec(s).abelian_J.value_or(false);
                   rec.status = pass(w);
                 }});
  out.push_back({"h8 H^{2,3}_BC -> H^{2,3}_dbar not injective", "h8", "H^{2,3}_{BC}", Status::Pass,
                 [pass](CheckRecord& rec, const SuiteOptions&) {
                   bool inj = bc_to_dolbeault_injectivity(load_catalog("h8"), 2, 3);
                   rec.data["injective"] = inj;
                   rec.status = pass(!inj);
                 }});
  for (const char* name : {"heis3", "h3"}) {
    std::string n = name;
    out.push_back({"Morse-Novikov vanishing " + n, n, "H_{\\vartheta}^\\bullet(X)", Status::Pass,
                   [n, pass](CheckRecord& rec, const SuiteOptions&) {
                     AlgebraSpec s = load_catalog(n);
                     bool ok = true;
                     json samples = json::array();
                     auto thetas = closed_samples(s, 5);
                     for (const Form& th : thetas) {
                       auto r = cohomology_dims(s, Theory::MorseNovikov, th);
                       long total = 0;
                       for (const auto& [k, h] : r.by_degree) total += h;
                       samples.push_back({{"theta", th.to_string()}, {"total_dimension", total}});
                       ok = ok && total == 0;
                     }
                     rec.data["samples"] = std::move(samples);
                     rec.status = pass(ok && thetas.size() == 5);
                   }});
  }
  return out;
}

std::vector<Task> suite_tasks(const std::string& name) {
  if (name == "surfaces") return surfaces_suite();
  if (name == "nilmanifolds6") return nilmanifolds_suite();
  if (name == "solvclasses") return solvclasses_suite();
  if (name == "nakamura") return nakamura_suite();
  if (name == "lefschetz") return lefschetz_suite();
  if (name == "cohomology") return cohomology_suite();
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::string file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"surfaces", "nilmanifolds6", "solvclasses",
                                              "nakamura", "lefschetz",     "cohomology"};
  return names;
}

unsigned thread_cap() { return thread_budget(); }

nlohmann::json witness_json(const Witness& w) {
  json values = json::object();
  for (const auto& [k, v] : w.values) values[k] = v.to_string();
  return {{"values", std::move(values)}, {"Omega", w.Omega.to_string()}, {"theta", w.theta.to_string()}};
}

Report run_suite(const std::string& name, const SuiteOptions& opt) {
  std::vector<std::string> names;
  if (name == "all")
    names = suite_names();
  else
    names = {name};
  std::vector<Task> tasks;
  for (const auto& n : names) {
    auto t = suite_tasks(n);
    for (auto& x : t) {
      if (name == "all") x.name = n + ": " + x.name;
      tasks.push_back(std::move(x));
    }
  }
  Report r;
  r.command = "reproduce --suite " + name + " --seed " + std::to_string(opt.seed) + " --budget " +
              std::to_string(opt.budget);
  std::vector<std::string> inputs{r.command, file_bytes(data_dir() + "/table3.json")};
  for (const auto& p : shipped_certificates()) inputs.push_back(file_bytes(p));
  r.input_digest = digest(inputs);
  r.records = run_tasks(tasks, opt);
  return r;
}

}  // namespace invarforms
