#include "invarforms/report.hpp"
#include "invarforms/suites.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace invarforms;

namespace {

Report sample() {
  Report r;
  r.command = "reproduce --suite x";
  r.input_digest = digest({"a", "b"});
  CheckRecord a;
  a.name = "zeta";
  a.status = Status::CertifiedNonexistence;
  a.expected = Status::CertifiedNonexistence;
  a.fixture = "h9";
  a.anchor = "(0,0,0,0,12,14+25)";
  a.data = {{"value", "3/5+4/5*i"}, {"nodes", 7}, {"list", {1, 2}}};
  CheckRecord b;
  b.name = "alpha";
  b.status = Status::Unknown;
  b.runtime_ms = 12;
  r.records = {a, b};
  return r;
}

}  // namespace

TEST_CASE("report round trip and canonical form") {
  Report r = sample();
  std::string text = emit_report(r, Format::Json);
  CHECK(report_from_json(nlohmann::json::parse(text)) == r);
  // keys sorted at every level
  CHECK(text.find("\"anchor\"") < text.find("\"data\""));
  CHECK(text.find("\"command\"") < text.find("\"input_digest\""));
  CHECK(emit_report(r, Format::Json) == text);
  // records keep their order
  CHECK(text.find("zeta") < text.find("alpha"));

  Report bad = r;
  bad.records[0].data["x"] = 0.5;
  CHECK_THROWS(emit_report(bad, Format::Json));
  auto j = nlohmann::json::parse(text);
  j["records"][0]["status"] = "MAYBE";
  CHECK_THROWS_AS(report_from_json(j), std::invalid_argument);
  j = nlohmann::json::parse(text);
  j["records"][1]["runtime_ms"] = -1;
  CHECK_THROWS_AS(report_from_json(j), std::invalid_argument);
}

TEST_CASE("text rendering is aligned") {
  std::string t = emit_report(sample(), Format::Text);
  auto pos = [&](const std::string& line_start) {
    auto at = t.find("\n" + line_start);
    REQUIRE(at != std::string::npos);
    auto eol = t.find('\n', at + 1);
    return t.substr(at + 1, eol - at - 1);
  };
  std::string z = pos("zeta "), a = pos("alpha ");
  CHECK(z.find("CERTIFIED_NONEXISTENCE") == a.find("UNKNOWN"));
}

TEST_CASE("status vocabulary and exit codes") {
  for (Status s : {Status::Pass, Status::Fail, Status::Witness, Status::CertifiedNonexistence, Status::Unknown})
    CHECK(parse_status(status_name(s)) == s);
  CHECK(query_exit_code(Status::Witness) == 0);
  CHECK(query_exit_code(Status::Fail) == 2);
  CHECK(query_exit_code(Status::CertifiedNonexistence) == 3);
  CHECK(query_exit_code(Status::Unknown) == 4);
  Report r = sample();
  CHECK(reproduce_exit_code(r) == 4);
  r.records[1].status = Status::Pass;
  CHECK(reproduce_exit_code(r) == 0);
  r.records[0].status = Status::Witness;  // differs from its expectation
  CHECK(reproduce_exit_code(r) == 2);
  CHECK(digest({"ab", "c"}) != digest({"a", "bc"}));
  CHECK(digest({}).size() == 64);
}

TEST_CASE("suites") {
  CHECK_THROWS_AS(run_suite("nope"), std::invalid_argument);
  Report s = run_suite("solvclasses");
  REQUIRE(s.records.size() == 7);
  for (const auto& rec : s.records) {
    CAPTURE(rec.name);
    CHECK(rec.as_expected());
    CHECK(rec.runtime_ms == 0);
    CHECK_FALSE(rec.anchor.empty());
    CHECK(rec.data.contains("table"));
  }
  CHECK(s.records[0].status == Status::Witness);
  CHECK(s.records[1].status == Status::CertifiedNonexistence);

  SuiteOptions timed;
  timed.timings = true;
  timed.threads = 1;
  Report n = run_suite("nakamura", timed);
  REQUIRE(n.records.size() == 5);
  for (const auto& rec : n.records) {
    CHECK(rec.status == Status::Pass);
    CHECK(rec.runtime_ms >= 0);
  }
  // thread count does not change the result
  SuiteOptions one, many;
  one.threads = 1;
  many.threads = 4;
  CHECK(emit_report(run_suite("surfaces", one), Format::Json) == emit_report(run_suite("surfaces", many), Format::Json));
}
