#include "invarforms/catalog.hpp"
#include "invarforms/certificate.hpp"
#include "invarforms/cohomology.hpp"
#include "invarforms/feasibility.hpp"
#include "invarforms/report.hpp"
#include "invarforms/suites.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace invarforms;
using nlohmann::json;

namespace {

struct Args {
  std::string format = "json";
  std::string file;
  std::string cert;
  std::string theory;
  std::string theta;
  std::string omega;
  std::string structure;
  std::string suite;
  std::vector<std::string> params;
  std::uint64_t seed = 42;
  int budget = 10000;
  bool timings = false;
};

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

AlgebraSpec load_spec(const std::string& file) {
  try {
    return load_spec_file(file);
  } catch (const ValidationError&) {
    throw;
  } catch (const ParseError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw ValidationError(e.what());
  }
}

Assignment parse_params(const std::vector<std::string>& items) {
  Assignment out;
  for (const auto& p : items) {
    auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw Usage("--param expects name=value, got '" + p + "'");
    out[p.substr(0, eq)] = parse_constant(p.substr(eq + 1));
  }
  return out;
}

json assignment_json(const Assignment& a) {
  json j = json::object();
  for (const auto& [k, v] : a) j[k] = v.to_string();
  return j;
}

std::string file_input(const std::string& file) {
  return file.rfind("catalog:", 0) == 0 ? file : read_file(file);
}

Report single(const std::string& command, const std::vector<std::string>& inputs, CheckRecord rec) {
  Report r;
  r.command = command;
  std::vector<std::string> parts{command};
  parts.insert(parts.end(), inputs.begin(), inputs.end());
  r.input_digest = digest(parts);
  r.records.push_back(std::move(rec));
  return r;
}

CheckRecord record(const std::string& name, const std::string& fixture) {
  CheckRecord rec;
  rec.name = name;
  rec.fixture = fixture;
  rec.anchor = "user input";
  return rec;
}

// Shipped certificate that settles (spec, mode, params), if any.
std::optional<std::pair<Certificate, CheckResult>> shipped_nonexistence(const AlgebraSpec& base, StructureMode mode,
                                                                       const Assignment& params) {
  for (const auto& path : shipped_certificates()) {
    Certificate c = load_certificate(path);
    if (c.spec != base.name) continue;
    // lcK data is lcht data, so an lcht certificate excludes lcK as well
    if (!(c.mode == mode || (c.mode == StructureMode::Lcht && mode == StructureMode::LcK))) continue;
    bool symbolic = c.instances.empty() || c.raw.value("symbolic", false);
    bool listed = std::find(c.instances.begin(), c.instances.end(), params) != c.instances.end();
    if (base.has_params() && !symbolic && !listed) continue;
    AlgebraSpec s = params.empty() ? base : instantiate(base, params);
    GenericAnsatz a = build_ansatz(s, c.mode, certificate_options(c));
    CheckResult r = certificate_check(s, a, c, params);
    if (r.valid) return std::make_pair(c, r);
  }
  return std::nullopt;
}

SearchOptions search_options(const AlgebraSpec& s, const Args& a) {
  SearchOptions so;
  so.seed = a.seed;
  so.budget = a.budget;
  so.names = fixture_options(s.name).names;
  so.theta_hints = fixture_theta_hints(s.name, s);
  return so;
}

void emit(const Report& r, const Args& a) {
  std::cout << emit_report(r, a.format == "text" ? Format::Text : Format::Json);
}

int cmd_validate(const Args& a, const std::string& command) {
  AlgebraSpec s = load_spec(a.file);
  ValidationReport v = validate_spec(s);
  CheckRecord rec = record("validate", s.name);
  rec.data = {{"jacobi_valid", v.jacobi_valid},
              {"unimodular", v.unimodular},
              {"nilpotent", v.nilpotent},
              {"failures", v.failures},
              {"notes", v.notes},
              {"params", s.params.size()}};
  rec.data["integrable"] = v.integrable ? json(*v.integrable) : json(nullptr);
  rec.data["abelian_J"] = v.abelian_J ? json(*v.abelian_J) : json(nullptr);
  rec.status = v.ok() ? Status::Pass : Status::Fail;
  emit(single(command, {file_input(a.file)}, rec), a);
  return query_exit_code(rec.status);
}

int cmd_cohomology(const Args& a, const std::string& command) {
  AlgebraSpec s = load_spec(a.file);
  Assignment params = parse_params(a.params);
  if (!params.empty()) s = instantiate(s, params);
  Theory t = parse_theory(a.theory);
  std::optional<Form> theta;
  if (!a.theta.empty()) theta = parse_form(a.theta, s.symbols());
  CohomologyReport r = cohomology_dims(s, t, theta);
  CheckRecord rec = record("cohomology " + theory_name(t), s.name);
  json dims = json::object();
  for (const auto& [k, h] : r.by_degree) dims[std::to_string(k)] = h;
  for (const auto& [pq, h] : r.by_bidegree) dims[std::to_string(pq.first) + "," + std::to_string(pq.second)] = h;
  rec.data = {{"theory", theory_name(t)}, {"dimensions", dims}, {"notes", r.notes}, {"params", assignment_json(params)}};
  if (theta) rec.data["theta"] = theta->to_string();
  rec.status = Status::Pass;
  emit(single(command, {file_input(a.file)}, rec), a);
  return exit_code::ok;
}

int cmd_check(const Args& a, const std::string& command) {
  AlgebraSpec base = load_spec(a.file);
  Assignment params = parse_params(a.params);
  AlgebraSpec s = params.empty() ? base : instantiate(base, params);
  StructureMode mode = parse_mode(a.structure);
  CheckRecord rec = record("check " + mode_name(mode), base.name);
  rec.data["params"] = assignment_json(params);
  if (a.omega.empty() != a.theta.empty() && mode != StructureMode::Kahler && mode != StructureMode::Balanced &&
      mode != StructureMode::Pluriclosed && mode != StructureMode::KGauduchon)
    throw Usage("--omega and --theta go together");
  if (!a.omega.empty()) {
    Witness w;
    w.Omega = parse_form(a.omega, s.symbols());
    w.theta = a.theta.empty() ? Form(s.frame) : parse_form(a.theta, s.symbols());
    std::vector<std::string> why;
    bool ok = verify_witness(s, mode, w, 1, &why);
    rec.data["Omega"] = w.Omega.to_string();
    rec.data["theta"] = w.theta.to_string();
    rec.data["failures"] = why;
    rec.status = ok ? Status::Witness : Status::Fail;
  } else if (auto cert = shipped_nonexistence(base, mode, params)) {
    rec.data["certificate"] = cert->first.name;
    rec.data["nodes"] = cert->second.nodes;
    rec.status = Status::CertifiedNonexistence;
  } else {
    auto w = witness_search(s, mode, search_options(s, a));
    if (w) {
      rec.data["witness"] = witness_json(*w);
      rec.status = verify_witness(s, mode, *w) ? Status::Witness : Status::Fail;
    } else {
      rec.status = Status::Unknown;
    }
  }
  emit(single(command, {file_input(a.file)}, rec), a);
  return query_exit_code(rec.status);
}

int cmd_search(const Args& a, const std::string& command) {
  AlgebraSpec s = load_spec(a.file);
  Assignment params = parse_params(a.params);
  if (!params.empty()) s = instantiate(s, params);
  StructureMode mode = parse_mode(a.structure);
  CheckRecord rec = record("search " + mode_name(mode), s.name);
  rec.data["params"] = assignment_json(params);
  rec.data["seed"] = a.seed;
  rec.data["budget"] = a.budget;
  auto w = witness_search(s, mode, search_options(s, a));
  if (w) {
    rec.data["witness"] = witness_json(*w);
    rec.data["transcript"] = w->transcript;
    rec.status = verify_witness(s, mode, *w) ? Status::Witness : Status::Fail;
  } else {
    rec.status = Status::Unknown;
  }
  emit(single(command, {file_input(a.file)}, rec), a);
  return query_exit_code(rec.status);
}

int cmd_certify(const Args& a, const std::string& command) {
  AlgebraSpec s = load_spec(a.file);
  std::string text = read_file(a.cert);
  Certificate c = parse_certificate(text);
  CertifyReport r = certify(s, c);
  CheckRecord rec = record("certify " + c.name, s.name);
  json runs = json::array();
  for (const auto& [label, res] : r.runs) {
    json j{{"instance", label}, {"valid", res.valid}, {"nodes", res.nodes}};
    if (!res.valid) {
      j["step"] = res.step;
      j["message"] = res.message;
    }
    runs.push_back(std::move(j));
  }
  rec.data = {{"certificate", c.name}, {"mode", mode_name(c.mode)}, {"runs", std::move(runs)}};
  rec.status = r.valid ? Status::CertifiedNonexistence : Status::Fail;
  emit(single(command, {file_input(a.file), text}, rec), a);
  return r.valid ? exit_code::ok : exit_code::validation;
}

int cmd_reproduce(const Args& a) {
  if (a.suite.empty()) throw Usage("--suite needs a suite name");
  const auto& names = suite_names();
  if (a.suite != "all" && std::find(names.begin(), names.end(), a.suite) == names.end())
    throw Usage("unknown suite '" + a.suite + "'");
  SuiteOptions opt;
  opt.seed = a.seed;
  opt.budget = a.budget;
  opt.timings = a.timings;
  Report r = run_suite(a.suite, opt);
  emit(r, a);
  return reproduce_exit_code(r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant conformal structures on Lie algebras: exact checks, searches and certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  Args a;
  app.add_option("--format", a.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  auto* validate = app.add_subcommand("validate", "Validate a structure-equation file");
  validate->add_option("file", a.file, "Spec file or catalog:NAME")->required();

  auto* coh = app.add_subcommand("cohomology", "Dimensions of invariant cohomology");
  coh->add_option("file", a.file)->required();
  coh->add_option("--theory", a.theory, "deRham | dolbeault | bottChern | aeppli | morseNovikov")->required();
  coh->add_option("--theta", a.theta, "Closed 1-form for morseNovikov");
  coh->add_option("--param", a.params, "Parameter value name=value");

  auto* check = app.add_subcommand("check", "Check a structure, or decide it with shipped data");
  check->add_option("file", a.file)->required();
  check->add_option("--structure", a.structure, "lcK | lcb | lcht | balanced | pluriclosed | kGauduchon | kahler")
      ->required();
  check->add_option("--omega", a.omega, "Candidate form");
  check->add_option("--theta", a.theta, "Candidate Lee form");
  check->add_option("--param", a.params, "Parameter value name=value");
  check->add_option("--seed", a.seed);
  check->add_option("--budget", a.budget);

  auto* search = app.add_subcommand("search", "Exact witness search");
  search->add_option("file", a.file)->required();
  search->add_option("--structure", a.structure)->required();
  search->add_option("--seed", a.seed);
  search->add_option("--budget", a.budget)->check(CLI::PositiveNumber);
  search->add_option("--param", a.params, "Parameter value name=value");

  auto* certify_cmd = app.add_subcommand("certify", "Check a nonexistence certificate");
  certify_cmd->add_option("file", a.file)->required();
  certify_cmd->add_option("cert", a.cert, "Certificate JSON")->required();

  auto* reproduce = app.add_subcommand("reproduce", "Run a fixture suite");
  reproduce->add_option("--suite", a.suite, "surfaces | nilmanifolds6 | solvclasses | nakamura | lefschetz | "
                                            "cohomology | all")
      ->required();
  reproduce->add_option("--seed", a.seed);
  reproduce->add_option("--budget", a.budget)->check(CLI::PositiveNumber);
  reproduce->add_flag("--timings", a.timings, "Record wall-clock runtimes (breaks byte-stability)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code::usage;
  }

  std::string command;
  for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);
  try {
    if (*validate) return cmd_validate(a, command);
    if (*coh) return cmd_cohomology(a, command);
    if (*check) return cmd_check(a, command);
    if (*search) return cmd_search(a, command);
    if (*certify_cmd) return cmd_certify(a, command);
    if (*reproduce) return cmd_reproduce(a);
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return exit_code::validation;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return exit_code::validation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return exit_code::validation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_code::internal;
  }
  return exit_code::internal;
}
