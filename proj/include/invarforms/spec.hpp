#pragma once

#include "invarforms/expr.hpp"
#include "invarforms/form.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace invarforms {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParamDecl {
  std::string name;
  bool complex = false;
  bool nonzero = false;
  bool positive = false;

  Var var() const { return complex ? Var::holo(name) : Var::real(name); }
  friend bool operator==(const ParamDecl&, const ParamDecl&) = default;
};

using Assignment = std::map<std::string, GaussRational>;

/// Extra admissibility predicate checked at instantiation (Table conditions).
struct Constraint {
  std::string description;
  std::function<bool(const Assignment&)> holds;
};

/// Lie algebra with (possibly) a complex structure, given by structure
/// equations on the primary generators: phi^1..phi^n or e^1..e^n.
struct AlgebraSpec {
  std::string name;
  Frame frame;
  std::vector<Form> d_table;
  std::vector<ParamDecl> params;
  std::vector<Constraint> constraints;

  /// d of generator `bit` (conjugates derived for complex frames).
  Form d_generator(int bit) const;
  SymbolTable symbols() const;
  const ParamDecl* find_param(const std::string& name) const;
  bool has_params() const { return !params.empty(); }
};

bool equal_specs(const AlgebraSpec& a, const AlgebraSpec& b);

/// Exterior derivative by the graded Leibniz rule from the structure equations.
Form exterior_d(const AlgebraSpec& s, const Form& a);

AlgebraSpec parse_salamon(const std::string& text);
/// Line format: `frame complex <n>` | `frame real <n>`; optional `name <id>`;
/// `param <name> : real|complex [nonzero] [positive]`; `d phi<j> = <expr>`
/// (or `d e<j> = ...` in real frames); `#` starts a comment.
AlgebraSpec parse_complex_dsl(const std::string& text);
AlgebraSpec parse_spec_json(const std::string& text);
/// Dispatches on content: `catalog:NAME`, JSON object, Salamon tuple, or DSL.
AlgebraSpec parse_spec_any(const std::string& text);
AlgebraSpec load_spec_file(const std::string& path_or_catalog);
std::string serialize_dsl(const AlgebraSpec& s);

/// Substitution map for an assignment; checks kinds and constraints.
/// Complex parameters also fix their conjugate partner.
std::map<Var, Scalar> assignment_substitution(const AlgebraSpec& s, const Assignment& values);
Form evaluate_params(const Form& a, const AlgebraSpec& s, const Assignment& values);
/// Spec with the assigned parameters replaced and removed from the registry.
AlgebraSpec instantiate(const AlgebraSpec& s, const Assignment& values);

/// Complex frame from a real frame and a complex structure J e_a = e_b given
/// as pairs (a,b), 1-based: phi^j = e^a + i e^b.
AlgebraSpec complexify(const AlgebraSpec& real, const std::vector<std::pair<int, int>>& pairs);

struct ValidationReport {
  bool jacobi_valid = false;
  std::optional<bool> integrable;
  bool unimodular = false;
  bool nilpotent = false;
  std::optional<bool> abelian_J;
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  bool ok() const { return jacobi_valid && integrable.value_or(true); }
};

ValidationReport validate_spec(const AlgebraSpec& s);

/// Structure constants of the (complexified) Lie algebra in the basis dual to
/// the generators: result[a][b] = [E_a, E_b] as a coefficient vector.
/// Requires constant coefficients.
std::vector<std::vector<std::vector<GaussRational>>> structure_constants(const AlgebraSpec& s);

}  // namespace invarforms
