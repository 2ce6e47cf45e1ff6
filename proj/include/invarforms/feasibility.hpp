#pragma once

#include "invarforms/expr.hpp"
#include "invarforms/form.hpp"
#include "invarforms/spec.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace invarforms {

enum class StructureMode { LcK, Lcb, Lcht, Balanced, Pluriclosed, KGauduchon, Kahler };

std::string mode_name(StructureMode m);
/// lcK, lcb, lcht, balanced, pluriclosed, kGauduchon, kahler (case-insensitive).
StructureMode parse_mode(const std::string& name);

/// Coefficient names used by the paper for each family of examples.
/// Pairs j<k are ordered (1,2), (1,3), (2,3), (1,4), ...; missing names fall
/// back to indexed ones (h11, u12, w12, a1).
struct NamingScheme {
  std::vector<std::string> diag;     // real positive (1,1) diagonal
  std::vector<std::string> offdiag;  // complex coefficients of φ^{12̄}, φ^{13̄}, φ^{23̄}
  std::vector<std::string> twozero;  // complex coefficients of φ^{12}, φ^{13}, φ^{23}
  std::vector<std::string> theta;    // complex Lee-form coefficients of φ^1, φ^2, φ^3
  std::string diag_name(int j) const;
  std::string offdiag_name(int j, int k) const;
  std::string twozero_name(int j, int k) const;
  std::string theta_name(int j) const;
  static NamingScheme nil();
  static NamingScheme solv();
  static NamingScheme surface();
  static NamingScheme nakamura();
};

struct AnsatzOptions {
  NamingScheme names = NamingScheme::solv();
  /// Keep only the φ^{12̄} off-diagonal term (the normal form of the metric used
  /// for h3 and h9).
  bool reduced_hermitian = false;
  int k = 1;  // for kGauduchon
};

struct Unknown {
  std::string name;
  bool complex = false;
  bool positive = false;
  Var var() const { return complex ? Var::holo(name) : Var::real(name); }
};

struct GenericAnsatz {
  AlgebraSpec spec;
  StructureMode mode = StructureMode::Lcht;
  int k = 1;
  std::vector<Unknown> unknowns;        // coefficients of Ω
  std::vector<Unknown> theta_unknowns;  // coefficients of θ (after substitution)
  Form Omega;
  Form theta_generic;
  Form theta;  // after the closedness substitution
  /// Human-readable closedness constraints, e.g. "a = 0", "a = conj(a)".
  std::vector<std::string> theta_constraints;
  /// Remaining linear equations on θ that are not substitutions.
  std::vector<Scalar> theta_equations;
  std::map<Var, Scalar> theta_substitution;

  SymbolTable symbols() const;
  std::size_t real_dimension() const;
  const Unknown* find(const std::string& name) const;
};

GenericAnsatz build_ansatz(const AlgebraSpec& s, StructureMode mode, const AnsatzOptions& opt = {});
/// Options the fixture library associates with a catalog name (naming scheme,
/// normal form).
AnsatzOptions fixture_options(const std::string& catalog_name);

struct ResidualEquation {
  std::string label;   // monomial label, or "theta:k" for closedness equations
  Scalar value;
  std::string provenance;
};

struct ResidualSystem {
  std::vector<ResidualEquation> equations;
  bool empty() const { return equations.empty(); }
  const ResidualEquation* find(const std::string& label) const;
};

/// Coefficients of dΩ^m - θ∧Ω^m. Throws ValidationError when θ is not closed.
ResidualSystem residual_conformal(const AlgebraSpec& s, const Form& Omega, const Form& theta, int m);
/// The defining system of the ansatz's mode, plus the θ equations.
ResidualSystem ansatz_residual(const GenericAnsatz& a);

struct PositivityProfile {
  std::vector<std::vector<Scalar>> hmat;
  std::vector<Scalar> minors;
  std::optional<bool> positive;  // set when the minors are constant
};

/// Leading principal minors of the Hermitian matrix of π^{1,1}(Ω).
PositivityProfile positivity_check(const Form& Omega);
Scalar determinant(const std::vector<std::vector<Scalar>>& m);

struct Witness {
  std::map<std::string, GaussRational> values;
  Form Omega;
  Form theta;
  std::vector<std::string> transcript;
};

/// Re-verifies residual emptiness and positivity from scratch.
bool verify_witness(const AlgebraSpec& s, StructureMode mode, const Witness& w, int k = 1,
                    std::vector<std::string>* why = nullptr);

struct SearchOptions {
  std::uint64_t seed = 42;
  int budget = 10000;                  // samples per θ candidate
  std::vector<Form> theta_hints;       // tried first
  NamingScheme names = NamingScheme::solv();
  int k = 1;                           // for kGauduchon
};

/// Exact kernel search; nullopt means UNKNOWN, never nonexistence.
std::optional<Witness> witness_search(const AlgebraSpec& s, StructureMode mode, const SearchOptions& opt);

/// Lee-form hints from the fixture library for a catalog name.
std::vector<Form> fixture_theta_hints(const std::string& catalog_name, const AlgebraSpec& s);

/// β with Ω = dβ - θ∧β, or nullopt. Throws ValidationError when d_θΩ ≠ 0.
std::optional<Form> d_theta_exact_solve(const AlgebraSpec& s, const Form& Omega, const Form& theta);

struct ContactResult {
  Scalar polynomial;          // top coefficient of α∧(dα)^{n-1} for generic α
  std::optional<Form> alpha;  // a sampled α with nonzero value
};
/// Throws ValidationError for even or complex frames.
ContactResult contact_search(const AlgebraSpec& s);

/// c with i∂∂̄ω^k∧ω^{n-k-1} = c·ω^n/n!.
Scalar k_gauduchon_scalar(const AlgebraSpec& s, const Form& omega, int k);
/// φ with i θ^{1,0}∧conj(θ^{1,0})∧ω^{n-1} = φ ω^n.
GaussRational positivity_coefficient(const AlgebraSpec& s, const Form& theta, const Form& omega);

/// Writes p = f(params) · g(unknowns) when p has a single unknown monomial
/// (up to the parameter factor); returns the unknown part.
std::optional<std::pair<Scalar, Scalar>> split_parameter_factor(const Scalar& p, const std::set<Var>& unknowns);

}  // namespace invarforms
