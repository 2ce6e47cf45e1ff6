#pragma once

#include "invarforms/feasibility.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace invarforms {

/// A solvmanifold surface family together with its parameter grid.
struct SurfaceFamily {
  std::string name;     // display name
  std::string catalog;  // catalog entry
  std::string anchor;   // quote of the claim being checked
  std::vector<Assignment> points;
};

std::vector<SurfaceFamily> surface_families();

/// Free coefficients of Ω = iAφ^{11̄} + iBφ^{22̄} + Dφ^{12̄} - D̄φ^{21̄} + Lφ^{12} + L̄φ^{1̄2̄}.
struct SurfaceSample {
  GaussRational A, B, D, L;
};

/// Samples with A, B > 0 and AB > |D|².
std::vector<SurfaceSample> surface_samples();

/// The published witness (Ω, θ) for a family in lcK or lcht mode, built from
/// the free sample; coefficients the formula pins down (D = 0, L = -D, ...) are
/// overridden. nullopt when no witness is published (S± with q ≠ 0 in lcK mode).
std::optional<Witness> surface_witness(const std::string& catalog, StructureMode mode, const Assignment& point,
                                       const SurfaceSample& free);

struct CellCheck {
  std::string klass;
  std::string point;   // e.g. "A=i"
  std::string row;     // monomial label
  std::string column;  // "theta^Omega", "dOmega" or "dtheta=0"
  std::string expected;
  std::string computed;
  bool match = false;
};

struct TableReproduction {
  std::vector<CellCheck> cells;
  std::map<std::string, std::size_t> points;  // per class
  bool all_match() const;
  std::vector<const CellCheck*> mismatches() const;
};

/// Compares every cell of the transcribed coefficient table with the computed
/// coefficients of θ∧Ω and dΩ at each listed parameter point. With `errata`
/// the corrections listed in the table file replace the transcribed cells.
TableReproduction reproduce_table(const nlohmann::json& table, bool errata = false);

/// A pair of cells at conjugate monomials whose entries are not conjugate,
/// which is impossible for the coefficients of a real form.
struct ConjugationConflict {
  std::string column;
  std::string row;
  std::string partner;
};

/// Self-consistency of the table under conjugation, symbolic in the parameters.
std::vector<ConjugationConflict> table_conjugation_conflicts(const nlohmann::json& table, bool errata = false);
nlohmann::json load_table3();

/// Identities of the deformed holomorphically parallelizable Nakamura manifold.
struct NakamuraReport {
  bool ddbar_closed_form = false;  // ∂∂̄ω_t against the displayed expression
  bool ddbar_wedge = false;        // ∂∂̄ω_t∧ω_t top coefficient
  bool pluriclosed_forces_BCF = false;
  std::vector<std::string> pluriclosed_factors;  // unknown parts of the residual, e.g. "B"
  bool balanced = false;           // d(Ω_t²) = 0 for Ω_t = iΣφ^{jj̄}
  bool dOmega_expansion = false;   // the twelve-term dΩ_t display
  std::string ddbar_difference;    // nonzero remainder, for diagnostics
  std::string dOmega_difference;
};

NakamuraReport nakamura_checks();

}  // namespace invarforms
