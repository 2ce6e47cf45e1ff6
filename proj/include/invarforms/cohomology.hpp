#pragma once

#include "invarforms/form.hpp"
#include "invarforms/spec.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace invarforms {

enum class Theory { DeRham, Dolbeault, BottChern, Aeppli, MorseNovikov };

std::string theory_name(Theory t);
/// Accepts deRham, dolbeault, bottChern, aeppli, morseNovikov (also bc, a, mn).
Theory parse_theory(const std::string& name);

struct CohomologyReport {
  Theory theory = Theory::DeRham;
  std::optional<Form> theta;
  /// Filled for deRham and morseNovikov.
  std::map<int, long> by_degree;
  /// Filled for the bigraded theories.
  std::map<std::pair<int, int>, long> by_bidegree;
  std::vector<std::string> notes;
};

/// Exact dimensions of invariant cohomology. Throws ValidationError for
/// symbolic specs, real frames with bigraded theories, or non-closed θ.
CohomologyReport cohomology_dims(const AlgebraSpec& s, Theory theory, const std::optional<Form>& theta = std::nullopt);

struct DdbarReport {
  std::map<std::pair<int, int>, bool> per_bidegree;
  bool global = true;
};

/// ker∂ ∩ ker∂̄ ∩ (im∂ + im∂̄) ⊆ im∂∂̄ on every Λ^{p,q}.
DdbarReport ddbar_lemma_check(const AlgebraSpec& s);
/// ker∂ ∩ ker∂̄ ∩ im∂̄ ⊆ im∂∂̄ on Λ^{p,q}.
bool bc_to_dolbeault_injectivity(const AlgebraSpec& s, int p, int q);
/// (n-1,n)-th weak ∂∂̄-lemma on the invariant double complex.
bool weak_ddbar_check(const AlgebraSpec& s);
/// Σ_{p+q=k} (h_BC + h_A) - 2 b_k.
long delta_degrees(const AlgebraSpec& s, int k);
/// The same sum with a single -b_k, reported alongside for comparison.
long delta_degrees_single(const AlgebraSpec& s, int k);

}  // namespace invarforms
