#pragma once

#include "invarforms/spec.hpp"

#include <string>
#include <vector>

namespace invarforms {

/// Named fixtures. `torus(n)` is accepted for any 1 <= n <= 6.
/// Throws std::invalid_argument for unknown names.
AlgebraSpec load_catalog(const std::string& name);
std::vector<std::string> catalog_names();

/// The three 5-dimensional contact nilpotent algebras, in Salamon notation.
std::vector<std::string> contact5_list();

}  // namespace invarforms
