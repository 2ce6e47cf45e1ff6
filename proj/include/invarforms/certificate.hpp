#pragma once

#include "invarforms/feasibility.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace invarforms {

/// Nonexistence certificate. The tree is a chain of nodes linked by "next";
/// node kinds:
///   combine       {"id", "terms": [{"eq", "coeff"}], "result"}
///   cancel        {"id", "from", "factor", "result"}       from = factor·result
///   conjugate     {"id", "from", "result"}
///   split         {"var", "zero": node, "nonzero": node}
///   contradiction {"eq", "terms": [{"coeff", "factors": [...]}]}
/// Equations are referenced by residual label ("13b3", "theta:0"), by position
/// in the residual list ("#4"), or by the id of a derived equation. Leaf
/// factors are strict atom names, "sq:x" (x real) or "abs2:x" (x complex).
struct Certificate {
  std::string name;
  std::string spec;  // catalog name, may be empty
  StructureMode mode = StructureMode::Lcht;
  std::optional<std::string> naming;  // nil | solv | surface | nakamura
  std::optional<bool> reduced;
  std::vector<std::string> atoms;
  std::vector<Assignment> instances;  // empty: one run with parameters symbolic
  nlohmann::json tree;
  nlohmann::json raw;
};

/// Throws ParseError on malformed input.
Certificate parse_certificate(const std::string& text);
Certificate load_certificate(const std::string& path);

struct CheckResult {
  bool valid = false;
  int step = -1;  // offending node index in pre-order, when invalid
  std::string message;
  std::size_t nodes = 0;
};

/// `instance` supplies constants for parameter names already instantiated in s.
CheckResult certificate_check(const AlgebraSpec& s, const GenericAnsatz& a, const Certificate& c,
                              const Assignment& instance = {});

/// Options of the ansatz a certificate is written against.
AnsatzOptions certificate_options(const Certificate& c);

struct CertifyReport {
  bool valid = true;
  std::vector<std::pair<std::string, CheckResult>> runs;  // one per instance
};

/// Builds the spec and ansatz for every instance and checks the tree.
CertifyReport certify(const AlgebraSpec& s, const Certificate& c);

/// Paths of the shipped certificates (data/certificates/*.json), sorted.
std::vector<std::string> shipped_certificates();
std::string data_dir();

}  // namespace invarforms
