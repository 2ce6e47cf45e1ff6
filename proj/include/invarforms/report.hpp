#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace invarforms {

inline constexpr const char* kToolVersion = "invarforms 1.0.0";

enum class Status { Pass, Fail, Witness, CertifiedNonexistence, Unknown };

std::string status_name(Status s);
/// Inverse of status_name; throws std::invalid_argument on anything else.
Status parse_status(const std::string& s);

struct CheckRecord {
  std::string name;
  Status status = Status::Unknown;
  std::optional<Status> expected;  // what the reference claims, when it claims something
  std::string fixture;
  std::string anchor;  // excerpt of the source formula the record checks
  nlohmann::json data = nlohmann::json::object();
  std::int64_t runtime_ms = 0;

  bool as_expected() const { return !expected || *expected == status; }
  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct Report {
  std::string tool_version = kToolVersion;
  std::string command;
  std::string input_digest;
  std::vector<CheckRecord> records;

  friend bool operator==(const Report&, const Report&) = default;
};

nlohmann::json report_to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

enum class Format { Json, Text };
/// JSON: sorted keys, two-space indent, trailing newline, no floating point.
/// Text: one aligned line per record followed by the indented data.
std::string emit_report(const Report& r, Format f);

/// Hex SHA-256 of the given byte strings, each prefixed by its length.
std::string digest(const std::vector<std::string>& parts);

/// Exit codes of the command-line tool.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int internal = 1;
inline constexpr int validation = 2;
inline constexpr int nonexistence = 3;
inline constexpr int unknown = 4;
inline constexpr int usage = 64;
}  // namespace exit_code

/// Exit code for a reproduction run: 2 if a record is FAIL or differs from its
/// expectation, else 4 if a record is UNKNOWN, else 0.
int reproduce_exit_code(const Report& r);
/// Exit code for an existence query answered by a single status.
int query_exit_code(Status s);

}  // namespace invarforms
