#include "invarforms/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace invarforms {

namespace {

const std::pair<Status, const char*> kNames[] = {
    {Status::Pass, "PASS"},
    {Status::Fail, "FAIL"},
    {Status::Witness, "WITNESS"},
    {Status::CertifiedNonexistence, "CERTIFIED_NONEXISTENCE"},
    {Status::Unknown, "UNKNOWN"},
};

// Floats never belong in a report; catch them before they are serialized.
void reject_floats(const nlohmann::json& j, const std::string& where) {
  if (j.is_number_float()) throw std::logic_error("floating point value in report field " + where);
  if (j.is_structured())
    for (auto it = j.begin(); it != j.end(); ++it) reject_floats(*it, where);
}

void render(std::ostringstream& out, const nlohmann::json& j, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it->is_structured() && !it->empty()) {
        out << pad << it.key() << ":\n";
        render(out, *it, indent + 2);
      } else {
        out << pad << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_structured() && !v.empty()) {
        out << pad << "-\n";
        render(out, v, indent + 2);
      } else {
        out << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else {
    out << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

std::string status_name(Status s) {
  for (const auto& [k, n] : kNames)
    if (k == s) return n;
  throw std::logic_error("bad status");
}

Status parse_status(const std::string& s) {
  for (const auto& [k, n] : kNames)
    if (s == n) return k;
  throw std::invalid_argument("unknown status '" + s + "'");
}

nlohmann::json report_to_json(const Report& r) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& c : r.records) {
    reject_floats(c.data, c.name);
    nlohmann::json j{{"name", c.name},     {"status", status_name(c.status)}, {"fixture", c.fixture},
                     {"anchor", c.anchor}, {"data", c.data},                  {"runtime_ms", c.runtime_ms}};
    j["expected"] = c.expected ? nlohmann::json(status_name(*c.expected)) : nlohmann::json(nullptr);
    records.push_back(std::move(j));
  }
  return {{"tool_version", r.tool_version},
          {"command", r.command},
          {"input_digest", r.input_digest},
          {"records", std::move(records)}};
}

Report report_from_json(const nlohmann::json& j) {
  Report r;
  r.tool_version = j.at("tool_version").get<std::string>();
  r.command = j.at("command").get<std::string>();
  r.input_digest = j.at("input_digest").get<std::string>();
  for (const auto& c : j.at("records")) {
    CheckRecord rec;
    rec.name = c.at("name").get<std::string>();
    rec.status = parse_status(c.at("status").get<std::string>());
    if (!c.at("expected").is_null()) rec.expected = parse_status(c.at("expected").get<std::string>());
    rec.fixture = c.at("fixture").get<std::string>();
    rec.anchor = c.at("anchor").get<std::string>();
    rec.data = c.at("data");
    rec.runtime_ms = c.at("runtime_ms").get<std::int64_t>();
    if (rec.runtime_ms < 0) throw std::invalid_argument("negative runtime in record " + rec.name);
    r.records.push_back(std::move(rec));
  }
  return r;
}

std::string emit_report(const Report& r, Format f) {
  if (f == Format::Json) return report_to_json(r).dump(2) + "\n";  // nlohmann objects are key-sorted

  std::ostringstream out;
  out << r.tool_version << "\n" << "command: " << r.command << "\n" << "input digest: " << r.input_digest << "\n\n";
  std::size_t wn = 4, ws = 6;
  for (const auto& c : r.records) {
    wn = std::max(wn, c.name.size());
    ws = std::max(ws, status_name(c.status).size());
  }
  auto cell = [](std::string s, std::size_t w) {
    s.resize(std::max(w, s.size()), ' ');
    return s;
  };
  out << cell("name", wn) << "  " << cell("status", ws) << "  expected\n";
  for (const auto& c : r.records) {
    out << cell(c.name, wn) << "  " << cell(status_name(c.status), ws) << "  "
        << (c.expected ? status_name(*c.expected) : "-") << (c.as_expected() ? "" : "  (differs)") << "\n";
  }
  for (const auto& c : r.records) {
    out << "\n[" << c.name << "] fixture " << c.fixture << ", " << c.runtime_ms << " ms\n";
    out << "  anchor: " << c.anchor << "\n";
    render(out, c.data, 2);
  }
  return out.str();
}

std::string digest(const std::vector<std::string>& parts) {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  for (const auto& p : parts) {
    std::string len = std::to_string(p.size()) + ":";
    EVP_DigestUpdate(ctx, len.data(), len.size());
    EVP_DigestUpdate(ctx, p.data(), p.size());
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int n = 0;
  EVP_DigestFinal_ex(ctx, md, &n);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

int reproduce_exit_code(const Report& r) {
  bool unknown = false;
  for (const auto& c : r.records) {
    if (c.status == Status::Fail || !c.as_expected()) return exit_code::validation;
    unknown = unknown || c.status == Status::Unknown;
  }
  return unknown ? exit_code::unknown : exit_code::ok;
}

int query_exit_code(Status s) {
  switch (s) {
    case Status::Pass:
    case Status::Witness:
      return exit_code::ok;
    case Status::Fail:
      return exit_code::validation;
    case Status::CertifiedNonexistence:
      return exit_code::nonexistence;
    case Status::Unknown:
      return exit_code::unknown;
  }
  return exit_code::internal;
}

}  // namespace invarforms
