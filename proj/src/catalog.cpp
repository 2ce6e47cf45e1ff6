#include "invarforms/catalog.hpp"

#include <map>
#include <regex>
#include <stdexcept>

namespace invarforms {

namespace {

struct Entry {
  const char* name;
  const char* text;
};

// Structure equations in the line format; constraints are attached below.
const Entry kComplex[] = {
    {"h1", "frame complex 3\nd phi1 = 0\nd phi2 = 0\nd phi3 = 0\n"},
    {"h3_Jplus", "frame complex 3\nd phi1 = 0\nd phi2 = 0\nd phi3 = phi1^cphi1 + phi2^cphi2\n"},
    {"h3_Jminus", "frame complex 3\nd phi1 = 0\nd phi2 = 0\nd phi3 = phi1^cphi1 - phi2^cphi2\n"},
    {"h8", "frame complex 3\nd phi1 = 0\nd phi2 = 0\nd phi3 = phi1^cphi1\n"},
    {"h9", "frame complex 3\nd phi1 = 0\nd phi2 = phi1^cphi1\nd phi3 = phi1^cphi2 + phi2^cphi1\n"},
    {"h19minus_Jplus",
     "frame complex 3\nd phi1 = 0\nd phi2 = phi1^phi3 + phi1^cphi3\nd phi3 = i*(phi1^cphi2 - phi2^cphi1)\n"},
    {"h19minus_Jminus",
     "frame complex 3\nd phi1 = 0\nd phi2 = phi1^phi3 + phi1^cphi3\nd phi3 = -i*(phi1^cphi2 - phi2^cphi1)\n"},
    {"nakamura",
     "frame complex 3\nparam t : complex\nd phi1 = 0\nd phi2 = -phi1^phi2 + t*phi2^cphi1\n"
     "d phi3 = phi1^phi3 - t*phi3^cphi1\n"},
    {"torus4", "frame complex 2\nd phi1 = 0\nd phi2 = 0\n"},
    {"hyperelliptic", "frame complex 2\nd phi1 = -1/2*phi1^phi2 + 1/2*phi1^cphi2\nd phi2 = 0\n"},
    {"inoue_SM",
     "frame complex 2\nparam alpha : real nonzero\nparam beta : real\n"
     "d phi1 = (alpha-i*beta)/(2*i)*phi1^phi2 - (alpha-i*beta)/(2*i)*phi1^cphi2\n"
     "d phi2 = -i*alpha*phi2^cphi2\n"},
    {"kodaira_primary", "frame complex 2\nd phi1 = 0\nd phi2 = i/2*phi1^cphi1\n"},
    {"kodaira_secondary", "frame complex 2\nd phi1 = -1/2*phi1^phi2 + 1/2*phi1^cphi2\nd phi2 = i/2*phi1^cphi1\n"},
    {"inoue_Spm",
     "frame complex 2\nparam q : real\n"
     "d phi1 = 1/(2*i)*phi1^phi2 + 1/(2*i)*phi2^cphi1 + q*i/2*phi2^cphi2\n"
     "d phi2 = 1/(2*i)*phi2^cphi2\n"},
    {"class1",
     "frame complex 3\nparam A : complex nonzero\n"
     "d phi1 = A*phi1^phi3 + A*phi1^cphi3\nd phi2 = -A*phi2^phi3 - A*phi2^cphi3\nd phi3 = 0\n"},
    {"class2",
     "frame complex 3\nparam g : real positive\nd phi1 = 0\n"
     "d phi2 = -1/2*phi1^phi3 - (1/2+g*i)*phi1^cphi3 + g*i*phi3^cphi1\n"
     "d phi3 = 1/2*phi1^phi2 + (1/2-i/(4*g))*phi1^cphi2 + i/(4*g)*phi2^cphi1\n"},
    {"class3",
     "frame complex 3\nparam A : complex nonzero\nparam s11 : real\nparam s22 : real\nparam s12 : complex\n"
     "d phi1 = A*phi1^phi3 + A*phi1^cphi3\nd phi2 = -A*phi2^phi3 - A*phi2^cphi3\n"
     "d phi3 = s11*phi1^cphi1 + s12*phi1^cphi2 + conj(s12)*phi2^cphi1 + s22*phi2^cphi2\n"},
    {"class4",
     "frame complex 3\nparam A : complex\n"
     "d phi1 = -(A-i)*phi1^phi3 - (A+i)*phi1^cphi3\nd phi2 = (A-i)*phi2^phi3 + (A+i)*phi2^cphi3\nd phi3 = 0\n"},
    {"class5", "frame complex 3\nd phi1 = 2*i*phi1^phi3 + phi3^cphi3\nd phi2 = -2*i*phi2^phi3\nd phi3 = 0\n"},
    {"class6",
     "frame complex 3\nd phi1 = 2*i*phi1^phi3 + phi3^cphi3\nd phi2 = -2*i*phi2^phi3 + phi3^cphi3\nd phi3 = 0\n"},
    {"class7",
     "frame complex 3\nd phi1 = -phi3^cphi3\n"
     "d phi2 = -i/2*phi2^cphi1 + 1/2*phi1^cphi3 + i/2*phi1^phi2\n"
     "d phi3 = i/2*phi3^cphi1 - i/2*phi1^phi3\n"},
};

const Entry kReal[] = {
    {"h3", "(0,0,0,0,0,12+34)"},
    {"heis5xR", "(0,0,0,0,0,12+34)"},
    {"h8_real", "(0,0,0,0,0,12)"},
    {"heis3", "(0,0,12)"},
    {"heis5", "(0,0,0,0,12+34)"},
    {"r5", "(0,0,0,0,0)"},
    {"contact5_1", "(0,0,0,0,12+34)"},
    {"contact5_2", "(0,0,0,12,14+23)"},
    {"contact5_3", "(0,0,12,13,14-23)"},
};

GaussRational get(const Assignment& a, const std::string& k) {
  auto it = a.find(k);
  return it == a.end() ? GaussRational() : it->second;
}

void attach_constraints(AlgebraSpec& s, const std::string& name) {
  auto unit_circle = Constraint{"|A| = 1", [](const Assignment& a) { return get(a, "A").norm2() == 1; }};
  if (name == "class1") {
    s.constraints.push_back(unit_circle);
  } else if (name == "class3") {
    s.constraints.push_back(unit_circle);
    s.constraints.push_back({"Re A s11 = 0", [](const Assignment& a) {
                               return sgn(get(a, "A").re()) == 0 || get(a, "s11").is_zero();
                             }});
    s.constraints.push_back({"Re A s22 = 0", [](const Assignment& a) {
                               return sgn(get(a, "A").re()) == 0 || get(a, "s22").is_zero();
                             }});
    s.constraints.push_back({"Im A s12 = 0", [](const Assignment& a) {
                               return sgn(get(a, "A").im()) == 0 || get(a, "s12").is_zero();
                             }});
    s.constraints.push_back({"(s11, s22, s12) != 0", [](const Assignment& a) {
                               return !(get(a, "s11").is_zero() && get(a, "s22").is_zero() &&
                                        get(a, "s12").is_zero());
                             }});
  } else if (name == "class4") {
    s.constraints.push_back({"Im A != 0", [](const Assignment& a) { return sgn(get(a, "A").im()) != 0; }});
  }
}

}  // namespace

AlgebraSpec load_catalog(const std::string& name) {
  static const std::regex torus_re(R"(torus\(([0-9]+)\))");
  std::smatch m;
  if (std::regex_match(name, m, torus_re)) {
    int n = std::stoi(m[1].str());
    if (n < 1 || n > 6) throw std::invalid_argument("torus rank out of range: " + name);
    std::string text = "frame complex " + std::to_string(n) + "\n";
    for (int j = 1; j <= n; ++j) text += "d phi" + std::to_string(j) + " = 0\n";
    AlgebraSpec s = parse_complex_dsl(text);
    s.name = name;
    return s;
  }
  for (const auto& e : kComplex) {
    if (name != e.name) continue;
    AlgebraSpec s = parse_complex_dsl(e.text);
    s.name = name;
    attach_constraints(s, name);
    return s;
  }
  for (const auto& e : kReal) {
    if (name != e.name) continue;
    AlgebraSpec s = parse_salamon(e.text);
    s.name = name;
    return s;
  }
  if (name == "heis5xR_Jplus") {
    AlgebraSpec s = complexify(parse_salamon("(0,0,0,0,0,12+34)"), {{1, 2}, {3, 4}, {5, 6}});
    s.name = name;
    return s;
  }
  throw std::invalid_argument("unknown catalog entry: " + name);
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& e : kComplex) out.emplace_back(e.name);
  out.emplace_back("heis5xR_Jplus");
  for (const auto& e : kReal) out.emplace_back(e.name);
  out.emplace_back("torus(3)");
  return out;
}

std::vector<std::string> contact5_list() {
  return {"(0,0,0,0,12+34)", "(0,0,0,12,14+23)", "(0,0,12,13,14-23)"};
}

}  // namespace invarforms
