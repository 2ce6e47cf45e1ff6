#include "invarforms/expr.hpp"

#include <cctype>
#include <regex>

namespace invarforms {

namespace {

enum class Tok { Num, Ident, Op, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t pos = 0;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(c)) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Num, std::string(s.substr(start, i - start)), start});
    } else if (std::isalpha(c) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
    } else if (std::string_view("+-*/^(),").find(static_cast<char>(c)) != std::string_view::npos) {
      out.push_back({Tok::Op, std::string(1, static_cast<char>(c)), start});
      ++i;
    } else {
      throw ParseError("unexpected character '" + std::string(1, static_cast<char>(c)) + "' at " +
                       std::to_string(start));
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
public:
  Parser(std::string_view text, const SymbolTable& table) : text_(text), toks_(tokenize(text)), table_(table) {}

  Form run() {
    Form f = sum();
    if (peek().kind != Tok::End) fail("trailing input");
    return f;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  bool is_op(const char* op) const { return peek().kind == Tok::Op && peek().text == op; }
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(why + " at position " + std::to_string(peek().pos) + " in '" + std::string(text_) + "'");
  }
  void expect(const char* op) {
    if (!is_op(op)) fail(std::string("expected '") + op + "'");
    ++pos_;
  }

  Form constant(const Scalar& s) const { return Form::unit(table_.frame, s); }

  Form sum() {
    Form acc = term();
    while (is_op("+") || is_op("-")) {
      bool minus = next().text == "-";
      Form rhs = term();
      if (minus) {
        acc -= rhs;
      } else {
        acc += rhs;
      }
    }
    return acc;
  }

  Form term() {
    Form acc = unary();
    while (is_op("*") || is_op("/")) {
      bool div = next().text == "/";
      Form rhs = unary();
      if (div) {
        acc = acc * scalar_of(rhs, "divisor").inverse();
      } else {
        acc = wedge(acc, rhs);
      }
    }
    return acc;
  }

  Scalar scalar_of(const Form& f, const char* what) {
    for (const auto& [m, c] : f.terms())
      if (m != 0) fail(std::string(what) + " must be a scalar");
    Scalar s = f.coefficient(0);
    return s;
  }

  Form unary() {
    if (is_op("-")) {
      ++pos_;
      return -unary();
    }
    if (is_op("+")) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Form power() {
    Form base = primary();
    while (is_op("^")) {
      ++pos_;
      bool neg = false;
      if (is_op("-") && toks_[pos_ + 1].kind == Tok::Num) {
        neg = true;
        ++pos_;
      }
      if (peek().kind == Tok::Num) {
        int e = std::stoi(next().text);
        Scalar s = scalar_of(base, "base of an integer power");
        base = constant(s.pow(neg ? -e : e));
      } else {
        if (neg) fail("expected integer exponent");
        base = wedge(base, primary());
      }
    }
    return base;
  }

  Form primary() {
    const Token t = next();
    if (t.kind == Tok::Num) {
      mpz_class z(t.text, 10);
      return constant(Scalar(GaussRational(mpq_class(z))));
    }
    if (t.kind == Tok::Op && t.text == "(") {
      Form f = sum();
      expect(")");
      return f;
    }
    if (t.kind != Tok::Ident) {
      --pos_;
      fail("unexpected token '" + t.text + "'");
    }
    if (t.text == "i") return constant(Scalar::i());
    if (t.text == "conj" || t.text == "re" || t.text == "im") {
      expect("(");
      Form inner = sum();
      expect(")");
      Form c = conjugate_form(inner);
      if (t.text == "conj") return c;
      if (t.text == "re") return (inner + c) * Scalar(GaussRational(mpq_class(1, 2)));
      return (inner - c) * Scalar(GaussRational(0, mpq_class(-1, 2)));
    }
    static const std::regex gen_re(R"((phi|cphi|e)([0-9]+))");
    std::smatch m;
    if (std::regex_match(t.text, m, gen_re) && !table_.symbols.count(t.text)) {
      int idx = std::stoi(m[2].str());
      const Frame& f = table_.frame;
      std::string kind = m[1].str();
      bool ok = (kind == "e") ? !f.complex : f.complex;
      if (!ok) fail("generator '" + t.text + "' does not belong to this frame");
      if (idx < 1 || idx > f.n) fail("generator index out of range: " + t.text);
      if (kind == "cphi") return Form::cphi(f, idx);
      return Form::generator(f, idx - 1);
    }
    auto it = table_.symbols.find(t.text);
    if (it == table_.symbols.end()) {
      --pos_;
      fail("undeclared name '" + t.text + "'");
    }
    return constant(it->second);
  }

  std::string_view text_;
  std::vector<Token> toks_;
  const SymbolTable& table_;
  std::size_t pos_ = 0;
};

}  // namespace

Form parse_form(std::string_view text, const SymbolTable& table) { return Parser(text, table).run(); }

Scalar parse_scalar(std::string_view text, const std::map<std::string, Scalar>& symbols) {
  SymbolTable t;
  t.symbols = symbols;
  Form f = parse_form(text, t);
  for (const auto& [m, c] : f.terms())
    if (m != 0) throw ParseError("expected a scalar expression: " + std::string(text));
  return f.coefficient(0);
}

GaussRational parse_constant(std::string_view text) {
  Scalar s = parse_scalar(text);
  if (!s.is_constant()) throw ParseError("expected a constant: " + std::string(text));
  return s.constant_value();
}

}  // namespace invarforms
