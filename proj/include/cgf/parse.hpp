#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "cgf/hydrogenic.hpp"
#include "cgf/wick.hpp"

namespace cgf {

// Expression grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := scalar | opname | factor '^' uint | '(' expr ')'
//   scalar := rational | rational 'i' | 'w'
// Mode names a1, a2, b1, b2 take dagger postfixes: '†', a tight trailing '+'
// (no whitespace before it, no name/paren after it), or '^' when not followed
// by an unsigned integer. '/' is scalar-by-scalar division only; dividing an
// operator product stays rejected.

namespace lex {

enum class Kind : std::uint8_t {
  End, Plus, Minus, Star, Slash, Caret, LParen, RParen, Dagger,
  Rational, ImagRational, Ident
};

struct Token {
  Kind kind = Kind::End;
  std::size_t offset = 0;
  BigRational value{};    // Rational / ImagRational
  std::string text;       // Ident
  bool tightPlus = false; // '+' eligible as a dagger postfix
};

inline bool identChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

inline std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  const auto peek = [&](std::size_t k) -> char {
    return k < src.size() ? src[k] : '\0';
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.offset = i;
    if (c == '+') {
      t.kind = Kind::Plus;
      // Dagger spelling: glued to the previous name, not opening a new one.
      const bool tightLeft = i > 0 && identChar(src[i - 1]);
      const char next = peek(i + 1);
      t.tightPlus = tightLeft && !identChar(next) && next != '(';
      ++i;
    } else if (c == '-') {
      t.kind = Kind::Minus;
      ++i;
    } else if (c == '*') {
      t.kind = Kind::Star;
      ++i;
    } else if (c == '/') {
      t.kind = Kind::Slash;
      ++i;
    } else if (c == '^') {
      t.kind = Kind::Caret;
      ++i;
    } else if (c == '(') {
      t.kind = Kind::LParen;
      ++i;
    } else if (c == ')') {
      t.kind = Kind::RParen;
      ++i;
    } else if (static_cast<unsigned char>(c) == 0xE2 &&
               static_cast<unsigned char>(peek(i + 1)) == 0x80 &&
               static_cast<unsigned char>(peek(i + 2)) == 0xA0) {
      t.kind = Kind::Dagger;  // UTF-8 dagger
      i += 3;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (std::isdigit(static_cast<unsigned char>(peek(j)))) ++j;
      BigInt num(src.substr(i, j - i));
      BigInt den(1);
      if (peek(j) == '/' && std::isdigit(static_cast<unsigned char>(peek(j + 1)))) {
        std::size_t k = j + 1;
        while (std::isdigit(static_cast<unsigned char>(peek(k)))) ++k;
        den = BigInt(src.substr(j + 1, k - j - 1));
        if (den == 0) throw ParseError(j + 1, "a nonzero denominator");
        j = k;
      }
      t.value = BigRational(num, den);
      if (peek(j) == 'i' && !identChar(peek(j + 1))) {
        t.kind = Kind::ImagRational;
        ++j;
      } else {
        t.kind = Kind::Rational;
      }
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (identChar(peek(j))) ++j;
      t.kind = Kind::Ident;
      t.text = src.substr(i, j - i);
      i = j;
    } else {
      throw ParseError(i, "an operator, a name, or a scalar");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Kind::End;
  end.offset = src.size();
  out.push_back(end);
  return out;
}

}  // namespace lex

namespace detail {

struct NameTables {
  std::map<std::string, GeneratorName> generators;
  std::map<std::string, PhysicalOpName> physicals;
  std::map<std::string, ModeOp> modes;
};

inline const NameTables& nameTables() {
  static const NameTables tables = [] {
    NameTables t;
    for (GeneratorName g : allGenerators()) t.generators[generatorString(g)] = g;
    for (PhysicalOpName p :
         {PhysicalOpName::r, PhysicalOpName::x1, PhysicalOpName::x2, PhysicalOpName::x3,
          PhysicalOpName::rp1, PhysicalOpName::rp2, PhysicalOpName::rp3,
          PhysicalOpName::rpSquared, PhysicalOpName::L2, PhysicalOpName::l1,
          PhysicalOpName::l2, PhysicalOpName::l3})
      t.physicals[physicalOpString(p)] = p;
    t.modes["a1"] = ModeOp{Family::a, 1, false};
    t.modes["a2"] = ModeOp{Family::a, 2, false};
    t.modes["b1"] = ModeOp{Family::b, 1, false};
    t.modes["b2"] = ModeOp{Family::b, 2, false};
    return t;
  }();
  return tables;
}

class Parser {
public:
  explicit Parser(const std::string& src) : toks_(lex::tokenize(src)) {}

  OperatorExpr run() {
    OperatorExpr e = expression();
    if (cur().kind != lex::Kind::End)
      throw ParseError(cur().offset, "'+', '-', '*', '/', or end of input");
    return e;
  }

private:
  const lex::Token& cur() const { return toks_[pos_]; }
  const lex::Token& ahead() const {
    return toks_[std::min(pos_ + 1, toks_.size() - 1)];
  }
  void advance() { ++pos_; }

  OperatorExpr expression() {
    bool negate = false;
    if (cur().kind == lex::Kind::Minus) {
      negate = true;
      advance();
    }
    OperatorExpr e = term();
    if (negate) e = -e;
    while (true) {
      if (cur().kind == lex::Kind::Plus) {
        advance();
        e += term();
      } else if (cur().kind == lex::Kind::Minus) {
        advance();
        e -= term();
      } else {
        return e;
      }
    }
  }

  OperatorExpr term() {
    OperatorExpr e = factor();
    while (true) {
      if (cur().kind == lex::Kind::Star) {
        advance();
        e = multiply(e, factor());
      } else if (cur().kind == lex::Kind::Slash) {
        const std::size_t at = cur().offset;
        advance();
        e = scalarQuotient(e, factor(), at);
      } else {
        return e;
      }
    }
  }

  static bool isScalarExpr(const OperatorExpr& e) {
    return e.isZero() ||
           (e.termCount() == 1 && e.terms().begin()->first.isIdentity());
  }

  static OperatorExpr scalarQuotient(const OperatorExpr& num, const OperatorExpr& den,
                                     std::size_t at) {
    if (!isScalarExpr(num) || !isScalarExpr(den))
      throw ParseError(at, "scalar operands ('/' divides coefficients only; "
                           "operator products cannot be divided)");
    if (den.isZero()) throw ParseError(at, "a nonzero divisor");
    const Coefficient& d = den.terms().begin()->second;
    if (!d.isMonomial())
      throw ParseError(at, "a single-monomial divisor (like 2*w)");
    if (num.isZero()) return OperatorExpr::zero();
    return OperatorExpr::scalar(num.terms().begin()->second / d);
  }

  OperatorExpr factor() {
    OperatorExpr e;
    bool isMode = false;
    switch (cur().kind) {
      case lex::Kind::Rational:
        e = OperatorExpr::scalar(Coefficient(cur().value));
        advance();
        break;
      case lex::Kind::ImagRational:
        e = OperatorExpr::scalar(
            Coefficient(GaussianRational(BigRational(0), cur().value)));
        advance();
        break;
      case lex::Kind::LParen: {
        advance();
        e = expression();
        if (cur().kind != lex::Kind::RParen) throw ParseError(cur().offset, "')'");
        advance();
        break;
      }
      case lex::Kind::Ident: {
        const auto& tables = nameTables();
        const std::string& name = cur().text;
        if (name == "w") {
          e = OperatorExpr::scalar(Coefficient::symbol(Symbol::w));
        } else if (auto it = tables.modes.find(name); it != tables.modes.end()) {
          e = OperatorExpr::mode(it->second);
          isMode = true;
        } else if (auto it = tables.generators.find(name);
                   it != tables.generators.end()) {
          e = generator(it->second);
        } else if (auto it = tables.physicals.find(name);
                   it != tables.physicals.end()) {
          e = physicalOperator(it->second);
        } else {
          throw ParseError(cur().offset, "an operator name or 'w'");
        }
        advance();
        break;
      }
      default:
        throw ParseError(cur().offset, "a scalar, a name, or '('");
    }

    // Postfixes: daggers (modes only) and '^ uint' powers.
    while (true) {
      const lex::Kind k = cur().kind;
      const bool caretDagger =
          k == lex::Kind::Caret && ahead().kind != lex::Kind::Rational;
      if (k == lex::Kind::Dagger || caretDagger ||
          (k == lex::Kind::Plus && cur().tightPlus)) {
        if (!isMode)
          throw ParseError(cur().offset,
                           "dagger on a mode operator (a1, a2, b1, b2) only");
        e = adjoint(e);
        advance();
      } else if (k == lex::Kind::Caret) {
        advance();  // onto the exponent
        const BigRational& p = cur().value;
        if (denominator(p) != 1 || p < 0 || p > 512)
          throw ParseError(cur().offset, "an unsigned integer exponent (<= 512)");
        const unsigned n = numerator(p).convert_to<unsigned>();
        advance();
        OperatorExpr power = OperatorExpr::one();
        for (unsigned j = 0; j < n; ++j) power = multiply(power, e);
        e = power;
        isMode = false;
      } else {
        return e;
      }
    }
  }

  std::vector<lex::Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline OperatorExpr parseExpr(const std::string& text) {
  return detail::Parser(text).run();
}

// ---------------------------------------------------------------------------
// Canonical printer
// ---------------------------------------------------------------------------

namespace detail {

inline std::string ratStr(const BigRational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

inline std::string modeName(int mode) {
  static const char* names[4] = {"a1", "a2", "b1", "b2"};
  return names[mode];
}

inline std::string monomialStr(const NormalMonomial& m) {
  std::string out;
  const auto append = [&](const std::string& base, unsigned exp) {
    if (exp == 0) return;
    if (!out.empty()) out += "*";
    out += base;
    if (exp != 1) out += "^" + std::to_string(exp);
  };
  for (int mode = 0; mode < 4; ++mode) append(modeName(mode) + "^", m.creation(mode));
  for (int mode = 0; mode < 4; ++mode) append(modeName(mode), m.annihilation(mode));
  return out;
}

struct PrintedTerm {
  bool negative = false;
  std::string body;
};

// One Laurent term c * w^k rendered so that the output re-parses exactly:
// negative powers print as divisions ("1/w", "3/(2*w)"), imaginary parts as
// the 'i'-suffixed scalar.
inline PrintedTerm laurentTermStr(int wpow, GaussianRational g) {
  PrintedTerm out;
  const bool pureReal = g.im == 0;
  const bool pureImag = g.re == 0 && g.im != 0;
  if (pureReal && g.re < 0) {
    out.negative = true;
    g = -g;
  } else if (pureImag && g.im < 0) {
    out.negative = true;
    g = -g;
  }

  std::string wpart;
  if (wpow != 0) {
    const int a = wpow > 0 ? wpow : -wpow;
    wpart = a == 1 ? "w" : "w^" + std::to_string(a);
  }

  if (!pureReal && !pureImag) {
    // Mixed Gaussian scalar, parenthesized: (a+bi) or (a-bi).
    std::string s = "(" + ratStr(g.re) + (g.im > 0 ? "+" : "-") +
                    ratStr(boost::multiprecision::abs(g.im)) + "i)";
    if (wpow > 0) s += "*" + wpart;
    if (wpow < 0) s += "/" + wpart;
    out.body = s;
    return out;
  }

  const BigRational mag = pureReal ? g.re : g.im;
  const std::string suffix = pureImag ? "i" : "";
  if (wpow == 0) {
    out.body = ratStr(mag) + suffix;
  } else if (wpow > 0) {
    out.body = (mag == 1 && !pureImag) ? wpart : ratStr(mag) + suffix + "*" + wpart;
  } else if (pureImag) {
    out.body = ratStr(mag) + "i/" + wpart;
  } else if (denominator(mag) == 1) {
    out.body = numerator(mag).str() + "/" + wpart;
  } else {
    out.body = numerator(mag).str() + "/(" + denominator(mag).str() + "*" + wpart + ")";
  }
  return out;
}

// A full coefficient next to an (optional) operator monomial.
inline PrintedTerm coefficientTermStr(const Coefficient& c, const std::string& mono) {
  for (const auto& [e, g] : c.terms())
    for (std::size_t k = 1; k < kSymbolCount; ++k)
      if (e[k] != 0)
        throw DomainError("printExpr: only w-coefficients have a text form");

  PrintedTerm out;
  if (c.isZero()) {
    out.body = "0";
    return out;
  }
  if (c.isMonomial()) {
    const auto& [e, g] = *c.terms().begin();
    if (e[0] == 0 && g == GaussianRational(1)) {
      out.body = mono.empty() ? "1" : mono;
      return out;
    }
    if (e[0] == 0 && g == GaussianRational(-1) && !mono.empty()) {
      out.negative = true;
      out.body = mono;
      return out;
    }
    out = laurentTermStr(e[0], g);
    if (!mono.empty()) out.body += "*" + mono;
    return out;
  }
  // Multi-term coefficient: parenthesize next to a monomial.
  std::string inner;
  bool first = true;
  for (const auto& [e, g] : c.terms()) {
    const PrintedTerm t = laurentTermStr(e[0], g);
    if (first) {
      inner += (t.negative ? "-" : "") + t.body;
      first = false;
    } else {
      inner += (t.negative ? " - " : " + ") + t.body;
    }
  }
  if (mono.empty()) {
    out.body = inner;
  } else {
    out.body = "(" + inner + ")*" + mono;
  }
  return out;
}

}  // namespace detail

// Canonical text form: graded-descending monomial order (total degree first,
// then reverse-lexicographic on the slot exponents), '-' folded into the
// term separators. parse(printExpr(e)) == e exactly.
inline std::string printExpr(const OperatorExpr& expr) {
  if (expr.isZero()) return "0";
  std::vector<const OperatorExpr::TermMap::value_type*> terms;
  for (const auto& kv : expr.terms()) terms.push_back(&kv);
  std::sort(terms.begin(), terms.end(), [](const auto* x, const auto* y) {
    const unsigned dx = x->first.degree(), dy = y->first.degree();
    if (dx != dy) return dx > dy;
    return x->first.e > y->first.e;
  });

  std::string out;
  bool first = true;
  for (const auto* kv : terms) {
    const detail::PrintedTerm t =
        detail::coefficientTermStr(kv->second, detail::monomialStr(kv->first));
    if (first) {
      out += (t.negative ? "-" : "") + t.body;
      first = false;
    } else {
      out += (t.negative ? " - " : " + ") + t.body;
    }
  }
  return out;
}

// Standalone scalar (w-Laurent) rendering, e.g. exact vacuum expectations.
inline std::string printCoefficient(const Coefficient& c) {
  const detail::PrintedTerm t = detail::coefficientTermStr(c, "");
  return (t.negative ? "-" : "") + t.body;
}

}  // namespace cgf
