#pragma once

// Reader and writer for the algebra description language:
//
//   algebra <Name> {
//     carrier <m>
//     alias <name> = <element>                 # optional element names
//     const <name> = <element> | free
//     op <name>/<arity> = [<e0>, ..., <e_{m^arity-1}>] | free
//     require <suite>[, <suite>...]           # search specs only
//     goal find-first | count-all | prove-none # search specs only
//   }
//   identity <name>(<v1>,...,<vk>): <term> = <term>
//
// Table entries may be `?` to leave a single cell free. Comments run from `#`
// to the end of the line.

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "protoalg/algebra.hpp"
#include "protoalg/error.hpp"
#include "protoalg/term.hpp"

namespace protoalg {

using Cell = std::optional<Element>;

/// An algebra block whose cells may still be free. Fully pinned blocks convert to FiniteAlgebra.
struct PartialAlgebra {
  std::string name;
  Signature signature;
  std::size_t carrier = 0;
  std::map<std::string, std::vector<Cell>, std::less<>> tables;
  std::map<std::string, Cell, std::less<>> constants;
  std::vector<std::string> requirements;
  std::optional<std::string> goal;

  bool complete() const {
    for (const auto& op : signature.ops()) {
      auto it = tables.find(op.name);
      if (it == tables.end()) return false;
      for (const auto& c : it->second)
        if (!c) return false;
    }
    for (const auto& c : signature.constants()) {
      auto it = constants.find(c);
      if (it == constants.end() || !it->second) return false;
    }
    return true;
  }

  FiniteAlgebra to_algebra() const {
    FiniteAlgebra alg(name, signature, carrier);
    for (const auto& op : signature.ops()) {
      auto it = tables.find(op.name);
      if (it == tables.end()) throw InvalidArgument("operation '" + op.name + "' has no table");
      std::vector<Element> values;
      values.reserve(it->second.size());
      for (const auto& c : it->second) {
        if (!c) throw InvalidArgument("operation '" + op.name + "' has free cells");
        values.push_back(*c);
      }
      alg.set_table(op.name, std::move(values));
    }
    for (const auto& c : signature.constants()) {
      auto it = constants.find(c);
      if (it == constants.end() || !it->second) throw InvalidArgument("constant '" + c + "' is free");
      alg.set_constant(c, *it->second);
    }
    return alg;
  }
};

struct Document {
  std::vector<PartialAlgebra> algebras;
  std::vector<Identity> identities;
};

namespace detail {

struct Token {
  enum class Kind { Word, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

inline bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '-' || c == '.' || c == '@';
}

inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    if (is_word_char(c)) {
      std::size_t j = i;
      while (j < text.size() && is_word_char(text[j])) ++j;
      tok.kind = Token::Kind::Word;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (std::string_view("{}()[],=/:?").find(c) != std::string_view::npos) {
      tok.kind = Token::Kind::Punct;
      tok.text = std::string(1, c);
      advance(1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

inline bool is_number(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

inline bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

class Parser {
public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  Document document() {
    Document doc;
    while (!at_end()) {
      const Token& t = peek();
      if (t.kind == Token::Kind::Word && t.text == "algebra") {
        doc.algebras.push_back(algebra());
      } else if (t.kind == Token::Kind::Word && t.text == "identity") {
        const Signature* sig = doc.algebras.empty() ? nullptr : &doc.algebras.back().signature;
        doc.identities.push_back(identity(sig));
      } else {
        fail("expected 'algebra' or 'identity'", t);
      }
    }
    return doc;
  }

  Identity single_identity(const Signature* sig) {
    Identity id = identity(sig);
    if (!at_end()) fail("unexpected trailing input", peek());
    return id;
  }

private:
  [[noreturn]] static void fail(const std::string& what, const Token& at) {
    throw ParseError(what, at.line, at.column);
  }

  const Token& peek() const { return tokens_[pos_]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (t.kind != Token::Kind::End) ++pos_;
    return t;
  }

  bool accept_punct(char c) {
    if (peek().kind == Token::Kind::Punct && peek().text[0] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  const Token& expect_punct(char c) {
    const Token& t = peek();
    if (t.kind != Token::Kind::Punct || t.text[0] != c) fail(std::string("expected '") + c + "'", t);
    return next();
  }

  const Token& expect_word(const char* what) {
    const Token& t = peek();
    if (t.kind != Token::Kind::Word) fail(std::string("expected ") + what, t);
    return next();
  }

  const Token& expect_identifier(const char* what) {
    const Token& t = expect_word(what);
    if (!is_identifier(t.text)) fail(std::string("expected ") + what + ", got '" + t.text + "'", t);
    return t;
  }

  std::uint64_t number(const Token& t) {
    if (!is_number(t.text)) fail("expected a number, got '" + t.text + "'", t);
    if (t.text.size() > 18) fail("number too large", t);
    return std::stoull(t.text);
  }

  Cell element(const PartialAlgebra& alg, const std::map<std::string, Element>& aliases, bool allow_free) {
    if (allow_free && accept_punct('?')) return std::nullopt;
    const Token& t = expect_word("an element");
    if (allow_free && t.text == "free") return std::nullopt;
    std::uint64_t v;
    if (auto it = aliases.find(t.text); it != aliases.end()) {
      v = it->second;
    } else {
      v = number(t);
    }
    if (v >= alg.carrier) fail("element " + t.text + " out of range for carrier " + std::to_string(alg.carrier), t);
    return static_cast<Element>(v);
  }

  PartialAlgebra algebra() {
    next();  // 'algebra'
    PartialAlgebra alg;
    alg.name = expect_identifier("an algebra name").text;
    expect_punct('{');
    std::map<std::string, Element> aliases;
    bool have_carrier = false;
    while (!accept_punct('}')) {
      const Token& kw = expect_word("a declaration");
      if (kw.text == "carrier") {
        if (have_carrier) fail("carrier declared twice", kw);
        const Token& t = expect_word("a carrier size");
        auto m = number(t);
        if (m == 0) fail("carrier size must be positive", t);
        alg.carrier = static_cast<std::size_t>(m);
        have_carrier = true;
      } else if (!have_carrier) {
        fail("'carrier' must come before '" + kw.text + "'", kw);
      } else if (kw.text == "alias") {
        const Token& name = expect_identifier("an alias name");
        expect_punct('=');
        auto v = element(alg, aliases, false);
        aliases[name.text] = *v;
      } else if (kw.text == "const") {
        const Token& name = expect_identifier("a constant name");
        if (alg.signature.contains(name.text)) fail("duplicate symbol '" + name.text + "'", name);
        expect_punct('=');
        alg.signature.add_constant(name.text);
        alg.constants[name.text] = element(alg, aliases, true);
      } else if (kw.text == "op") {
        op(alg, aliases);
      } else if (kw.text == "require") {
        do {
          const Token& suite = expect_word("a suite or identity name");
          std::string ref = suite.text;
          if (accept_punct(':')) ref += ":" + expect_word("a suite parameter").text;
          alg.requirements.push_back(ref);
        } while (accept_punct(','));
      } else if (kw.text == "goal") {
        const Token& g = expect_word("a search goal");
        if (g.text != "find-first" && g.text != "count-all" && g.text != "prove-none")
          fail("unknown goal '" + g.text + "'", g);
        alg.goal = g.text;
      } else {
        fail("unknown declaration '" + kw.text + "'", kw);
      }
    }
    if (!have_carrier) fail("algebra '" + alg.name + "' has no carrier", peek());
    return alg;
  }

  void op(PartialAlgebra& alg, const std::map<std::string, Element>& aliases) {
    const Token& name = expect_identifier("an operation name");
    if (alg.signature.contains(name.text)) fail("duplicate symbol '" + name.text + "'", name);
    expect_punct('/');
    const Token& ar = expect_word("an arity");
    auto arity = number(ar);
    if (arity == 0) fail("operation arity must be >= 1; declare nullary symbols with 'const'", ar);
    expect_punct('=');
    auto cells = checked_pow(alg.carrier, arity, kMaterializeLimit);
    if (!cells) fail("table for '" + name.text + "' is too large", ar);
    alg.signature.add_op(name.text, static_cast<std::size_t>(arity));
    std::vector<Cell> table;
    if (peek().kind == Token::Kind::Word && peek().text == "free") {
      next();
      table.assign(*cells, std::nullopt);
    } else {
      const Token& open = expect_punct('[');
      if (!accept_punct(']')) {
        do {
          table.push_back(element(alg, aliases, true));
        } while (accept_punct(','));
        expect_punct(']');
      }
      if (table.size() != *cells)
        fail("table for '" + name.text + "' has " + std::to_string(table.size()) + " entries, expected " +
                 std::to_string(*cells),
             open);
    }
    alg.tables[name.text] = std::move(table);
  }

  Identity identity(const Signature* sig) {
    next();  // 'identity'
    std::string name = expect_word("an identity name").text;
    std::vector<std::string> variables;
    expect_punct('(');
    if (!accept_punct(')')) {
      do {
        const Token& v = expect_identifier("a variable name");
        if (std::find(variables.begin(), variables.end(), v.text) != variables.end())
          fail("variable '" + v.text + "' declared twice", v);
        variables.push_back(v.text);
      } while (accept_punct(','));
      expect_punct(')');
    }
    expect_punct(':');
    Term lhs = term(variables, sig);
    expect_punct('=');
    Term rhs = term(variables, sig);
    return {std::move(name), std::move(variables), std::move(lhs), std::move(rhs)};
  }

  Term term(const std::vector<std::string>& vars, const Signature* sig) {
    const Token& head = expect_identifier("a term");
    if (accept_punct('(')) {
      std::vector<Term> args;
      if (!accept_punct(')')) {
        do {
          args.push_back(term(vars, sig));
        } while (accept_punct(','));
        expect_punct(')');
      }
      if (sig) {
        auto arity = sig->arity_of(head.text);
        if (!arity) fail("unknown operation '" + head.text + "'", head);
        if (*arity != args.size())
          fail("operation '" + head.text + "' expects arity " + std::to_string(*arity) + ", got " +
                   std::to_string(args.size()),
               head);
      }
      return Term::apply(head.text, std::move(args));
    }
    if (std::find(vars.begin(), vars.end(), head.text) != vars.end()) return Term::variable(head.text);
    if (sig && !sig->has_constant(head.text)) fail("'" + head.text + "' is neither a declared variable nor a constant", head);
    return Term::constant(head.text);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Document parse_document(std::string_view text) { return detail::Parser(text).document(); }

/// Exactly one fully specified algebra block (identities in the same text are ignored).
inline FiniteAlgebra parse_algebra(std::string_view text) {
  Document doc = parse_document(text);
  if (doc.algebras.size() != 1)
    throw ParseError("expected exactly one algebra block, found " + std::to_string(doc.algebras.size()), 1, 1);
  const auto& partial = doc.algebras.front();
  if (!partial.complete()) throw ParseError("algebra '" + partial.name + "' has free cells", 1, 1);
  return partial.to_algebra();
}

/// Parses one `identity` declaration; arities and constants are checked when `sig` is given.
inline Identity parse_identity(std::string_view text, const Signature* sig = nullptr) {
  return detail::Parser(text).single_identity(sig);
}

inline void write_algebra(std::ostream& out, const FiniteAlgebra& alg) {
  out << "algebra " << alg.name() << " {\n";
  out << "  carrier " << alg.carrier_size() << '\n';
  for (const auto& c : alg.signature().constants()) {
    out << "  const " << c << " = " << alg.constant(c) << '\n';
  }
  for (const auto& op : alg.signature().ops()) {
    const OpTable& t = alg.table(op.name);
    if (!t.materialized()) throw BudgetExceeded("table for '" + op.name + "' is too large to serialize");
    out << "  op " << op.name << '/' << op.arity << " = [";
    const auto& values = t.values();
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? ", " : "") << values[i];
    out << "]\n";
  }
  out << "}\n";
}

inline std::string serialize(const FiniteAlgebra& alg) {
  std::ostringstream out;
  write_algebra(out, alg);
  return out.str();
}

}  // namespace protoalg
