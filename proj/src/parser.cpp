#include "writ/parser.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "writ/error.hpp"

namespace writ {

namespace {

enum class Tok { Ident, Number, LParen, RParen, LBracket, RBracket, Comma, Colon, FatArrow, Arrow, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
  /// True when no whitespace separates this token from the previous one.
  bool glued;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    bool glued = false;
    while (true) {
      glued = !skip_blank() && !out.empty();
      const std::size_t line = line_, col = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", line, col, glued});
        return out;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string id;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
                                      src_[pos_] == '\''))
          id += advance();
        out.push_back({Tok::Ident, id, line, col, glued});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) num += advance();
        out.push_back({Tok::Number, num, line, col, glued});
      } else if (c == '=' && peek(1) == '>') {
        advance();
        advance();
        out.push_back({Tok::FatArrow, "=>", line, col, glued});
      } else if (c == '-' && peek(1) == '>') {
        advance();
        advance();
        out.push_back({Tok::Arrow, "->", line, col, glued});
      } else {
        Tok k;
        switch (c) {
          case '(': k = Tok::LParen; break;
          case ')': k = Tok::RParen; break;
          case '[': k = Tok::LBracket; break;
          case ']': k = Tok::RBracket; break;
          case ',': k = Tok::Comma; break;
          case ':': k = Tok::Colon; break;
          default:
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
        out.push_back({k, std::string(1, advance()), line, col, glued});
      }
    }
  }

 private:
  char peek(std::size_t k) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  // Returns true if anything was skipped.
  bool skip_blank() {
    const std::size_t start = pos_;
    while (pos_ < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        advance();
      } else if (src_[pos_] == '-' && peek(1) == '-') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
    return pos_ != start;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Term whole_term() {
    Term t = term();
    expect(Tok::End, "end of input");
    return t;
  }

  Ty whole_type() {
    Ty t = type();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  bool at(Tok k) const { return cur().kind == k; }

  [[noreturn]] void fail(const std::string& what) const {
    const std::string found = at(Tok::End) ? "end of input" : "'" + cur().text + "'";
    throw ParseError(what + ", found " + found, cur().line, cur().column);
  }

  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return toks_[pos_++];
  }

  Ty type() {
    Ty dom = type_atom();
    if (at(Tok::Arrow)) {
      ++pos_;
      return Ty::arrow(std::move(dom), type());
    }
    return dom;
  }

  Ty type_atom() {
    if (at(Tok::LParen)) {
      ++pos_;
      Ty t = type();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (at(Tok::Ident) && cur().text == "Nat") {
      ++pos_;
      return Ty::nat();
    }
    if (at(Tok::Ident) && cur().text == "List") {
      ++pos_;
      return Ty::list();
    }
    fail("expected a type (Nat, List, arrow or parenthesised type)");
  }

  Term term() {
    if (at(Tok::Ident) && cur().text == "fn") {
      ++pos_;
      const Token name = expect(Tok::Ident, "a bound variable name");
      check_binder(name);
      expect(Tok::Colon, "':'");
      Ty ty = type();
      expect(Tok::FatArrow, "'=>'");
      return Term::lam(name.text, std::move(ty), term());
    }
    Term t = atom();
    while (starts_atom()) t = Term::app(std::move(t), atom());
    return t;
  }

  bool starts_atom() const {
    return (at(Tok::Ident) && cur().text != "fn") || at(Tok::Number) || at(Tok::LBracket) || at(Tok::LParen);
  }

  void check_binder(const Token& name) const {
    if (name.text == "fn" || reserved_arity(name.text))
      throw ParseError("'" + name.text + "' is reserved and cannot be bound", name.line, name.column);
  }

  std::uint64_t number(const Token& tok) const {
    try {
      return std::stoull(tok.text);
    } catch (const std::exception&) {
      throw ParseError("numeral out of range", tok.line, tok.column);
    }
  }

  Term atom() {
    const Token tok = cur();
    switch (tok.kind) {
      case Tok::Number:
        ++pos_;
        return numeral(number(tok));
      case Tok::LParen: {
        ++pos_;
        Term t = term();
        expect(Tok::RParen, "')'");
        return t;
      }
      case Tok::LBracket: {
        ++pos_;
        std::vector<std::uint64_t> items;
        if (!at(Tok::RBracket)) {
          items.push_back(number(expect(Tok::Number, "a numeral")));
          while (at(Tok::Comma)) {
            ++pos_;
            items.push_back(number(expect(Tok::Number, "a numeral")));
          }
        }
        expect(Tok::RBracket, "']'");
        return list_literal(items);
      }
      case Tok::Ident: {
        ++pos_;
        if (is_constructor_name(tok.text)) return Term::cons(tok.text);
        if (is_indexed_family(tok.text)) {
          if (!at(Tok::LBracket) || !cur().glued)
            throw ParseError("'" + tok.text + "' needs a type index, e.g. " + tok.text + "[Nat]", tok.line,
                             tok.column);
          ++pos_;
          Ty index = type();
          expect(Tok::RBracket, "']'");
          return Term::func(Symbol{tok.text, std::move(index)});
        }
        if (is_function_name(tok.text)) return Term::func(tok.text);
        return Term::var(tok.text);
      }
      default:
        fail("expected a term");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) { return Parser(Lexer(text).run()).whole_term(); }

Ty parse_type(std::string_view text) { return Parser(Lexer(text).run()).whole_type(); }

SourceFile parse_source(std::string_view text) {
  std::vector<std::string> header;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line.compare(first, 2, "--") != 0) break;
    std::string body = line.substr(first + 2);
    const auto b = body.find_first_not_of(" \t");
    const auto e = body.find_last_not_of(" \t\r");
    header.push_back(b == std::string::npos ? "" : body.substr(b, e - b + 1));
  }
  return SourceFile{std::move(header), parse_term(text)};
}

SourceFile read_source_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_source(buf.str());
}

}  // namespace writ
