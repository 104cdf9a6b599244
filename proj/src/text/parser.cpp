#include "lsd/text/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace lsd::text {

SyntaxError::SyntaxError(Pos pos, const std::string& message)
    : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
                         message),
      pos_(pos) {}

namespace {

enum class Tok { name, integer, bullet, punct, arrow, end };

struct Token {
  Tok kind;
  std::string text;
  Pos pos;
};

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  std::size_t line_start = 0;
  std::size_t i = 0;
  auto here = [&] { return Pos{line, static_cast<int>(i - line_start) + 1}; };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      line_start = ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    Pos pos = here();
    if (src.substr(i, 3) == kCons) {
      out.push_back({Tok::bullet, kCons, pos});
      i += 3;
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::arrow, "->", pos});
      i += 2;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::integer, std::string(src.substr(i, j - i)), pos});
      i = j;
      continue;
    }
    if (is_name_start(c)) {
      std::size_t j = i + 1;
      while (j < src.size()) {
        if (is_name_char(src[j])) {
          ++j;
        } else if (src[j] == '-' && j + 1 < src.size() &&
                   std::isalnum(static_cast<unsigned char>(src[j + 1]))) {
          j += 2;
        } else {
          break;
        }
      }
      out.push_back({Tok::name, std::string(src.substr(i, j - i)), pos});
      i = j;
      continue;
    }
    if (std::string_view("(){},:;[]|").find(c) != std::string_view::npos) {
      out.push_back({Tok::punct, std::string(1, c), pos});
      ++i;
      continue;
    }
    throw SyntaxError(pos, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::end, "", here()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program program() {
    Program p;
    while (!at_end()) {
      if (is_word("design")) {
        p.designs.push_back(design());
      } else if (is_word("query")) {
        p.queries.push_back(query());
      } else {
        fail("expected 'design' or 'query'");
      }
    }
    return p;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Tok::end; }
  bool is_word(std::string_view w, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::name && peek(ahead).text == w;
  }
  bool is_punct(char c, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::punct && peek(ahead).text[0] == c;
  }
  [[noreturn]] void fail(const std::string& what) const {
    const auto& t = peek();
    std::string found = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(t.pos, what + ", found " + found);
  }
  Token take() { return toks_[pos_++]; }
  void expect(char c) {
    if (!is_punct(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void expect_word(std::string_view w) {
    if (!is_word(w)) fail("expected '" + std::string(w) + "'");
    ++pos_;
  }
  Token name(const char* what) {
    if (peek().kind != Tok::name) fail(std::string("expected ") + what);
    return take();
  }

  Design design() {
    Design d;
    d.pos = take().pos;
    d.name = name("design name").text;
    expect('(');
    if (!is_punct(')')) {
      do {
        Param p;
        auto t = name("parameter name");
        p.name = t.text;
        p.pos = t.pos;
        expect(':');
        if (is_word("simple")) {
          p.kind = ParamKind::simple;
        } else if (is_word("edge")) {
          p.kind = ParamKind::edge;
        } else {
          fail("expected 'simple' or 'edge'");
        }
        ++pos_;
        d.params.push_back(std::move(p));
      } while (is_punct(',') && (++pos_, true));
    }
    expect(')');
    expect('{');
    if (!is_word("case")) fail("expected 'case'");
    while (is_word("case")) {
      Case c;
      c.pos = take().pos;
      c.body = block();
      d.cases.push_back(std::move(c));
    }
    expect('}');
    return d;
  }

  Query query() {
    Query q;
    q.pos = take().pos;
    q.name = name("query name").text;
    q.body = block();
    return q;
  }

  std::vector<Stmt> block() {
    expect('{');
    std::vector<Stmt> out;
    while (!is_punct('}')) {
      if (at_end()) fail("expected '}'");
      out.push_back(stmt());
    }
    expect('}');
    return out;
  }

  Stmt stmt() {
    Stmt s;
    s.pos = peek().pos;
    if (is_word("not") && is_word("call", 1)) {
      pos_ += 2;
      s.value = call(true);
    } else if (is_word("call") && peek(1).kind == Tok::name) {
      ++pos_;
      s.value = call(false);
    } else if (is_word("solid") && peek(1).kind == Tok::name) {
      ++pos_;
      s.value = solid();
    } else if (is_word("bond") && peek(1).kind == Tok::name) {
      ++pos_;
      BondStmt b;
      b.a = var();
      expect(',');
      b.b = var();
      expect(';');
      s.value = std::move(b);
    } else {
      s.value = func();
    }
    return s;
  }

  CallStmt call(bool negated) {
    CallStmt c;
    c.negated = negated;
    c.design = name("design name").text;
    c.args = args();
    expect(';');
    return c;
  }

  SolidStmt solid() {
    SolidStmt s;
    s.family = name("solid family").text;
    s.args = args();
    expect('{');
    while (!is_punct('}')) {
      EdgeBind e;
      e.edge = name("edge name").text;
      expect(':');
      e.var = var();
      s.edges.push_back(std::move(e));
      if (is_punct(',')) ++pos_;
    }
    expect('}');
    expect(';');
    return s;
  }

  FuncStmt func() {
    FuncStmt f;
    const auto& t = peek();
    if (t.kind != Tok::name && t.kind != Tok::integer && t.kind != Tok::bullet) {
      fail("expected a statement");
    }
    f.name = take().text;
    f.args = args();
    if (peek().kind != Tok::arrow) fail("expected '->'");
    ++pos_;
    f.root = var();
    expect(';');
    return f;
  }

  std::vector<Arg> args() {
    expect('(');
    std::vector<Arg> out;
    if (!is_punct(')')) {
      out.push_back(arg());
      while (is_punct(',')) {
        ++pos_;
        out.push_back(arg());
      }
    }
    expect(')');
    return out;
  }

  Arg arg() {
    Arg a;
    a.pos = peek().pos;
    if (peek().kind == Tok::integer) {
      auto t = take();
      a.value = Int{t.text, t.pos};
    } else if (is_punct('[')) {
      ++pos_;
      std::vector<Arg> items;
      if (!is_punct(']') && !is_punct('|')) {
        items.push_back(arg());
        while (is_punct(',')) {
          ++pos_;
          items.push_back(arg());
        }
      }
      if (is_punct('|')) {
        if (items.empty()) fail("expected a list item before '|'");
        ++pos_;
        a.tail = var();
      }
      expect(']');
      a.value = std::move(items);
    } else {
      a.value = var();
    }
    return a;
  }

  Var var() {
    auto t = name("variable");
    return Var{t.text, t.pos};
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse(std::string_view source) { return Parser(lex(source)).program(); }

Program parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace lsd::text
