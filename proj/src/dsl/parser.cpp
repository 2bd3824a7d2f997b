#include "fcl/dsl/parser.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <optional>

namespace fcl {

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::euclidean: return "euclidean";
    case MetricKind::riemannian: return "riemannian";
    case MetricKind::randers: return "randers";
    case MetricKind::funk: return "funk";
    case MetricKind::custom: return "custom";
  }
  return "unknown";
}

namespace {

enum class Tok { ident, number, integer, punct, end };

struct Token {
  Tok type;
  std::string text;
  int line;
  int column;
};

std::string describe(const Token& t) {
  switch (t.type) {
    case Tok::end: return "end of input";
    case Tok::ident: return "identifier '" + t.text + "'";
    case Tok::number:
    case Tok::integer: return "number '" + t.text + "'";
    case Tok::punct: return "'" + t.text + "'";
  }
  return "token";
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::ident, std::string(src.substr(i, j - i)), line, col});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() &&
                                                                std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      bool is_integer = true;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') {
        is_integer = false;
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          is_integer = false;
          j = k;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        }
      }
      out.push_back({is_integer ? Tok::integer : Tok::number, std::string(src.substr(i, j - i)), line, col});
      advance(j - i);
    } else if (std::string_view("(){}[],;+-*/^").find(c) != std::string_view::npos) {
      out.push_back({Tok::punct, std::string(1, c), line, col});
      advance(1);
    } else {
      throw ParseError(ErrorCode::SyntaxError, line, col, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(tokenize(src)) {}

  MetricSpec metric() {
    const Token kind_tok = expect_ident();
    MetricSpec spec;
    if (kind_tok.text == "euclidean") spec.kind = MetricKind::euclidean;
    else if (kind_tok.text == "funk") spec.kind = MetricKind::funk;
    else if (kind_tok.text == "riemannian") spec.kind = MetricKind::riemannian;
    else if (kind_tok.text == "randers") spec.kind = MetricKind::randers;
    else if (kind_tok.text == "custom") spec.kind = MetricKind::custom;
    else
      throw ParseError(ErrorCode::UnknownIdentifier, kind_tok.line, kind_tok.column,
                       "unknown metric kind '" + kind_tok.text +
                           "'; expected one of euclidean, funk, riemannian, randers, custom");
    expect_punct("(");
    const Token dim_tok = peek();
    spec.dim = expect_int();
    if (spec.dim < 2)
      throw ParseError(ErrorCode::DimensionMismatch, dim_tok.line, dim_tok.column, "dimension must be at least 2");
    dim_ = spec.dim;
    expect_punct(")");

    switch (spec.kind) {
      case MetricKind::euclidean:
      case MetricKind::funk: break;
      case MetricKind::custom:
        expect_punct("{");
        allow_y_ = true;
        spec.f2 = expr();
        expect_punct("}");
        break;
      case MetricKind::riemannian:
      case MetricKind::randers: {
        const Token open = peek();
        expect_punct("{");
        allow_y_ = false;
        std::vector<std::pair<Token, std::vector<ExprPtr>>> rows;
        rows.push_back(row());
        while (accept_punct(";")) rows.push_back(row());
        expect_punct("}");
        const std::size_t n = static_cast<std::size_t>(spec.dim);
        const std::size_t expected_rows = spec.kind == MetricKind::randers ? n + 1 : n;
        if (rows.size() != expected_rows)
          throw ParseError(ErrorCode::DimensionMismatch, open.line, open.column,
                           "expected " + std::to_string(expected_rows) + " ';'-separated rows, found " +
                               std::to_string(rows.size()));
        for (std::size_t r = 0; r < rows.size(); ++r) {
          if (rows[r].second.size() != n)
            throw ParseError(ErrorCode::DimensionMismatch, rows[r].first.line, rows[r].first.column,
                             "expected " + std::to_string(n) + " entries, found " +
                                 std::to_string(rows[r].second.size()));
        }
        for (std::size_t r = 0; r < n; ++r) spec.matrix.push_back(std::move(rows[r].second));
        if (spec.kind == MetricKind::randers) spec.covector = std::move(rows[n].second);
        break;
      }
    }
    expect_end();
    return spec;
  }

  ExprPtr standalone(int dim, bool allow_y) {
    dim_ = dim;
    allow_y_ = allow_y;
    ExprPtr e = expr();
    expect_end();
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    throw ParseError(ErrorCode::SyntaxError, t.line, t.column, "expected " + expected + ", found " + describe(t));
  }

  bool is_punct(const char* p) const { return peek().type == Tok::punct && peek().text == p; }
  bool accept_punct(const char* p) {
    if (!is_punct(p)) return false;
    ++pos_;
    return true;
  }
  void expect_punct(const char* p) {
    if (!accept_punct(p)) fail(std::string("'") + p + "'");
  }
  Token expect_ident() {
    if (peek().type != Tok::ident) fail("identifier");
    return take();
  }
  int expect_int() {
    if (peek().type != Tok::integer) fail("integer");
    const Token t = take();
    int value = 0;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size())
      throw ParseError(ErrorCode::SyntaxError, t.line, t.column, "integer out of range");
    return value;
  }
  void expect_end() {
    if (peek().type != Tok::end) fail("end of input");
  }

  std::pair<Token, std::vector<ExprPtr>> row() {
    const Token start = peek();
    std::vector<ExprPtr> entries{expr()};
    while (accept_punct(",")) entries.push_back(expr());
    return {start, std::move(entries)};
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (true) {
      if (accept_punct("+")) lhs = lhs + term();
      else if (accept_punct("-")) lhs = lhs - term();
      else return lhs;
    }
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (true) {
      if (accept_punct("*")) lhs = lhs * unary();
      else if (accept_punct("/")) lhs = lhs / unary();
      else return lhs;
    }
  }

  ExprPtr unary() {
    if (accept_punct("-")) {
      // "-2" is a negative literal unless an exponent binds tighter ("-2^2" is -(2^2)).
      const bool number_next = peek().type == Tok::number || peek().type == Tok::integer;
      const bool caret_after =
          pos_ + 1 < tokens_.size() && tokens_[pos_ + 1].type == Tok::punct && tokens_[pos_ + 1].text == "^";
      if (number_next && !caret_after) return Expr::literal(-std::strtod(take().text.c_str(), nullptr));
      return Expr::negate(unary());
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (!accept_punct("^")) return base;
    const bool paren = accept_punct("(");
    const bool negative = accept_punct("-");
    int e = expect_int();
    if (paren) expect_punct(")");
    return Expr::power(std::move(base), negative ? -e : e);
  }

  ExprPtr primary() {
    const Token t = peek();
    if (t.type == Tok::number || t.type == Tok::integer) {
      ++pos_;
      return Expr::literal(std::strtod(t.text.c_str(), nullptr));
    }
    if (accept_punct("(")) {
      ExprPtr e = expr();
      expect_punct(")");
      return e;
    }
    if (t.type == Tok::ident) {
      ++pos_;
      if (t.text == "sqrt") {
        expect_punct("(");
        ExprPtr e = expr();
        expect_punct(")");
        return Expr::square_root(std::move(e));
      }
      if (t.text == "x" || t.text == "y") {
        if (t.text == "y" && !allow_y_)
          throw ParseError(ErrorCode::SyntaxError, t.line, t.column,
                           "y is not allowed in matrix or covector entries (x-only)");
        expect_punct("[");
        const Token idx_tok = peek();
        const int idx = expect_int();
        expect_punct("]");
        if (idx < 1 || idx > dim_)
          throw ParseError(ErrorCode::DimensionMismatch, idx_tok.line, idx_tok.column,
                           "index " + std::to_string(idx) + " outside 1.." + std::to_string(dim_));
        return t.text == "x" ? Expr::x(idx - 1) : Expr::y(idx - 1);
      }
      throw ParseError(ErrorCode::UnknownIdentifier, t.line, t.column,
                       "unknown identifier '" + t.text + "'; expected x, y or sqrt");
    }
    fail("expression");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int dim_ = 2;
  bool allow_y_ = true;
};

}  // namespace

bool structurally_equal(const MetricSpec& a, const MetricSpec& b) {
  if (a.kind != b.kind || a.dim != b.dim) return false;
  if (a.matrix.size() != b.matrix.size() || a.covector.size() != b.covector.size()) return false;
  for (std::size_t r = 0; r < a.matrix.size(); ++r) {
    if (a.matrix[r].size() != b.matrix[r].size()) return false;
    for (std::size_t c = 0; c < a.matrix[r].size(); ++c)
      if (!structurally_equal(*a.matrix[r][c], *b.matrix[r][c])) return false;
  }
  for (std::size_t i = 0; i < a.covector.size(); ++i)
    if (!structurally_equal(*a.covector[i], *b.covector[i])) return false;
  if (static_cast<bool>(a.f2) != static_cast<bool>(b.f2)) return false;
  return !a.f2 || structurally_equal(*a.f2, *b.f2);
}

std::string to_source(const MetricSpec& spec) {
  std::string out = std::string(to_string(spec.kind)) + "(" + std::to_string(spec.dim) + ")";
  auto join = [](const std::vector<ExprPtr>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_source(*v[i]);
    return s;
  };
  switch (spec.kind) {
    case MetricKind::euclidean:
    case MetricKind::funk: return out;
    case MetricKind::custom: return out + " { " + to_source(*spec.f2) + " }";
    case MetricKind::riemannian:
    case MetricKind::randers: {
      out += " {";
      for (std::size_t r = 0; r < spec.matrix.size(); ++r) out += (r ? "; " : " ") + join(spec.matrix[r]);
      if (spec.kind == MetricKind::randers) out += "; " + join(spec.covector);
      return out + " }";
    }
  }
  return out;
}

MetricSpec parse_metric(std::string_view text) { return Parser(text).metric(); }

ExprPtr parse_expression(std::string_view text, int dim, bool allow_y) {
  return Parser(text).standalone(dim, allow_y);
}

}  // namespace fcl
