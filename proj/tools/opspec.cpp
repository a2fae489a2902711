#include "opspec.hpp"

#include <cctype>
#include <cmath>

#include "affinedr/kron.hpp"

namespace affinedr::cli {

namespace {

struct Token {
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++i;
      continue;
    }
    if (c == '[' || c == ']' || c == '@') {
      tokens.push_back({std::string(1, c), i});
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size()) {
      const char d = text[i];
      if (std::isspace(static_cast<unsigned char>(d)) || d == ',' || d == '[' || d == ']' ||
          d == '@')
        break;
      ++i;
    }
    tokens.push_back({text.substr(start, i - start), start});
  }
  return tokens;
}

class Parser {
 public:
  Parser(const std::string& text) : text_(text), tokens_(lex(text)) {}

  ParsedOperator parse() {
    ParsedOperator op = parse_expr();
    if (i_ < tokens_.size())
      throw ParseError("unexpected trailing input '" + tokens_[i_].text + "'", tokens_[i_].pos);
    return op;
  }

  Vector parse_vector_only() {
    Vector v = vector_literal();
    if (i_ < tokens_.size())
      throw ParseError("unexpected trailing input '" + tokens_[i_].text + "'", tokens_[i_].pos);
    return v;
  }

 private:
  const Token& peek(const char* what) {
    if (i_ >= tokens_.size())
      throw ParseError(std::string("unexpected end of input, expected ") + what, text_.size());
    return tokens_[i_];
  }

  Token take(const char* what) {
    const Token t = peek(what);
    ++i_;
    return t;
  }

  void expect(const char* literal) {
    const Token t = take(literal);
    if (t.text != literal)
      throw ParseError(std::string("expected '") + literal + "', got '" + t.text + "'", t.pos);
  }

  double number() {
    const Token t = take("a number");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t.text, &used);
    } catch (const std::exception&) {
      throw ParseError("expected a number, got '" + t.text + "'", t.pos);
    }
    if (used != t.text.size() || !std::isfinite(v))
      throw ParseError("malformed number '" + t.text + "'", t.pos);
    return v;
  }

  std::size_t count() {
    const Token& t = peek("a dimension");
    const double v = number();
    if (v < 1 || v != std::floor(v) || v > 4096)
      throw ParseError("expected a positive integer dimension", t.pos);
    return static_cast<std::size_t>(v);
  }

  Vector vector_literal() {
    expect("[");
    Vector v;
    while (peek("a number or ']'").text != "]") v.push_back(number());
    expect("]");
    if (v.empty()) throw ParseError("empty vector literal", tokens_[i_ - 1].pos);
    return v;
  }

  DenseMatrix matrix_literal() {
    const Token open = take("'['");
    if (open.text != "[") throw ParseError("expected a matrix literal", open.pos);
    std::vector<Vector> rows;
    while (peek("a row or ']'").text != "]") rows.push_back(vector_literal());
    expect("]");
    if (rows.empty()) throw ParseError("empty matrix literal", open.pos);
    const std::size_t cols = rows.front().size();
    DenseMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw ParseError("ragged matrix literal", open.pos);
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static ParsedOperator from_matrix(DenseMatrix m) {
    if (!m.is_square()) throw WrongSize("operator matrix must be square");
    ParsedOperator op{AffineRelation::from_linear_map(m, Vector(m.rows(), 0.0)), std::move(m),
                      std::nullopt};
    return op;
  }

  ParsedOperator parse_expr() {
    const Token head = take("an operator");
    if (head.text == "id") return from_matrix(DenseMatrix::identity(count()));
    if (head.text == "zero") {
      const std::size_t n = count();
      return from_matrix(DenseMatrix(n, n));
    }
    if (head.text == "rot") return from_matrix(DenseMatrix::from_rows({{0, -1}, {1, 0}}));
    if (head.text == "dense") return from_matrix(matrix_literal());
    if (head.text == "tridiag") {
      const double a = number(), b = number(), g = number();
      const TridiagToeplitz t(a, b, g, count());
      ParsedOperator op = from_matrix(to_dense(t));
      op.tridiag = t;
      return op;
    }
    if (head.text == "affine") {
      DenseMatrix m = matrix_literal();
      const Vector b = vector_literal();
      if (!m.is_square() || b.size() != m.rows())
        throw ParseError("affine: offset length must match the matrix size", head.pos);
      ParsedOperator op{AffineRelation::from_linear_map(m, b), std::move(m), std::nullopt};
      return op;
    }
    if (head.text == "const") {
      const Vector u = vector_literal();
      return ParsedOperator{AffineRelation::constant(u), std::nullopt, std::nullopt};
    }
    if (head.text == "normalcone") {
      const DenseMatrix dirs = matrix_literal();
      std::vector<Vector> basis;
      for (std::size_t i = 0; i < dirs.rows(); ++i) basis.push_back(dirs.row(i));
      Vector anchor(dirs.cols(), 0.0);
      if (i_ < tokens_.size() && tokens_[i_].text == "@") {
        ++i_;
        anchor = vector_literal();
        if (anchor.size() != dirs.cols())
          throw ParseError("normalcone: anchor dimension mismatch", head.pos);
      }
      return ParsedOperator{
          AffineRelation::normal_cone(AffineSubspace::through(anchor, basis)), std::nullopt,
          std::nullopt};
    }
    if (head.text == "kron") {
      const ParsedOperator left = parse_expr();
      const ParsedOperator right = parse_expr();
      if (!left.matrix || !right.matrix)
        throw ParseError("kron: both factors must be matrix operators", head.pos);
      return from_matrix(kronecker(*left.matrix, *right.matrix));
    }
    throw ParseError("unknown operator '" + head.text + "'", head.pos);
  }

  const std::string& text_;
  std::vector<Token> tokens_;
  std::size_t i_ = 0;
};

}  // namespace

ParsedOperator parse_operator(const std::string& text) { return Parser(text).parse(); }

Vector parse_vector(const std::string& text) { return Parser(text).parse_vector_only(); }

}  // namespace affinedr::cli
