#include <cctype>
#include <string>

#include "jacobiflow/error.hpp"
#include "jacobiflow/smooth_expr.hpp"

namespace jacobiflow {

namespace {

class Parser {
 public:
  Parser(std::string_view text, int arity) : text_(text), arity_(arity) {}

  SmoothExpr parse() {
    SmoothExpr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view text_;
  int arity_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
  }

  SmoothExpr expr() {
    SmoothExpr lhs = term();
    while (true) {
      if (accept('+'))
        lhs = lhs + term();
      else if (accept('-'))
        lhs = lhs - term();
      else
        return lhs;
    }
  }

  SmoothExpr term() {
    SmoothExpr lhs = unary();
    while (true) {
      if (accept('*'))
        lhs = lhs * unary();
      else if (accept('/'))
        lhs = lhs / unary();
      else
        return lhs;
    }
  }

  SmoothExpr unary() {
    if (accept('-')) return -unary();
    return factor();
  }

  SmoothExpr factor() {
    SmoothExpr b = base();
    if (accept('^')) {
      skip_space();
      const bool negative = accept('-');
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      if (pos_ - start > 6) {
        pos_ = start;
        fail("exponent too large");
      }
      int k = std::stoi(std::string(text_.substr(start, pos_ - start)));
      return pow(b, negative ? -k : k);
    }
    return b;
  }

  SmoothExpr number() {
    const std::size_t start = pos_;
    std::string digits;
    std::size_t frac_digits = 0;
    bool seen_point = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits += c;
        if (seen_point) ++frac_digits;
      } else if (c == '.' && !seen_point) {
        seen_point = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (digits.empty()) {
      pos_ = start;
      fail("malformed number");
    }
    mpz_class num(digits);
    mpz_class den = 1;
    for (std::size_t i = 0; i < frac_digits; ++i) den *= 10;
    // Optional decimal exponent, e.g. 1e-3.
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      bool neg = false;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) neg = text_[p++] == '-';
      const std::size_t ds = p;
      while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
      if (p > ds && p - ds <= 4) {
        const int e = std::stoi(std::string(text_.substr(ds, p - ds)));
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(e));
        if (neg)
          den *= scale;
        else
          num *= scale;
        pos_ = p;
      }
    }
    mpq_class q(num, den);
    q.canonicalize();
    return SmoothExpr::constant(arity_, q);
  }

  SmoothExpr base() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      SmoothExpr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      if (name == "exp" || name == "log" || name == "sin" || name == "cos" || name == "flatexp" ||
          name == "sgn") {
        expect('(');
        SmoothExpr u = expr();
        expect(')');
        if (name == "exp") return exp(u);
        if (name == "log") return log(u);
        if (name == "sin") return sin(u);
        if (name == "cos") return cos(u);
        if (name == "sgn") return sgn(u);
        return flatexp(u);
      }
      if (name == "flatmul") {
        expect('(');
        SmoothExpr u = expr();
        expect(',');
        SmoothExpr b = expr();
        expect(')');
        return flatmul(u, b);
      }
      int index = -1;
      if (name == "x" || name == "y" || name == "z") {
        index = name[0] - 'x';
      } else if (name.size() >= 2 && name[0] == 'x' && name[1] != '0' &&
                 name.find_first_not_of("0123456789", 1) == std::string::npos &&
                 name.size() <= 4) {
        index = std::stoi(name.substr(1)) - 1;
      }
      if (index < 0) {
        pos_ = start;
        fail("unknown identifier '" + name + "'");
      }
      if (index >= arity_) {
        pos_ = start;
        fail("variable '" + name + "' exceeds arity " + std::to_string(arity_));
      }
      return SmoothExpr::variable(arity_, index);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

}  // namespace

SmoothExpr parse_expr(std::string_view text, int arity) {
  if (arity < 1) throw ShapeError("expression arity must be positive");
  return Parser(text, arity).parse();
}

}  // namespace jacobiflow
