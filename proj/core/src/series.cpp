#include "jacobiflow/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "jacobiflow/error.hpp"

namespace jacobiflow {

int total_degree(const Monomial& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  const int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<Monomial> monomials_up_to(int arity, int degree) {
  std::vector<Monomial> out;
  Monomial e(arity, 0);
  // Within each degree, emit tuples in decreasing lexicographic order.
  for (int d = 0; d <= degree; ++d) {
    std::fill(e.begin(), e.end(), 0);
    e[0] = d;
    while (true) {
      out.push_back(e);
      // Previous tuple in lex order with the same total degree.
      int j = arity - 2;
      while (j >= 0 && e[j] == 0) --j;
      if (j < 0) break;
      --e[j];
      int rest = 1;
      for (int t = j + 1; t < arity; ++t) {
        rest += e[t];
        e[t] = 0;
      }
      e[j + 1] = rest;
    }
  }
  return out;
}

TruncSeries::TruncSeries(int arity, int degree) : arity_(arity), degree_(degree) {
  if (arity < 1) throw ShapeError("series arity must be positive");
  if (degree < 0) throw ShapeError("series degree must be non-negative");
}

TruncSeries TruncSeries::constant(int arity, int degree, const mpq_class& c) {
  TruncSeries s(arity, degree);
  s.set(Monomial(arity, 0), c);
  return s;
}

TruncSeries TruncSeries::variable(int arity, int degree, int index) {
  if (index < 0 || index >= arity) throw ShapeError("variable index out of range");
  TruncSeries s(arity, degree);
  Monomial e(arity, 0);
  e[index] = 1;
  s.set(e, 1);
  return s;
}

mpq_class TruncSeries::coeff(const Monomial& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void TruncSeries::set(const Monomial& e, const mpq_class& c) {
  if (static_cast<int>(e.size()) != arity_) throw ShapeError("exponent tuple has wrong length");
  if (total_degree(e) > degree_) return;
  if (c == 0)
    terms_.erase(e);
  else
    terms_[e] = c;
}

void TruncSeries::add_to(const Monomial& e, const mpq_class& c) {
  if (c == 0 || total_degree(e) > degree_) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int TruncSeries::order() const {
  return terms_.empty() ? -1 : total_degree(terms_.begin()->first);
}

mpq_class TruncSeries::constant_term() const { return coeff(Monomial(arity_, 0)); }

TruncSeries TruncSeries::truncated(int degree) const {
  TruncSeries s(arity_, degree);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) <= degree) s.terms_.emplace(e, c);
  return s;
}

double TruncSeries::operator()(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != arity_) throw ShapeError("point has wrong dimension");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c.get_d();
    for (int i = 0; i < arity_; ++i) term *= std::pow(point[i], e[i]);
    sum += term;
  }
  return sum;
}

SmoothExpr TruncSeries::to_expr() const {
  SmoothExpr sum = SmoothExpr::constant(arity_, 0);
  for (const auto& [e, c] : terms_) {
    SmoothExpr term = SmoothExpr::constant(arity_, c);
    for (int i = 0; i < arity_; ++i)
      if (e[i] > 0) term = term * pow(SmoothExpr::variable(arity_, i), e[i]);
    sum = sum + term;
  }
  return sum;
}

std::string TruncSeries::str() const {
  std::ostringstream os;
  os << "vars=" << arity_ << " degree=" << degree_ << '\n';
  for (const auto& [e, c] : terms_) {
    for (int x : e) os << x << ' ';
    os << ": " << c.get_num().get_str() << '/' << c.get_den().get_str() << '\n';
  }
  return os.str();
}

std::string TruncSeries::pretty() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    mpq_class mag = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    const bool unit = total_degree(e) > 0 && mag == 1;
    if (!unit) os << mag.get_str();
    bool need_star = !unit;
    for (int i = 0; i < arity_; ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << '*';
      os << 'x' << (i + 1);
      if (e[i] > 1) os << '^' << e[i];
      need_star = true;
    }
  }
  return os.str();
}

bool operator==(const TruncSeries& a, const TruncSeries& b) {
  return a.arity_ == b.arity_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

namespace {
void require_same_shape(const TruncSeries& a, const TruncSeries& b) {
  if (a.arity() != b.arity() || a.degree() != b.degree())
    throw ShapeError("series shapes differ: vars=" + std::to_string(a.arity()) +
                     " degree=" + std::to_string(a.degree()) + " vs vars=" +
                     std::to_string(b.arity()) + " degree=" + std::to_string(b.degree()));
}
}  // namespace

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
  require_same_shape(a, b);
  TruncSeries r = a;
  for (const auto& [e, c] : b.terms()) r.add_to(e, c);
  return r;
}

TruncSeries operator-(const TruncSeries& a) {
  TruncSeries r(a.arity(), a.degree());
  for (const auto& [e, c] : a.terms()) r.set(e, -c);
  return r;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  require_same_shape(a, b);
  TruncSeries r(a.arity(), a.degree());
  const int n = a.degree();
  Monomial e(a.arity());
  for (const auto& [ea, ca] : a.terms()) {
    const int da = total_degree(ea);
    for (const auto& [eb, cb] : b.terms()) {
      // Terms of b come in increasing degree, so stop at the first overflow.
      if (da + total_degree(eb) > n) break;
      for (int i = 0; i < a.arity(); ++i) e[i] = ea[i] + eb[i];
      r.add_to(e, ca * cb);
    }
  }
  return r;
}

TruncSeries operator*(const mpq_class& c, const TruncSeries& a) {
  TruncSeries r(a.arity(), a.degree());
  if (c == 0) return r;
  for (const auto& [e, v] : a.terms()) r.set(e, c * v);
  return r;
}

TruncSeries series_partial(const TruncSeries& a, int index) {
  if (index < 0 || index >= a.arity()) throw ShapeError("partial index out of range");
  TruncSeries r(a.arity(), a.degree());
  for (const auto& [e, c] : a.terms()) {
    if (e[index] == 0) continue;
    Monomial d = e;
    --d[index];
    r.set(d, c * e[index]);
  }
  return r;
}

TruncSeries series_pow(const TruncSeries& a, int k) {
  if (k < 0) throw ShapeError("series power must be non-negative");
  TruncSeries result = TruncSeries::constant(a.arity(), a.degree(), 1);
  TruncSeries base = a;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

TruncSeries series_compose(const TruncSeries& alpha, const TruncSeries& f) {
  if (alpha.arity() != 1) throw ShapeError("outer series must have one variable");
  if (f.constant_term() != 0) throw ValidationError("inner series must vanish at 0");
  TruncSeries result(f.arity(), f.degree());
  TruncSeries power = TruncSeries::constant(f.arity(), f.degree(), 1);
  int k = 0;
  for (const auto& [e, c] : alpha.terms()) {
    while (k < e[0]) {
      power = power * f;
      ++k;
    }
    result = result + c * power;
  }
  return result;
}

namespace {

TruncSeries from_node(const ExprNode& n, int arity, int degree) {
  switch (n.op) {
    case ExprOp::constant:
      return TruncSeries::constant(arity, degree, n.value);
    case ExprOp::variable:
      return TruncSeries::variable(arity, degree, n.index);
    case ExprOp::add:
      return from_node(*n.lhs, arity, degree) + from_node(*n.rhs, arity, degree);
    case ExprOp::sub:
      return from_node(*n.lhs, arity, degree) - from_node(*n.rhs, arity, degree);
    case ExprOp::mul:
      return from_node(*n.lhs, arity, degree) * from_node(*n.rhs, arity, degree);
    case ExprOp::neg:
      return -from_node(*n.lhs, arity, degree);
    case ExprOp::div:
      if (n.rhs->op == ExprOp::constant && n.rhs->value != 0)
        return mpq_class(1 / n.rhs->value) * from_node(*n.lhs, arity, degree);
      break;
    case ExprOp::pow:
      if (n.index >= 0) return series_pow(from_node(*n.lhs, arity, degree), n.index);
      break;
    default:
      break;
  }
  throw ValidationError("expression is not a polynomial; only + - * and division by constants "
                        "are supported for series");
}

int degree_of(const ExprNode& n) {
  switch (n.op) {
    case ExprOp::constant:
      return 0;
    case ExprOp::variable:
      return 1;
    case ExprOp::add:
    case ExprOp::sub:
      return std::max(degree_of(*n.lhs), degree_of(*n.rhs));
    case ExprOp::mul:
      return degree_of(*n.lhs) + degree_of(*n.rhs);
    case ExprOp::div:
    case ExprOp::neg:
      return degree_of(*n.lhs);
    case ExprOp::pow:
      return degree_of(*n.lhs) * std::max(n.index, 0);
    default:
      return 0;
  }
}

}  // namespace

TruncSeries series_from_expr(const SmoothExpr& e, int degree) {
  if (!e.is_polynomial())
    throw ValidationError("expression '" + e.str() + "' is not a polynomial");
  return from_node(*e.root(), e.arity(), degree);
}

int polynomial_degree_bound(const SmoothExpr& e) {
  if (!e.is_polynomial())
    throw ValidationError("expression '" + e.str() + "' is not a polynomial");
  return degree_of(*e.root());
}

TruncSeries parse_series(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t offset = 0;
  if (!std::getline(in, line)) throw ParseError("empty series text", 0);
  int arity = 0, degree = 0;
  char trailing = 0;
  if (std::sscanf(line.c_str(), " vars=%d degree=%d %c", &arity, &degree, &trailing) != 2)
    throw ParseError("expected header 'vars=<m> degree=<N>'", 0);
  TruncSeries s(arity, degree);
  offset += line.size() + 1;
  while (std::getline(in, line)) {
    const std::size_t here = offset;
    offset += line.size() + 1;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("missing ':' in term line", here);
    std::istringstream exps(line.substr(0, colon));
    Monomial e;
    int x;
    while (exps >> x) {
      if (x < 0) throw ParseError("negative exponent", here);
      e.push_back(x);
    }
    if (static_cast<int>(e.size()) != arity)
      throw ParseError("term has " + std::to_string(e.size()) + " exponents, expected " +
                           std::to_string(arity),
                       here);
    std::string coeff = line.substr(colon + 1);
    coeff.erase(0, coeff.find_first_not_of(" \t"));
    coeff.erase(coeff.find_last_not_of(" \t\r") + 1);
    mpq_class c;
    if (coeff.empty() || c.set_str(coeff, 10) != 0 || c.get_den() == 0)
      throw ParseError("malformed rational '" + coeff + "'", here + colon + 1);
    c.canonicalize();
    if (total_degree(e) > degree)
      throw ParseError("term exceeds truncation degree", here);
    s.add_to(e, c);
  }
  return s;
}

}  // namespace jacobiflow
