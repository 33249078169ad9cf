#include "jacobiflow/smooth_expr.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "jacobiflow/error.hpp"

namespace jacobiflow {

namespace detail {

enum class Code : std::uint8_t {
  constant,
  variable,
  add,
  sub,
  mul,
  div,
  neg,
  pow,
  exp,
  log,
  sin,
  cos,
  sgn,
  flatexp,
  flat_begin,  // inspects u on top of the stack; may short-circuit
  flat_end,
};

struct Instr {
  Code code;
  int index = 0;
  double value = 0.0;
  std::size_t jump = 0;
  const ExprNode* node = nullptr;
};

struct Program {
  std::vector<Instr> code;
  std::size_t max_depth = 0;
};

}  // namespace detail

namespace {

using detail::Code;
using detail::Instr;
using detail::Program;

ExprPtr make_constant(const mpq_class& v) {
  auto n = std::make_shared<ExprNode>();
  n->op = ExprOp::constant;
  n->value = v;
  n->value.canonicalize();
  n->approx = n->value.get_d();
  return n;
}

ExprPtr make_variable(int index) {
  auto n = std::make_shared<ExprNode>();
  n->op = ExprOp::variable;
  n->index = index;
  return n;
}

ExprPtr make_node(ExprOp op, ExprPtr lhs, ExprPtr rhs = nullptr, int index = 0) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  n->index = index;
  return n;
}

bool is_const(const ExprPtr& p) { return p->op == ExprOp::constant; }
bool is_const_value(const ExprPtr& p, long v) { return is_const(p) && p->value == v; }

mpq_class mpq_pow(const mpq_class& base, int k) {
  mpq_class result = 1;
  mpq_class b = base;
  unsigned e = static_cast<unsigned>(k < 0 ? -k : k);
  while (e) {
    if (e & 1u) result *= b;
    b *= b;
    e >>= 1u;
  }
  if (k < 0) result = 1 / result;
  return result;
}

// Light normalization: constant folding and elimination of 0/1 operands.
ExprPtr n_add(const ExprPtr& a, const ExprPtr& b) {
  if (is_const(a) && is_const(b)) return make_constant(a->value + b->value);
  if (is_const_value(a, 0)) return b;
  if (is_const_value(b, 0)) return a;
  return make_node(ExprOp::add, a, b);
}

ExprPtr n_neg(const ExprPtr& a) {
  if (is_const(a)) return make_constant(-a->value);
  if (a->op == ExprOp::neg) return a->lhs;
  return make_node(ExprOp::neg, a);
}

ExprPtr n_sub(const ExprPtr& a, const ExprPtr& b) {
  if (is_const(a) && is_const(b)) return make_constant(a->value - b->value);
  if (is_const_value(b, 0)) return a;
  if (is_const_value(a, 0)) return n_neg(b);
  return make_node(ExprOp::sub, a, b);
}

ExprPtr n_mul(const ExprPtr& a, const ExprPtr& b) {
  if (is_const(a) && is_const(b)) return make_constant(a->value * b->value);
  if (is_const_value(a, 0) || is_const_value(b, 0)) return make_constant(0);
  if (is_const_value(a, 1)) return b;
  if (is_const_value(b, 1)) return a;
  if (is_const_value(a, -1)) return n_neg(b);
  if (is_const_value(b, -1)) return n_neg(a);
  // Keep constants on the left so folding can see them.
  if (is_const(b)) return make_node(ExprOp::mul, b, a);
  if (is_const(a) && b->op == ExprOp::mul && is_const(b->lhs))
    return n_mul(make_constant(a->value * b->lhs->value), b->rhs);
  return make_node(ExprOp::mul, a, b);
}

ExprPtr n_div(const ExprPtr& a, const ExprPtr& b) {
  if (is_const(b) && b->value == 0) return make_node(ExprOp::div, a, b);  // fails at eval
  if (is_const(a) && is_const(b)) return make_constant(a->value / b->value);
  if (is_const_value(a, 0)) return make_constant(0);
  if (is_const_value(b, 1)) return a;
  if (is_const(b)) return n_mul(make_constant(1 / b->value), a);
  return make_node(ExprOp::div, a, b);
}

ExprPtr n_pow(const ExprPtr& a, int k) {
  if (k == 0) return make_constant(1);
  if (k == 1) return a;
  if (is_const(a) && !(a->value == 0 && k < 0)) return make_constant(mpq_pow(a->value, k));
  if (a->op == ExprOp::pow) return n_pow(a->lhs, a->index * k);
  return make_node(ExprOp::pow, a, nullptr, k);
}

ExprPtr n_unary(ExprOp op, const ExprPtr& a) {
  if (is_const(a)) {
    const mpq_class& v = a->value;
    switch (op) {
      case ExprOp::exp:
        if (v == 0) return make_constant(1);
        break;
      case ExprOp::log:
        if (v == 1) return make_constant(0);
        break;
      case ExprOp::sin:
        if (v == 0) return make_constant(0);
        break;
      case ExprOp::cos:
        if (v == 0) return make_constant(1);
        break;
      case ExprOp::sgn:
        return make_constant(sgn(v));
      case ExprOp::flatexp:
        if (v == 0) return make_constant(0);
        break;
      default:
        break;
    }
  }
  if (op == ExprOp::sgn && a->op == ExprOp::sgn) return a;
  return make_node(op, a);
}

ExprPtr n_flatmul(const ExprPtr& u, const ExprPtr& body) {
  if (is_const_value(body, 0) || is_const_value(u, 0)) return make_constant(0);
  if (is_const_value(body, 1)) return n_unary(ExprOp::flatexp, u);
  return make_node(ExprOp::flatmul, u, body);
}

// ---- printing -------------------------------------------------------------

int precedence(const ExprNode& n) {
  switch (n.op) {
    case ExprOp::add:
    case ExprOp::sub:
      return 1;
    case ExprOp::mul:
    case ExprOp::div:
      return 2;
    case ExprOp::neg:
      return 3;
    case ExprOp::pow:
      return 4;
    case ExprOp::constant:
      return (n.value < 0 || n.value.get_den() != 1) ? 0 : 5;
    default:
      return 5;
  }
}

void print(const ExprNode& n, std::ostream& os);

void print_wrapped(const ExprNode& n, int min_prec, std::ostream& os) {
  if (precedence(n) < min_prec) {
    os << '(';
    print(n, os);
    os << ')';
  } else {
    print(n, os);
  }
}

const char* function_name(ExprOp op) {
  switch (op) {
    case ExprOp::exp:
      return "exp";
    case ExprOp::log:
      return "log";
    case ExprOp::sin:
      return "sin";
    case ExprOp::cos:
      return "cos";
    case ExprOp::sgn:
      return "sgn";
    case ExprOp::flatexp:
      return "flatexp";
    case ExprOp::flatmul:
      return "flatmul";
    default:
      return "?";
  }
}

void print(const ExprNode& n, std::ostream& os) {
  switch (n.op) {
    case ExprOp::constant:
      os << n.value.get_str();
      return;
    case ExprOp::variable:
      os << 'x' << (n.index + 1);
      return;
    case ExprOp::add:
      print_wrapped(*n.lhs, 1, os);
      os << " + ";
      print_wrapped(*n.rhs, 2, os);
      return;
    case ExprOp::sub:
      print_wrapped(*n.lhs, 1, os);
      os << " - ";
      print_wrapped(*n.rhs, 2, os);
      return;
    case ExprOp::mul:
      print_wrapped(*n.lhs, 2, os);
      os << '*';
      print_wrapped(*n.rhs, 3, os);
      return;
    case ExprOp::div:
      print_wrapped(*n.lhs, 2, os);
      os << '/';
      print_wrapped(*n.rhs, 3, os);
      return;
    case ExprOp::neg:
      os << '-';
      print_wrapped(*n.lhs, 3, os);
      return;
    case ExprOp::pow:
      print_wrapped(*n.lhs, 5, os);
      os << '^' << n.index;
      return;
    case ExprOp::flatmul:
      os << "flatmul(";
      print(*n.lhs, os);
      os << ", ";
      print(*n.rhs, os);
      os << ')';
      return;
    default:
      os << function_name(n.op) << '(';
      print(*n.lhs, os);
      os << ')';
      return;
  }
}

std::string node_str(const ExprNode& n) {
  std::ostringstream os;
  print(n, os);
  return os.str();
}

// ---- compilation ------------------------------------------------------------

void emit(const ExprNode& n, Program& prog, std::size_t depth) {
  auto push = [&](Instr ins) { prog.code.push_back(ins); };
  prog.max_depth = std::max(prog.max_depth, depth + 1);
  switch (n.op) {
    case ExprOp::constant:
      push({Code::constant, 0, n.approx, 0, &n});
      return;
    case ExprOp::variable:
      push({Code::variable, n.index, 0.0, 0, &n});
      return;
    case ExprOp::add:
    case ExprOp::sub:
    case ExprOp::mul:
    case ExprOp::div: {
      emit(*n.lhs, prog, depth);
      emit(*n.rhs, prog, depth + 1);
      const Code c = n.op == ExprOp::add   ? Code::add
                     : n.op == ExprOp::sub ? Code::sub
                     : n.op == ExprOp::mul ? Code::mul
                                           : Code::div;
      push({c, 0, 0.0, 0, &n});
      return;
    }
    case ExprOp::pow:
      emit(*n.lhs, prog, depth);
      push({Code::pow, n.index, 0.0, 0, &n});
      return;
    case ExprOp::flatmul: {
      emit(*n.lhs, prog, depth);
      const std::size_t begin = prog.code.size();
      push({Code::flat_begin, 0, 0.0, 0, &n});
      emit(*n.rhs, prog, depth + 1);
      push({Code::flat_end, 0, 0.0, 0, &n});
      prog.code[begin].jump = prog.code.size();
      return;
    }
    default: {
      emit(*n.lhs, prog, depth);
      Code c = Code::neg;
      switch (n.op) {
        case ExprOp::neg:
          c = Code::neg;
          break;
        case ExprOp::exp:
          c = Code::exp;
          break;
        case ExprOp::log:
          c = Code::log;
          break;
        case ExprOp::sin:
          c = Code::sin;
          break;
        case ExprOp::cos:
          c = Code::cos;
          break;
        case ExprOp::sgn:
          c = Code::sgn;
          break;
        case ExprOp::flatexp:
          c = Code::flatexp;
          break;
        default:
          break;
      }
      push({c, 0, 0.0, 0, &n});
      return;
    }
  }
}

std::shared_ptr<const Program> compile(const ExprNode& root) {
  auto prog = std::make_shared<Program>();
  emit(root, *prog, 0);
  return prog;
}

double flat_value(double u) { return u == 0.0 ? 0.0 : std::exp(-1.0 / std::abs(u)); }

double run(const Program& prog, std::span<const double> x, double* stack) {
  std::size_t sp = 0;
  const std::size_t n = prog.code.size();
  for (std::size_t pc = 0; pc < n; ++pc) {
    const Instr& ins = prog.code[pc];
    switch (ins.code) {
      case Code::constant:
        stack[sp++] = ins.value;
        break;
      case Code::variable:
        stack[sp++] = x[ins.index];
        break;
      case Code::add:
        --sp;
        stack[sp - 1] += stack[sp];
        break;
      case Code::sub:
        --sp;
        stack[sp - 1] -= stack[sp];
        break;
      case Code::mul:
        --sp;
        stack[sp - 1] *= stack[sp];
        break;
      case Code::div:
        --sp;
        if (stack[sp] == 0.0) throw DomainError("division by zero", node_str(*ins.node));
        stack[sp - 1] /= stack[sp];
        break;
      case Code::neg:
        stack[sp - 1] = -stack[sp - 1];
        break;
      case Code::pow: {
        const double b = stack[sp - 1];
        if (b == 0.0 && ins.index < 0) throw DomainError("division by zero", node_str(*ins.node));
        double r = 1.0, base = b;
        unsigned e = static_cast<unsigned>(ins.index < 0 ? -ins.index : ins.index);
        while (e) {
          if (e & 1u) r *= base;
          base *= base;
          e >>= 1u;
        }
        stack[sp - 1] = ins.index < 0 ? 1.0 / r : r;
        break;
      }
      case Code::exp:
        stack[sp - 1] = std::exp(stack[sp - 1]);
        break;
      case Code::log:
        if (!(stack[sp - 1] > 0.0)) throw DomainError("log of non-positive value", node_str(*ins.node));
        stack[sp - 1] = std::log(stack[sp - 1]);
        break;
      case Code::sin:
        stack[sp - 1] = std::sin(stack[sp - 1]);
        break;
      case Code::cos:
        stack[sp - 1] = std::cos(stack[sp - 1]);
        break;
      case Code::sgn: {
        const double v = stack[sp - 1];
        stack[sp - 1] = v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0);
        break;
      }
      case Code::flatexp:
        stack[sp - 1] = flat_value(stack[sp - 1]);
        break;
      case Code::flat_begin:
        if (flat_value(stack[sp - 1]) == 0.0) {
          stack[sp - 1] = 0.0;
          pc = ins.jump - 1;
        }
        break;
      case Code::flat_end: {
        --sp;
        const double body = stack[sp];
        stack[sp - 1] = flat_value(stack[sp - 1]) * body;
        break;
      }
    }
  }
  return stack[0];
}

}  // namespace

// ---- SmoothExpr ---------------------------------------------------------------

SmoothExpr::SmoothExpr() : SmoothExpr(1, make_constant(0)) {}

SmoothExpr::SmoothExpr(int arity, ExprPtr root)
    : arity_(arity), root_(std::move(root)), program_(compile(*root_)) {
  if (arity_ < 1) throw ShapeError("expression arity must be positive");
}

SmoothExpr SmoothExpr::constant(int arity, const mpq_class& value) {
  return SmoothExpr(arity, make_constant(value));
}

SmoothExpr SmoothExpr::variable(int arity, int index) {
  if (index < 0 || index >= arity) throw ShapeError("variable index out of range");
  return SmoothExpr(arity, make_variable(index));
}

double SmoothExpr::operator()(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != arity_)
    throw ShapeError("point has " + std::to_string(point.size()) + " coordinates, expected " +
                     std::to_string(arity_));
  double result;
  if (program_->max_depth <= 64) {
    std::array<double, 64> stack;
    result = run(*program_, point, stack.data());
  } else {
    std::vector<double> stack(program_->max_depth);
    result = run(*program_, point, stack.data());
  }
  if (!std::isfinite(result)) throw DomainError("non-finite value", str());
  return result;
}

std::optional<mpq_class> SmoothExpr::constant_value() const {
  if (root_->op == ExprOp::constant) return root_->value;
  return std::nullopt;
}

bool SmoothExpr::is_zero() const { return root_->op == ExprOp::constant && root_->value == 0; }

namespace {
bool polynomial_node(const ExprNode& n) {
  switch (n.op) {
    case ExprOp::constant:
    case ExprOp::variable:
      return true;
    case ExprOp::add:
    case ExprOp::sub:
    case ExprOp::mul:
      return polynomial_node(*n.lhs) && polynomial_node(*n.rhs);
    case ExprOp::div:
      return polynomial_node(*n.lhs) && n.rhs->op == ExprOp::constant && n.rhs->value != 0;
    case ExprOp::neg:
      return polynomial_node(*n.lhs);
    case ExprOp::pow:
      return n.index >= 0 && polynomial_node(*n.lhs);
    default:
      return false;
  }
}
}  // namespace

bool SmoothExpr::is_polynomial() const { return polynomial_node(*root_); }

std::string SmoothExpr::str() const { return node_str(*root_); }

// ---- algebra --------------------------------------------------------------

namespace {
int common_arity(const SmoothExpr& a, const SmoothExpr& b) {
  if (a.arity() != b.arity())
    throw ShapeError("arity mismatch: " + std::to_string(a.arity()) + " vs " +
                     std::to_string(b.arity()));
  return a.arity();
}
}  // namespace

SmoothExpr operator+(const SmoothExpr& a, const SmoothExpr& b) {
  return SmoothExpr(common_arity(a, b), n_add(a.root(), b.root()));
}
SmoothExpr operator-(const SmoothExpr& a, const SmoothExpr& b) {
  return SmoothExpr(common_arity(a, b), n_sub(a.root(), b.root()));
}
SmoothExpr operator*(const SmoothExpr& a, const SmoothExpr& b) {
  return SmoothExpr(common_arity(a, b), n_mul(a.root(), b.root()));
}
SmoothExpr operator/(const SmoothExpr& a, const SmoothExpr& b) {
  return SmoothExpr(common_arity(a, b), n_div(a.root(), b.root()));
}
SmoothExpr operator-(const SmoothExpr& a) { return SmoothExpr(a.arity(), n_neg(a.root())); }
SmoothExpr operator+(const SmoothExpr& a, const mpq_class& c) {
  return SmoothExpr(a.arity(), n_add(a.root(), make_constant(c)));
}
SmoothExpr operator-(const SmoothExpr& a, const mpq_class& c) {
  return SmoothExpr(a.arity(), n_sub(a.root(), make_constant(c)));
}
SmoothExpr operator*(const mpq_class& c, const SmoothExpr& a) {
  return SmoothExpr(a.arity(), n_mul(make_constant(c), a.root()));
}
SmoothExpr operator/(const SmoothExpr& a, const mpq_class& c) {
  return SmoothExpr(a.arity(), n_div(a.root(), make_constant(c)));
}

SmoothExpr pow(const SmoothExpr& base, int exponent) {
  return SmoothExpr(base.arity(), n_pow(base.root(), exponent));
}
SmoothExpr exp(const SmoothExpr& u) { return SmoothExpr(u.arity(), n_unary(ExprOp::exp, u.root())); }
SmoothExpr log(const SmoothExpr& u) { return SmoothExpr(u.arity(), n_unary(ExprOp::log, u.root())); }
SmoothExpr sin(const SmoothExpr& u) { return SmoothExpr(u.arity(), n_unary(ExprOp::sin, u.root())); }
SmoothExpr cos(const SmoothExpr& u) { return SmoothExpr(u.arity(), n_unary(ExprOp::cos, u.root())); }
SmoothExpr sgn(const SmoothExpr& u) { return SmoothExpr(u.arity(), n_unary(ExprOp::sgn, u.root())); }
SmoothExpr flatexp(const SmoothExpr& u) {
  return SmoothExpr(u.arity(), n_unary(ExprOp::flatexp, u.root()));
}
SmoothExpr flatmul(const SmoothExpr& u, const SmoothExpr& body) {
  return SmoothExpr(common_arity(u, body), n_flatmul(u.root(), body.root()));
}

// ---- differentiation --------------------------------------------------------

namespace {

ExprPtr d(const ExprPtr& n, int i) {
  switch (n->op) {
    case ExprOp::constant:
      return make_constant(0);
    case ExprOp::variable:
      return make_constant(n->index == i ? 1 : 0);
    case ExprOp::add:
      return n_add(d(n->lhs, i), d(n->rhs, i));
    case ExprOp::sub:
      return n_sub(d(n->lhs, i), d(n->rhs, i));
    case ExprOp::neg:
      return n_neg(d(n->lhs, i));
    case ExprOp::mul:
      return n_add(n_mul(d(n->lhs, i), n->rhs), n_mul(n->lhs, d(n->rhs, i)));
    case ExprOp::div: {
      const ExprPtr num = n_sub(n_mul(d(n->lhs, i), n->rhs), n_mul(n->lhs, d(n->rhs, i)));
      return n_div(num, n_pow(n->rhs, 2));
    }
    case ExprOp::pow: {
      const int k = n->index;
      return n_mul(n_mul(make_constant(k), n_pow(n->lhs, k - 1)), d(n->lhs, i));
    }
    case ExprOp::exp:
      return n_mul(n, d(n->lhs, i));
    case ExprOp::log:
      return n_div(d(n->lhs, i), n->lhs);
    case ExprOp::sin:
      return n_mul(n_unary(ExprOp::cos, n->lhs), d(n->lhs, i));
    case ExprOp::cos:
      return n_neg(n_mul(n_unary(ExprOp::sin, n->lhs), d(n->lhs, i)));
    case ExprOp::sgn:
      return make_constant(0);
    case ExprOp::flatexp: {
      // d e^{-1/|u|} = e^{-1/|u|} * sgn(u) u' / u^2, guarded at u = 0.
      const ExprPtr& u = n->lhs;
      const ExprPtr body =
          n_div(n_mul(n_unary(ExprOp::sgn, u), d(u, i)), n_pow(u, 2));
      return n_flatmul(u, body);
    }
    case ExprOp::flatmul: {
      const ExprPtr& u = n->lhs;
      const ExprPtr& b = n->rhs;
      const ExprPtr chain =
          n_div(n_mul(n_unary(ExprOp::sgn, u), d(u, i)), n_pow(u, 2));
      return n_flatmul(u, n_add(d(b, i), n_mul(b, chain)));
    }
  }
  return make_constant(0);
}

ExprPtr rebuild(const ExprPtr& n, const std::vector<ExprPtr>& vars) {
  switch (n->op) {
    case ExprOp::constant:
      return n;
    case ExprOp::variable:
      return vars.at(n->index);
    case ExprOp::add:
      return n_add(rebuild(n->lhs, vars), rebuild(n->rhs, vars));
    case ExprOp::sub:
      return n_sub(rebuild(n->lhs, vars), rebuild(n->rhs, vars));
    case ExprOp::mul:
      return n_mul(rebuild(n->lhs, vars), rebuild(n->rhs, vars));
    case ExprOp::div:
      return n_div(rebuild(n->lhs, vars), rebuild(n->rhs, vars));
    case ExprOp::neg:
      return n_neg(rebuild(n->lhs, vars));
    case ExprOp::pow:
      return n_pow(rebuild(n->lhs, vars), n->index);
    case ExprOp::flatmul:
      return n_flatmul(rebuild(n->lhs, vars), rebuild(n->rhs, vars));
    default:
      return n_unary(n->op, rebuild(n->lhs, vars));
  }
}

}  // namespace

SmoothExpr derive(const SmoothExpr& e, int index) {
  if (index < 0 || index >= e.arity())
    throw ShapeError("derivative index " + std::to_string(index) + " out of range for arity " +
                     std::to_string(e.arity()));
  return SmoothExpr(e.arity(), d(e.root(), index));
}

SmoothExpr substitute(const SmoothExpr& e, std::span<const SmoothExpr> replacements) {
  if (static_cast<int>(replacements.size()) != e.arity())
    throw ShapeError("substitution needs one replacement per variable");
  const int arity = replacements.empty() ? 1 : replacements.front().arity();
  std::vector<ExprPtr> vars;
  for (const auto& r : replacements) {
    if (r.arity() != arity) throw ShapeError("replacements disagree in arity");
    vars.push_back(r.root());
  }
  return SmoothExpr(arity, rebuild(e.root(), vars));
}

SmoothExpr embed(const SmoothExpr& e, int new_arity, int offset) {
  if (offset < 0 || offset + e.arity() > new_arity) throw ShapeError("embedding out of range");
  std::vector<ExprPtr> vars;
  for (int j = 0; j < e.arity(); ++j) vars.push_back(make_variable(j + offset));
  return SmoothExpr(new_arity, rebuild(e.root(), vars));
}

// ---- vector fields -----------------------------------------------------------

VectorFieldExpr::VectorFieldExpr(std::vector<SmoothExpr> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw ShapeError("vector field needs at least one component");
  arity_ = components_.front().arity();
  for (const auto& c : components_)
    if (c.arity() != arity_) throw ShapeError("vector field components disagree in arity");
}

void VectorFieldExpr::operator()(std::span<const double> point, std::span<double> out) const {
  for (std::size_t i = 0; i < components_.size(); ++i) out[i] = components_[i](point);
}

std::string VectorFieldExpr::str() const {
  std::string s;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) s += "; ";
    s += components_[i].str();
  }
  return s;
}

VectorFieldExpr parse_field(std::string_view text, int arity) {
  std::vector<SmoothExpr> comps;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(';', start);
    comps.push_back(parse_expr(text.substr(start, pos - start), arity));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return VectorFieldExpr(std::move(comps));
}

SmoothExpr directional_derivative(const SmoothExpr& f, const VectorFieldExpr& field) {
  if (field.arity() != f.arity() || field.size() != f.arity())
    throw ShapeError("field shape does not match function arity");
  SmoothExpr sum = SmoothExpr::constant(f.arity(), 0);
  for (int i = 0; i < f.arity(); ++i) sum = sum + field[i] * derive(f, i);
  return sum;
}

// ---- grids -------------------------------------------------------------------

bool Box::contains(std::span<const double> p) const {
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!(p[i] >= lo[i] && p[i] <= hi[i])) return false;
  return true;
}

Box Box::cube(int dimension, double lo, double hi) {
  return Box{std::vector<double>(dimension, lo), std::vector<double>(dimension, hi)};
}

std::vector<std::vector<double>> grid_points(const Box& box, int per_axis) {
  const int m = box.dimension();
  std::vector<std::vector<double>> axes(m);
  for (int i = 0; i < m; ++i) {
    axes[i].resize(per_axis);
    for (int k = 0; k < per_axis; ++k)
      axes[i][k] = per_axis == 1 ? box.lo[i]
                                 : box.lo[i] + (box.hi[i] - box.lo[i]) * k / (per_axis - 1);
  }
  std::size_t total = 1;
  for (int i = 0; i < m; ++i) total *= per_axis;
  std::vector<std::vector<double>> pts;
  pts.reserve(total);
  std::vector<int> idx(m, 0);
  for (std::size_t t = 0; t < total; ++t) {
    std::vector<double> p(m);
    for (int i = 0; i < m; ++i) p[i] = axes[i][idx[i]];
    pts.push_back(std::move(p));
    for (int i = m - 1; i >= 0; --i) {
      if (++idx[i] < per_axis) break;
      idx[i] = 0;
    }
  }
  return pts;
}

double max_abs_on_grid(const SmoothExpr& e, const Box& box, int per_axis, bool skip_singular) {
  double worst = 0.0;
  for (const auto& p : grid_points(box, per_axis)) {
    try {
      worst = std::max(worst, std::abs(e(p)));
    } catch (const DomainError&) {
      if (!skip_singular) throw;
    }
  }
  return worst;
}

}  // namespace jacobiflow
