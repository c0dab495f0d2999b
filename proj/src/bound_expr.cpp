#include "priomet/bound_expr.hpp"

#include <cctype>
#include <vector>

#include "priomet/errors.hpp"

namespace priomet {

namespace {

enum class Op { Num, Var, Add, Sub, Mul, Div, Neg, Ceil, Floor, Log2, Alpha, Min, Max };

}  // namespace

struct BoundExpr::Node {
  Op op;
  Scalar value;      // Num
  char var = 0;      // Var: 'j', 'n', 'k'
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const BoundExpr::Node>;

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<BoundExpr::Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& why) {
    throw ValidationError(ErrorKind::ParseError,
                          "bound expr: " + why + " at offset " + std::to_string(pos));
  }

  NodePtr parse_expr() {
    NodePtr left = parse_term();
    while (true) {
      skip();
      if (eat('+'))
        left = make(Op::Add, left, parse_term());
      else if (eat('-'))
        left = make(Op::Sub, left, parse_term());
      else
        return left;
    }
  }

  NodePtr parse_term() {
    NodePtr left = parse_factor();
    while (true) {
      skip();
      if (eat('*'))
        left = make(Op::Mul, left, parse_factor());
      else if (eat('/'))
        left = make(Op::Div, left, parse_factor());
      else
        return left;
    }
  }

  NodePtr parse_factor() {
    skip();
    if (eat('-')) return make(Op::Neg, parse_factor());
    if (eat('(')) {
      NodePtr inner = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (pos >= s.size()) fail("unexpected end");
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.'))
        ++pos;
      auto n = std::make_shared<BoundExpr::Node>();
      n->op = Op::Num;
      n->value = parse_scalar(s.substr(start, pos - start));
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
      std::string word = s.substr(start, pos - start);
      if (word == "j" || word == "n" || word == "k") {
        auto n = std::make_shared<BoundExpr::Node>();
        n->op = Op::Var;
        n->var = word[0];
        return n;
      }
      if (!eat('(')) fail("expected '(' after " + word);
      NodePtr a = parse_expr();
      if (word == "min" || word == "max") {
        if (!eat(',')) fail("expected ',' in " + word);
        NodePtr b = parse_expr();
        if (!eat(')')) fail("expected ')'");
        return make(word == "min" ? Op::Min : Op::Max, a, b);
      }
      if (!eat(')')) fail("expected ')'");
      if (word == "ceil") return make(Op::Ceil, a);
      if (word == "floor") return make(Op::Floor, a);
      if (word == "log2") return make(Op::Log2, a);
      if (word == "alpha") return make(Op::Alpha, a);
      fail("unknown function " + word);
    }
    fail("unexpected character");
  }
};

Enclosure eval_node(const BoundExpr::Node& nd, const EvalContext& ctx) {
  switch (nd.op) {
    case Op::Num:
      return {nd.value, nd.value};
    case Op::Var: {
      const Scalar& v = nd.var == 'j' ? ctx.j : nd.var == 'n' ? ctx.n : ctx.k;
      return {v, v};
    }
    case Op::Add: {
      auto a = eval_node(*nd.a, ctx), b = eval_node(*nd.b, ctx);
      return {a.lo + b.lo, a.hi + b.hi};
    }
    case Op::Sub: {
      auto a = eval_node(*nd.a, ctx), b = eval_node(*nd.b, ctx);
      return {a.lo - b.hi, a.hi - b.lo};
    }
    case Op::Neg: {
      auto a = eval_node(*nd.a, ctx);
      return {-a.hi, -a.lo};
    }
    case Op::Mul: {
      auto a = eval_node(*nd.a, ctx), b = eval_node(*nd.b, ctx);
      Scalar c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
      return {std::min(std::min(c1, c2), std::min(c3, c4)),
              std::max(std::max(c1, c2), std::max(c3, c4))};
    }
    case Op::Div: {
      auto a = eval_node(*nd.a, ctx), b = eval_node(*nd.b, ctx);
      if (b.lo <= 0 && b.hi >= 0)
        throw ValidationError(ErrorKind::InvalidParams, "bound expr divides by 0 enclosure");
      Scalar c1 = a.lo / b.lo, c2 = a.lo / b.hi, c3 = a.hi / b.lo, c4 = a.hi / b.hi;
      return {std::min(std::min(c1, c2), std::min(c3, c4)),
              std::max(std::max(c1, c2), std::max(c3, c4))};
    }
    case Op::Ceil: {
      auto a = eval_node(*nd.a, ctx);
      Scalar lo(ceil_scalar(a.lo)), hi(ceil_scalar(a.hi));
      return {lo, hi};
    }
    case Op::Floor: {
      auto a = eval_node(*nd.a, ctx);
      Scalar lo(floor_scalar(a.lo)), hi(floor_scalar(a.hi));
      return {lo, hi};
    }
    case Op::Log2: {
      auto a = eval_node(*nd.a, ctx);
      if (a.lo <= 0)
        throw ValidationError(ErrorKind::InvalidParams, "log2 of non-positive enclosure");
      auto lo = log2_interval(a.lo);
      auto hi = log2_interval(a.hi);
      return {lo.first, hi.second};
    }
    case Op::Alpha: {
      auto a = eval_node(*nd.a, ctx);
      if (!ctx.alpha)
        throw ValidationError(ErrorKind::InvalidParams, "bound expr uses alpha with none loaded");
      if (!a.exact() || a.lo.get_den() != 1)
        throw ValidationError(ErrorKind::InvalidParams, "alpha argument must be an exact integer");
      long idx = a.lo.get_num().get_si();
      if (idx < 1 || idx > ctx.alpha->n_max())
        throw ValidationError(ErrorKind::InvalidParams, "alpha index out of certified range");
      const Scalar& v = ctx.alpha->at(static_cast<int>(idx));
      return {v, v};
    }
    case Op::Min: {
      auto a = eval_node(*nd.a, ctx), b = eval_node(*nd.b, ctx);
      return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
    }
    case Op::Max: {
      auto a = eval_node(*nd.a, ctx), b = eval_node(*nd.b, ctx);
      return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
    }
  }
  throw InvariantBreach("unreachable bound expr op");
}

}  // namespace

BoundExpr BoundExpr::parse(const std::string& text) {
  Parser p(text);
  BoundExpr e;
  e.root_ = p.parse_expr();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  e.text_ = text;
  return e;
}

Enclosure BoundExpr::eval(const EvalContext& ctx) const {
  require_invariant(root_ != nullptr, "evaluating an empty bound expr");
  return eval_node(*root_, ctx);
}

BoundCheck check_bound(const Scalar& value, const Enclosure& bound) {
  if (value <= bound.lo) return BoundCheck::Pass;
  if (value > bound.hi) return BoundCheck::Fail;
  return BoundCheck::Indeterminate;
}

}  // namespace priomet
