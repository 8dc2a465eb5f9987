#include "herglotz/expr.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <numbers>

namespace herglotz {

namespace detail {

void throw_domain(const char* what, const Node& n) { throw DomainError(what, print(n)); }

}  // namespace detail

namespace {

NodePtr make_const(double c) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = c;
  return n;
}

NodePtr make_var(VarKind k, int index) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->var = k;
  n->index = index;
  return n;
}

NodePtr make_op(Op op, std::vector<NodePtr> args) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->args = std::move(args);
  return n;
}

struct FuncInfo {
  const char* name;
  Op op;
  int arity;
};

constexpr FuncInfo kFuncs[] = {{"pow", Op::Pow, 2},   {"exp", Op::Exp, 1},  {"ln", Op::Ln, 1},
                               {"sin", Op::Sin, 1},   {"cos", Op::Cos, 1},  {"sqrt", Op::Sqrt, 1},
                               {"gamma", Op::Gamma, 1}};

const FuncInfo* find_func(std::string_view name) {
  for (const auto& f : kFuncs)
    if (name == f.name) return &f;
  return nullptr;
}

class Parser {
public:
  Parser(std::string_view src, const VarSet& vars) : src_(src), vars_(vars) {}

  Expr run() {
    skip_ws();
    if (pos_ >= src_.size()) fail("empty expression", {"expression"});
    NodePtr e = expr();
    skip_ws();
    if (pos_ < src_.size()) fail("unexpected trailing input", {"operator", "end of input"});
    return Expr(std::move(e));
  }

private:
  std::string_view src_;
  VarSet vars_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
    std::string m = "syntax error at offset " + std::to_string(pos_ + 1) + ": " + msg;
    if (!expected.empty()) {
      m += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) m += (i ? " | " : "") + expected[i];
      m += ")";
    }
    throw ParseError(m, pos_ + 1, std::move(expected));
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("missing '") + c + "'", {std::string(1, c)});
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = make_op(Op::Add, {lhs, term()});
      else if (accept('-')) lhs = make_op(Op::Sub, {lhs, term()});
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = power();
    for (;;) {
      if (accept('*')) lhs = make_op(Op::Mul, {lhs, power()});
      else if (accept('/')) lhs = make_op(Op::Div, {lhs, power()});
      else return lhs;
    }
  }

  NodePtr power() {
    NodePtr base = unary();
    if (accept('^')) return make_op(Op::Pow, {base, power()});
    return base;
  }

  NodePtr unary() {
    if (accept('-')) return make_op(Op::Neg, {unary()});
    return primary();
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input", {"number", "identifier", "("});
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected character '") + c + "'", {"number", "identifier", "("});
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
      ++pos_;
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
        pos_ = p;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (ec != std::errc() || ptr != src_.data() + pos_) {
      pos_ = start;
      fail("malformed number", {"number"});
    }
    return make_const(v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);

    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '(') {
      const FuncInfo* f = find_func(name);
      if (!f) throw UnknownIdentifier(std::string(name), start + 1);
      ++pos_;
      std::vector<NodePtr> args;
      skip_ws();
      if (!(pos_ < src_.size() && src_[pos_] == ')')) {
        args.push_back(expr());
        while (accept(',')) args.push_back(expr());
      }
      expect(')');
      if (static_cast<int>(args.size()) != f->arity)
        throw ArityError(std::string(f->name) + " expects " + std::to_string(f->arity) +
                         " argument(s), got " + std::to_string(args.size()) + " at offset " +
                         std::to_string(start + 1));
      return make_op(f->op, std::move(args));
    }
    return variable(name, start);
  }

  NodePtr variable(std::string_view name, std::size_t start) {
    if (name == "pi") return make_const(std::numbers::pi);
    if (name == "t") return make_var(VarKind::T, 0);
    if (name == "z" && vars_.allow_z) return make_var(VarKind::Z, 0);
    if (name == "s" && vars_.allow_s) return make_var(VarKind::S, 0);
    if (name.size() >= 2 && (name[0] == 'x' || (name[0] == 'd' && vars_.allow_d))) {
      int idx = 0;
      auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
      if (ec == std::errc() && ptr == name.data() + name.size() && idx >= 1 && name[1] != '0' &&
          (vars_.max_index < 0 || idx <= vars_.max_index))
        return make_var(name[0] == 'x' ? VarKind::X : VarKind::D, idx);
    }
    throw UnknownIdentifier(std::string(name), start + 1);
  }
};

void print_into(const Node& n, std::string& out) {
  switch (n.op) {
    case Op::Const: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      out += buf;
      return;
    }
    case Op::Var:
      switch (n.var) {
        case VarKind::T: out += 't'; return;
        case VarKind::Z: out += 'z'; return;
        case VarKind::S: out += 's'; return;
        case VarKind::X: out += 'x' + std::to_string(n.index); return;
        case VarKind::D: out += 'd' + std::to_string(n.index); return;
      }
      return;
    case Op::Neg:
      out += "-(";
      print_into(*n.args[0], out);
      out += ')';
      return;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      const char* sym = n.op == Op::Add ? " + " : n.op == Op::Sub ? " - " : n.op == Op::Mul ? " * " : " / ";
      out += '(';
      print_into(*n.args[0], out);
      out += sym;
      print_into(*n.args[1], out);
      out += ')';
      return;
    }
    default:
      for (const auto& f : kFuncs) {
        if (f.op != n.op) continue;
        out += f.name;
        out += '(';
        for (std::size_t i = 0; i < n.args.size(); ++i) {
          if (i) out += ", ";
          print_into(*n.args[i], out);
        }
        out += ')';
        return;
      }
  }
}

void max_index_into(const Node& n, int& m) {
  if (n.op == Op::Var && (n.var == VarKind::X || n.var == VarKind::D)) m = std::max(m, n.index);
  for (const auto& a : n.args) max_index_into(*a, m);
}

bool uses_into(const Node& n, VarKind k, int index) {
  if (n.op == Op::Var && n.var == k && (index == 0 || n.index == index)) return true;
  for (const auto& a : n.args)
    if (uses_into(*a, k, index)) return true;
  return false;
}

}  // namespace

Expr Expr::constant(double c) { return Expr(make_const(c)); }

int Expr::max_index() const {
  int m = 0;
  if (root_) max_index_into(*root_, m);
  return m;
}

bool Expr::uses(VarKind kind, int index) const { return root_ && uses_into(*root_, kind, index); }

Expr parse(std::string_view src, const VarSet& vars) { return Parser(src, vars).run(); }

std::string print(const Node& n) {
  std::string s;
  print_into(n, s);
  return s;
}

std::string print(const Expr& e) { return print(e.root()); }

bool structurally_equal(const Node& a, const Node& b) {
  if (a.op != b.op || a.args.size() != b.args.size()) return false;
  if (a.op == Op::Const && !(a.value == b.value)) return false;
  if (a.op == Op::Var && (a.var != b.var || a.index != b.index)) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!structurally_equal(*a.args[i], *b.args[i])) return false;
  return true;
}

double evaluate(const Expr& e, const EvalPoint& p) {
  Args<double> a{p.t, p.x, p.d, p.z, 0.0};
  return evaluate(e, a);
}

Partials partials(const Expr& e, const EvalPoint& p) {
  using D = Dual<double>;
  const std::size_t n = p.x.size();
  if (p.d.size() != n) throw InvalidArgument("partials: x and d must have the same length");
  std::vector<D> x(n), d(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = D(p.x[i]);
    d[i] = D(p.d[i]);
  }
  Partials out;
  out.value = evaluate(e, p);
  out.grad.assign(2 * n + 2, 0.0);

  auto run = [&] {
    Args<D> a{D(p.t), x, d, D(p.z), D(0.0)};
    return evaluate(e, a).d;
  };

  // only differentiate in the variables the expression references
  auto grad_t = [&] {
    if (!e.uses(VarKind::T)) return 0.0;
    Args<D> a{seed(p.t), x, d, D(p.z), D(0.0)};
    return evaluate(e, a).d;
  };
  out.grad[0] = grad_t();
  for (std::size_t j = 0; j < n; ++j) {
    if (e.uses(VarKind::X, static_cast<int>(j + 1))) {
      x[j] = seed(p.x[j]);
      out.grad[1 + j] = run();
      x[j] = D(p.x[j]);
    }
    if (e.uses(VarKind::D, static_cast<int>(j + 1))) {
      d[j] = seed(p.d[j]);
      out.grad[1 + n + j] = run();
      d[j] = D(p.d[j]);
    }
  }
  if (e.uses(VarKind::Z)) {
    Args<D> a{D(p.t), x, d, seed(p.z), D(0.0)};
    out.grad[2 * n + 1] = evaluate(e, a).d;
  }
  return out;
}

}  // namespace herglotz
