#pragma once

// A small expression language for Lagrangians L(t, x1..xn, d1..dn, z) and for
// transformation generators.
//
//   expr    := term (('+' | '-') term)*
//   term    := power (('*' | '/') power)*
//   power   := unary ('^' power)?
//   unary   := '-' unary | primary
//   primary := number | 'pi' | variable | func '(' args ')' | '(' expr ')'
//
// Variables: t, x<k>, d<k>, z, and s (transformation parameter, only when the
// variable set allows it). Functions: pow/2, exp, ln, sin, cos, sqrt, gamma.
// `a ^ b` is the same node as pow(a, b). Parse error offsets are 1-based
// columns; end of input is reported as length + 1.

#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "herglotz/dual.hpp"
#include "herglotz/error.hpp"
#include "herglotz/special.hpp"

namespace herglotz {

enum class Op : std::uint8_t {
  Const, Var, Neg, Add, Sub, Mul, Div, Pow, Exp, Ln, Sin, Cos, Sqrt, Gamma
};

enum class VarKind : std::uint8_t { T, X, D, Z, S };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Op op;
  double value = 0.0;          // Const
  VarKind var = VarKind::T;    // Var
  int index = 0;               // 1-based component for X and D
  std::vector<NodePtr> args;
};

/// Which variables a parse accepts. max_index < 0 means unbounded.
struct VarSet {
  int max_index = -1;
  bool allow_d = true;
  bool allow_z = true;
  bool allow_s = false;

  static VarSet lagrangian(int n) { return {n, true, true, false}; }
  static VarSet generator(int n) { return {n, false, false, false}; }
  static VarSet transformation(int n) { return {n, false, false, true}; }
};

/// Immutable expression tree.
class Expr {
public:
  Expr() = default;
  explicit Expr(NodePtr root) : root_(std::move(root)) {}

  const Node& root() const { return *root_; }
  bool empty() const noexcept { return !root_; }

  static Expr constant(double c);

  /// Largest x/d index referenced (0 when none).
  int max_index() const;
  bool uses(VarKind kind, int index = 0) const;

private:
  NodePtr root_;
};

Expr parse(std::string_view src, const VarSet& vars = {});
std::string print(const Expr& e);
std::string print(const Node& n);
bool structurally_equal(const Node& a, const Node& b);
inline bool structurally_equal(const Expr& a, const Expr& b) {
  return structurally_equal(a.root(), b.root());
}

/// Bound values for evaluation. x and d must cover every index the expression uses.
template <class T>
struct Args {
  T t{};
  std::span<const T> x{};
  std::span<const T> d{};
  T z{};
  T s{};
};

/// Point at which a Lagrangian is evaluated.
struct EvalPoint {
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> d;
  double z = 0.0;
};

namespace detail {

[[noreturn]] void throw_domain(const char* what, const Node& n);

inline bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

template <class T>
T eval_node(const Node& n, const Args<T>& a) {
  using std::cos;
  using std::exp;
  using std::log;
  using std::pow;
  using std::sin;
  using std::sqrt;
  switch (n.op) {
    case Op::Const:
      return T(n.value);
    case Op::Var:
      switch (n.var) {
        case VarKind::T: return a.t;
        case VarKind::Z: return a.z;
        case VarKind::S: return a.s;
        case VarKind::X:
          if (static_cast<std::size_t>(n.index) > a.x.size()) throw_domain("unbound variable", n);
          return a.x[n.index - 1];
        case VarKind::D:
          if (static_cast<std::size_t>(n.index) > a.d.size()) throw_domain("unbound variable", n);
          return a.d[n.index - 1];
      }
      break;
    case Op::Neg:
      return -eval_node(*n.args[0], a);
    case Op::Add:
      return eval_node(*n.args[0], a) + eval_node(*n.args[1], a);
    case Op::Sub:
      return eval_node(*n.args[0], a) - eval_node(*n.args[1], a);
    case Op::Mul:
      return eval_node(*n.args[0], a) * eval_node(*n.args[1], a);
    case Op::Div: {
      T num = eval_node(*n.args[0], a);
      T den = eval_node(*n.args[1], a);
      if (primal(den) == 0.0) throw_domain("division by zero", n);
      return num / den;
    }
    case Op::Pow: {
      T base = eval_node(*n.args[0], a);
      T ex = eval_node(*n.args[1], a);
      const double b = primal(base), e = primal(ex);
      if (b < 0.0 && !is_integer(e)) throw_domain("pow of negative base with non-integer exponent", n);
      if (b == 0.0 && e < 0.0) throw_domain("pow of zero with negative exponent", n);
      return pow(base, ex);
    }
    case Op::Exp:
      return exp(eval_node(*n.args[0], a));
    case Op::Ln: {
      T u = eval_node(*n.args[0], a);
      if (!(primal(u) > 0.0)) throw_domain("ln of non-positive value", n);
      return log(u);
    }
    case Op::Sin:
      return sin(eval_node(*n.args[0], a));
    case Op::Cos:
      return cos(eval_node(*n.args[0], a));
    case Op::Sqrt: {
      T u = eval_node(*n.args[0], a);
      if (primal(u) < 0.0) throw_domain("sqrt of negative value", n);
      return sqrt(u);
    }
    case Op::Gamma: {
      T u = eval_node(*n.args[0], a);
      const double p = primal(u);
      if (p <= 0.0 && std::abs(p - std::round(p)) <= 1e-12) throw_domain("gamma at a pole", n);
      if constexpr (std::is_same_v<T, double>) {
        return herglotz::gamma(u);
      } else {
        return gamma_generic(u);
      }
    }
  }
  throw_domain("corrupt node", n);
}

}  // namespace detail

template <class T>
T evaluate(const Expr& e, const Args<T>& a) {
  return detail::eval_node(e.root(), a);
}

double evaluate(const Expr& e, const EvalPoint& p);

/// Value and gradient ordered (∂t, ∂x1..∂xn, ∂d1..∂dn, ∂z), n = p.x.size().
struct Partials {
  double value = 0.0;
  std::vector<double> grad;

  double dt() const { return grad.front(); }
  double dx(int j) const { return grad[1 + j]; }
  double dd(int j, int n) const { return grad[1 + n + j]; }
  double dz() const { return grad.back(); }
};

Partials partials(const Expr& e, const EvalPoint& p);

}  // namespace herglotz
