#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "herglotz/expr.hpp"
#include "herglotz/grid.hpp"

namespace herglotz {

/// L(t, x1..xn, d1..dn, z) with one fractional order per component.
/// Orders lie in (0,1), or in (i-1,i) with i <= 2 for the higher-order variant.
struct LagrangianDef {
  int dimension = 1;
  Expr expr;
  std::vector<double> orders;
  std::string source;  // expression text as given

  static LagrangianDef from_text(const std::string& text, int dimension, std::vector<double> orders);
};

/// A problem without a mesh: Lagrangian, interval, initial z and boundary data.
/// bc_right entries are nullopt for a free endpoint.
struct ProblemDef {
  std::string name;
  LagrangianDef lagrangian;
  double a = 0.0;
  double b = 1.0;
  double z_init = 0.0;
  std::vector<double> bc_left;
  std::vector<std::optional<double>> bc_right;
};

struct HerglotzProblem {
  ProblemDef def;
  Grid grid;

  HerglotzProblem(ProblemDef d, std::size_t n_points);

  int dimension() const noexcept { return def.lagrangian.dimension; }
  const Expr& lagrangian() const noexcept { return def.lagrangian.expr; }
  double order(int j) const { return def.lagrangian.orders.at(j); }
  /// Integer i with order ∈ (i-1, i).
  int order_index(int j) const;
  bool higher_order() const;
  bool free_right(int j) const { return !def.bc_right.at(j).has_value(); }
  bool any_free_right() const;
};

/// Parameters recognised by builtin_problem. Unused keys are ignored.
using ProblemParams = std::map<std::string, double>;

/// example1, example2, example3, noether_gamma (params: gamma, p, alpha).
ProblemDef builtin_problem(const std::string& name, const ProblemParams& params = {});
std::vector<std::string> builtin_problem_names();
std::string builtin_problem_summary(const std::string& name);

/// `key = value` file; '#' starts a comment.
struct ConfigFile {
  std::map<std::string, std::string> entries;

  bool has(const std::string& key) const { return entries.count(key) != 0; }
  const std::string& at(const std::string& key) const;
  bool defines_problem() const { return has("lagrangian"); }
};

ConfigFile load_config(const std::string& path);
ConfigFile parse_config(const std::string& text);

/// Keys: dimension, orders, interval, z_init, lagrangian, bc.left, bc.right.
ProblemDef problem_from_config(const ConfigFile& cfg);

std::vector<double> parse_number_list(const std::string& text);

}  // namespace herglotz
