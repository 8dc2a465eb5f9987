#include "herglotz/problems.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "herglotz/error.hpp"

namespace herglotz {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  const std::string t = trim(s);
  double v = 0.0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || p != t.data() + t.size())
    throw InvalidArgument(what + ": not a number: '" + t + "'");
  return v;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// (d1 - 2/Γ(2.5) t^1.5)^2, the integrand shared by Examples 1-3.
const char* kBracket = "pow(d1 - 2/gamma(2.5)*pow(t,1.5), 2)";

void validate(const ProblemDef& p) {
  const int n = p.lagrangian.dimension;
  if (n < 1) throw InvalidArgument("problem: dimension must be positive");
  if (static_cast<int>(p.lagrangian.orders.size()) != n)
    throw InvalidArgument("problem: need one order per component");
  for (double a : p.lagrangian.orders) {
    const bool first = a > 0.0 && a < 1.0;
    const bool second = a > 1.0 && a < 2.0;
    if (!first && !second)
      throw OrderError("problem: orders must lie in (0,1) or (1,2), got " + num(a));
  }
  if (p.lagrangian.expr.max_index() > n)
    throw InvalidArgument("problem: lagrangian references a component beyond dimension " +
                          std::to_string(n));
  if (static_cast<int>(p.bc_left.size()) != n || static_cast<int>(p.bc_right.size()) != n)
    throw InvalidArgument("problem: need one left and one right boundary entry per component");
  if (!(p.a < p.b)) throw InvalidArgument("problem: interval must satisfy a < b");
}

}  // namespace

LagrangianDef LagrangianDef::from_text(const std::string& text, int dimension,
                                       std::vector<double> orders) {
  LagrangianDef d;
  d.dimension = dimension;
  d.expr = parse(text, VarSet::lagrangian(dimension));
  d.orders = std::move(orders);
  d.source = text;
  return d;
}

HerglotzProblem::HerglotzProblem(ProblemDef d, std::size_t n_points)
    : def(std::move(d)), grid(def.a, def.b, n_points) {
  validate(def);
}

int HerglotzProblem::order_index(int j) const {
  return static_cast<int>(std::floor(order(j))) + 1;
}

bool HerglotzProblem::higher_order() const {
  for (double a : def.lagrangian.orders)
    if (a > 1.0) return true;
  return false;
}

bool HerglotzProblem::any_free_right() const {
  for (const auto& v : def.bc_right)
    if (!v) return true;
  return false;
}

ProblemDef builtin_problem(const std::string& name, const ProblemParams& params) {
  auto param = [&](const char* key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  ProblemDef p;
  p.name = name;
  p.a = 0.0;
  p.b = 1.0;
  p.bc_left = {0.0};
  p.bc_right = {1.0};
  if (name == "example1" || name == "example3") {
    p.lagrangian = LagrangianDef::from_text(kBracket, 1, {0.5});
    p.z_init = 0.0;
  } else if (name == "example2") {
    p.lagrangian = LagrangianDef::from_text(std::string(kBracket) + "*exp(t) + z", 1, {0.5});
    p.z_init = 1.0;
  } else if (name == "noether_gamma") {
    const double g = param("gamma", 0.1);
    const double pw = param("p", 2.0);
    const double alpha = param("alpha", 0.65);
    if (!(g > 0.0)) throw InvalidArgument("noether_gamma: gamma must be positive");
    p.lagrangian = LagrangianDef::from_text("pow(d1, " + num(pw) + ") - " + num(g) + "*z", 1, {alpha});
    p.z_init = 0.0;
  } else {
    std::string names;
    for (const auto& n : builtin_problem_names()) names += (names.empty() ? "" : ", ") + n;
    throw UnknownProblem("unknown problem '" + name + "' (available: " + names + ")");
  }
  validate(p);
  return p;
}

std::vector<std::string> builtin_problem_names() {
  return {"example1", "example2", "example3", "noether_gamma"};
}

std::string builtin_problem_summary(const std::string& name) {
  if (name == "example1") return "z' = (C D^0.5 x - 2/G(2.5) t^1.5)^2, z(0)=0, x(0)=0, x(1)=1";
  if (name == "example2") return "z' = (C D^0.5 x - 2/G(2.5) t^1.5)^2 e^t + z, z(0)=1, x(0)=0, x(1)=1";
  if (name == "example3") return "example1 solved through the N=1 truncated expansion";
  if (name == "noether_gamma")
    return "z' = (C D^alpha x)^p - gamma z, alpha=0.65, p=2, gamma=0.1, z(0)=0, x(0)=0, x(1)=1";
  throw UnknownProblem("unknown problem '" + name + "'");
}

const std::string& ConfigFile::at(const std::string& key) const {
  auto it = entries.find(key);
  if (it == entries.end()) throw InvalidArgument("config: missing key '" + key + "'");
  return it->second;
}

ConfigFile parse_config(const std::string& text) {
  ConfigFile cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key = value");
    cfg.entries[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return cfg;
}

ConfigFile load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& tok : split(text, ',')) out.push_back(parse_double(tok, "number list"));
  return out;
}

ProblemDef problem_from_config(const ConfigFile& cfg) {
  ProblemDef p;
  p.name = cfg.has("name") ? cfg.at("name") : "config";
  const int n = cfg.has("dimension") ? static_cast<int>(parse_double(cfg.at("dimension"), "dimension")) : 1;
  const auto orders = parse_number_list(cfg.at("orders"));
  p.lagrangian = LagrangianDef::from_text(cfg.at("lagrangian"), n, orders);
  const auto iv = parse_number_list(cfg.at("interval"));
  if (iv.size() != 2) throw InvalidArgument("config: interval needs two numbers");
  p.a = iv[0];
  p.b = iv[1];
  p.z_init = cfg.has("z_init") ? parse_double(cfg.at("z_init"), "z_init") : 0.0;
  p.bc_left = parse_number_list(cfg.at("bc.left"));
  for (const auto& tok : split(cfg.at("bc.right"), ',')) {
    if (tok == "free") p.bc_right.emplace_back(std::nullopt);
    else p.bc_right.emplace_back(parse_double(tok, "bc.right"));
  }
  validate(p);
  return p;
}

}  // namespace herglotz
