#include "herglotz/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "herglotz/error.hpp"

namespace herglotz {

namespace {

double to_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size())
    throw InvalidArgument(what + ": not a number: '" + s + "'");
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ' && ch != '\t' && ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

void escape_into(std::string& out, const std::string& s) {
  out += '"';
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

}  // namespace

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size()) throw InvalidArgument("csv: header and column count differ");
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << fmt(columns[c][r]);
    out << '\n';
  }
}

SampledFunction read_trajectory_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot open trajectory file '" + path + "'");
  std::string line;
  if (!std::getline(f, line)) throw InvalidArgument(path + ": empty file");
  const auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "t" || header[1] != "value")
    throw InvalidArgument(path + ": header must start with t,value");
  std::vector<std::vector<double>> cols(header.size());
  int lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": wrong number of fields");
    for (std::size_t c = 0; c < cells.size(); ++c)
      cols[c].push_back(to_double(cells[c], path + ":" + std::to_string(lineno)));
  }
  const auto& t = cols[0];
  if (t.size() < 3) throw InvalidArgument(path + ": need at least 3 rows");
  Grid g(t.front(), t.back(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    if (std::abs(t[i] - g[i]) > 1e-9 * (1.0 + std::abs(g[i])))
      throw InvalidArgument(path + ": t column is not a uniform mesh");
  std::vector<std::vector<double>> derivs(cols.begin() + 2, cols.end());
  return SampledFunction(g, std::move(cols[1]), std::move(derivs));
}

Json::Json(const std::vector<double>& xs) : v_(Array{}) {
  for (double x : xs) push(x);
}

Json Json::array() {
  Json j;
  j.v_ = Array{};
  return j;
}

Json Json::object() {
  Json j;
  j.v_ = Object{};
  return j;
}

Json& Json::push(Json v) {
  std::get<Array>(v_).items.push_back(std::move(v));
  return *this;
}

Json& Json::set(const std::string& key, Json v) {
  auto& o = std::get<Object>(v_);
  for (std::size_t i = 0; i < o.keys.size(); ++i)
    if (o.keys[i] == key) {
      o.values[i] = std::move(v);
      return *this;
    }
  o.keys.push_back(key);
  o.values.push_back(std::move(v));
  return *this;
}

std::string Json::dump(int indent) const {
  std::string out;
  dump_into(out, indent, 0);
  out += '\n';
  return out;
}

void Json::dump_into(std::string& out, int indent, int depth) const {
  auto newline = [&](int d) {
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  if (std::holds_alternative<std::nullptr_t>(v_)) {
    out += "null";
  } else if (auto b = std::get_if<bool>(&v_)) {
    out += *b ? "true" : "false";
  } else if (auto d = std::get_if<double>(&v_)) {
    // JSON has no non-finite numbers
    out += std::isfinite(*d) ? fmt(*d) : "null";
  } else if (auto i = std::get_if<std::int64_t>(&v_)) {
    out += std::to_string(*i);
  } else if (auto s = std::get_if<std::string>(&v_)) {
    escape_into(out, *s);
  } else if (auto a = std::get_if<Array>(&v_)) {
    if (a->items.empty()) {
      out += "[]";
      return;
    }
    bool scalars = true;
    for (const auto& it : a->items)
      if (std::holds_alternative<Array>(it.v_) || std::holds_alternative<Object>(it.v_)) scalars = false;
    out += '[';
    for (std::size_t k = 0; k < a->items.size(); ++k) {
      if (k) out += scalars ? ", " : ",";
      if (!scalars) newline(depth + 1);
      a->items[k].dump_into(out, indent, depth + 1);
    }
    if (!scalars) newline(depth);
    out += ']';
  } else {
    const auto& o = std::get<Object>(v_);
    if (o.keys.empty()) {
      out += "{}";
      return;
    }
    out += '{';
    for (std::size_t k = 0; k < o.keys.size(); ++k) {
      if (k) out += ',';
      newline(depth + 1);
      escape_into(out, o.keys[k]);
      out += ": ";
      o.values[k].dump_into(out, indent, depth + 1);
    }
    newline(depth);
    out += '}';
  }
}

double FunctionSpec::eval(double t, double a, int k) const {
  switch (kind) {
    case Kind::Const:
      return k == 0 ? c : 0.0;
    case Kind::Line:
      return k == 0 ? m * t + c : k == 1 ? m : 0.0;
    case Kind::Pow: {
      // d^k/dt^k (t-a)^p = p (p-1) ... (p-k+1) (t-a)^{p-k}
      double coef = 1.0;
      for (int i = 0; i < k; ++i) coef *= p - i;
      if (coef == 0.0) return 0.0;
      return coef * std::pow(t - a, p - k);
    }
  }
  return 0.0;
}

SampledFunction FunctionSpec::sample(const Grid& g, int deriv_rows) const {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = eval(g[i], g.a());
  std::vector<std::vector<double>> d;
  for (int k = 1; k <= deriv_rows; ++k) {
    std::vector<double> row(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) row[i] = eval(g[i], g.a(), k);
    d.push_back(std::move(row));
  }
  return SampledFunction(g, std::move(v), std::move(d));
}

FunctionSpec parse_function_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  FunctionSpec f;
  f.text = text;
  if (parts.size() == 2 && parts[0] == "pow") {
    f.kind = FunctionSpec::Kind::Pow;
    f.p = to_double(parts[1], "pow exponent");
  } else if (parts.size() == 2 && parts[0] == "const") {
    f.kind = FunctionSpec::Kind::Const;
    f.c = to_double(parts[1], "constant");
  } else if (parts.size() == 3 && parts[0] == "line") {
    f.kind = FunctionSpec::Kind::Line;
    f.m = to_double(parts[1], "slope");
    f.c = to_double(parts[2], "intercept");
  } else {
    throw InvalidArgument("bad function spec '" + text + "' (expected pow:p, const:c or line:m:c)");
  }
  return f;
}

}  // namespace herglotz
