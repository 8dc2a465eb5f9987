#pragma once

// Text I/O: 17-significant-digit number formatting, CSV tables, a small
// ordered JSON writer, and the builtin function specs used on the command line.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "herglotz/grid.hpp"

namespace herglotz {

/// %.17g; "nan", "inf", "-inf" for non-finite values.
std::string fmt(double v);

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

/// Reads `t,value[,d1,d2,...]` with a header line. The t column must be a
/// uniform mesh.
SampledFunction read_trajectory_csv(const std::string& path);

/// Ordered JSON value. Objects keep insertion order so output is stable.
class Json {
public:
  Json() = default;
  Json(std::nullptr_t) {}
  Json(bool b) : v_(b) {}
  Json(double d) : v_(d) {}
  Json(int i) : v_(static_cast<std::int64_t>(i)) {}
  Json(std::int64_t i) : v_(i) {}
  Json(std::size_t i) : v_(static_cast<std::int64_t>(i)) {}
  Json(const char* s) : v_(std::string(s)) {}
  Json(std::string s) : v_(std::move(s)) {}
  Json(const std::vector<double>& xs);

  static Json array();
  static Json object();

  Json& push(Json v);
  Json& set(const std::string& key, Json v);

  std::string dump(int indent = 2) const;

private:
  struct Array {
    std::vector<Json> items;
  };
  struct Object {
    std::vector<std::string> keys;
    std::vector<Json> values;
  };
  std::variant<std::nullptr_t, bool, double, std::int64_t, std::string, Array, Object> v_{nullptr};

  void dump_into(std::string& out, int indent, int depth) const;
};

/// `pow:p` ((t-a)^p), `const:c`, `line:m:c` (m t + c).
struct FunctionSpec {
  enum class Kind { Pow, Const, Line };
  Kind kind = Kind::Const;
  double p = 0.0;
  double m = 0.0;
  double c = 0.0;
  std::string text;

  /// k-th derivative (k = 0 is the value) at t on a grid starting at a.
  double eval(double t, double a, int k = 0) const;
  /// Samples with derivative rows 1..deriv_rows.
  SampledFunction sample(const Grid& g, int deriv_rows = 0) const;
};

FunctionSpec parse_function_spec(const std::string& text);

}  // namespace herglotz
