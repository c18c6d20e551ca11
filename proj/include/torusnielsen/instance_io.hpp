#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "torusnielsen/bundlemap.hpp"
#include "torusnielsen/nielsen.hpp"

// Line-oriented instance files:
//
//   # comment
//   base: circle            (point | circle | sphere:<b>)
//   m: 2
//   n: 2
//   A_M: [[0,-1],[1,0]]
//   A_N: [[0,-1],[1,0]]
//   L: [[1,-1],[1,1]]
//   v: [1,0]
//
// The pair form replaces L, v by L1, v1, L2, v2. Fixed-point files give
// n, A, f_star and v instead. Omitted gluings default to the identity.
namespace tn::io {

/// A value as written: a flat list or a list of rows.
struct Field {
  std::string key;
  std::size_t line = 0;
  std::size_t column = 0;      // of the value
  bool is_matrix = false;
  std::string scalar;          // for base, m, n
  IntVector list;
  std::vector<IntVector> rows;
};

struct InstanceFile {
  std::map<std::string, Field> fields;

  bool has(const std::string& key) const { return fields.count(key) != 0; }
  bool is_fixed_point() const { return has("f_star"); }
};

/// Throws Error{Parse} with "line L, column C" in the message.
InstanceFile parse_instance_text(std::string_view text);
InstanceFile read_instance_file(const std::string& path);

/// Validates and builds; throws Parse for missing keys, and the library
/// errors (DimMismatch, BadGluing, IntertwineViolated, ...) otherwise.
ProblemInstance to_problem(const InstanceFile& file);
FixedPointProblem to_fixed_point_problem(const InstanceFile& file);

/// Canonical text form accepted by parse_instance_text.
std::string serialize(const ProblemInstance& inst);
std::string serialize(const FixedPointProblem& p);

std::string format_matrix(const IntMatrix& A);

}  // namespace tn::io
