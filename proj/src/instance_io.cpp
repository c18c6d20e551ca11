#include "torusnielsen/instance_io.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "torusnielsen/errors.hpp"

namespace tn::io {
namespace {

const std::set<std::string> kScalarKeys = {"base", "m", "n"};
const std::set<std::string> kVectorKeys = {"v", "v1", "v2"};
const std::set<std::string> kMatrixKeys = {"A_M", "A_N", "L", "L1", "L2", "A", "f_star"};

struct Pos {
  std::size_t line, column;
};

[[noreturn]] void fail(Pos p, const std::string& what) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(p.line) + ", column " +
                                    std::to_string(p.column) + ": " + what);
}

// Characters of one value with their source positions.
struct Cursor {
  std::vector<char> chars;
  std::vector<Pos> pos;
  std::size_t i = 0;
  Pos end_pos{0, 0};

  void skip_ws() {
    while (i < chars.size() && std::isspace(static_cast<unsigned char>(chars[i]))) ++i;
  }
  bool at_end() {
    skip_ws();
    return i >= chars.size();
  }
  Pos here() const { return i < pos.size() ? pos[i] : end_pos; }
  char peek() {
    skip_ws();
    return i < chars.size() ? chars[i] : '\0';
  }
  void expect(char c) {
    if (peek() != c) {
      const char got = peek();
      fail(here(), std::string("expected '") + c + "'" +
                       (got ? std::string(", found '") + got + "'" : ", found end of value"));
    }
    ++i;
  }
  Int integer() {
    skip_ws();
    const Pos start = here();
    std::string tok;
    while (i < chars.size() &&
           (std::isdigit(static_cast<unsigned char>(chars[i])) || chars[i] == '-' ||
            chars[i] == '+'))
      tok += chars[i++];
    auto v = parse_int(tok);
    if (!v) fail(start, tok.empty() ? "expected an integer" : "malformed integer '" + tok + "'");
    return *v;
  }
};

IntVector parse_list(Cursor& c) {
  IntVector out;
  c.expect('[');
  if (c.peek() == ']') {
    c.expect(']');
    return out;
  }
  while (true) {
    out.push_back(c.integer());
    if (c.peek() == ',') {
      c.expect(',');
      continue;
    }
    c.expect(']');
    return out;
  }
}

void parse_value(Cursor& c, Field& f) {
  const bool matrix_key = kMatrixKeys.count(f.key) != 0;
  c.skip_ws();
  const std::size_t open = c.i;
  c.expect('[');
  if (c.peek() == ']') {
    c.expect(']');
    f.is_matrix = matrix_key;
  } else if (c.peek() == '[') {
    if (!matrix_key) fail(c.here(), "'" + f.key + "' is a vector, not a matrix");
    f.is_matrix = true;
    std::size_t width = 0;
    while (true) {
      const Pos row_pos = c.here();
      IntVector row = parse_list(c);
      if (!f.rows.empty() && row.size() != width)
        fail(row_pos, "row has " + std::to_string(row.size()) + " entries, expected " +
                          std::to_string(width));
      width = row.size();
      f.rows.push_back(std::move(row));
      if (c.peek() == ',') {
        c.expect(',');
        continue;
      }
      c.expect(']');
      break;
    }
  } else {
    if (matrix_key) fail(c.here(), "'" + f.key + "' needs a list of rows like [[1,0],[0,1]]");
    c.i = open;
    f.list = parse_list(c);
  }
  if (!c.at_end()) fail(c.here(), "unexpected text after the value");
}

int bracket_balance(std::string_view s) {
  int b = 0;
  for (char ch : s) b += ch == '[' ? 1 : (ch == ']' ? -1 : 0);
  return b;
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

const Field& need(const InstanceFile& file, const std::string& key) {
  auto it = file.fields.find(key);
  if (it == file.fields.end())
    throw Error(ErrorCode::Parse, "missing required key '" + key + "'");
  return it->second;
}

std::optional<std::size_t> count_field(const InstanceFile& file, const std::string& key) {
  auto it = file.fields.find(key);
  if (it == file.fields.end()) return std::nullopt;
  const auto v = parse_int(it->second.scalar);
  if (!v || *v < 0 || *v > 1000)
    fail({it->second.line, it->second.column}, "'" + key + "' must be a small count");
  return static_cast<std::size_t>(v->get_ui());
}

BaseSpace parse_base(const Field& f) {
  const std::string& s = f.scalar;
  if (s == "point") return BaseSpace::point();
  if (s == "circle") return BaseSpace::circle();
  if (s.rfind("sphere:", 0) == 0) {
    const auto b = parse_int(s.substr(7));
    if (!b || *b < 2 || *b > 1000)
      fail({f.line, f.column}, "sphere dimension must be an integer >= 2");
    return BaseSpace::sphere(b->get_ui());
  }
  fail({f.line, f.column}, "base must be point, circle or sphere:<b>, found '" + s + "'");
}

IntMatrix matrix_of(const Field& f, std::size_t rows_if_empty, std::size_t cols_if_empty) {
  if (f.rows.empty()) {
    if (rows_if_empty > 0 && cols_if_empty == 0) return IntMatrix(rows_if_empty, 0);
    return IntMatrix(0, cols_if_empty);
  }
  return IntMatrix::from_rows(f.rows);
}

std::size_t rows_of(const Field& f) { return f.rows.size(); }
std::size_t cols_of(const Field& f) { return f.rows.empty() ? 0 : f.rows[0].size(); }

void check_declared(const char* what, std::optional<std::size_t> declared,
                    std::size_t actual) {
  if (declared && *declared != actual)
    throw Error(ErrorCode::DimMismatch, std::string(what) + " is declared as " +
                                            std::to_string(*declared) + " but the data has " +
                                            std::to_string(actual));
}

IntVector vector_or_zero(const InstanceFile& file, const std::string& key, std::size_t n) {
  auto it = file.fields.find(key);
  if (it == file.fields.end()) return IntVector(n);
  return it->second.list;
}

}  // namespace

InstanceFile parse_instance_text(std::string_view text) {
  InstanceFile file;
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char ch : text) {
      if (ch == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else if (ch != '\r') {
        cur += ch;
      }
    }
    lines.push_back(cur);
  }
  for (auto& l : lines) {
    const auto hash = l.find('#');
    if (hash != std::string::npos) l.resize(hash);
  }

  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string& line = lines[li];
    if (trim(line).empty()) continue;
    const std::size_t colon = line.find(':');
    const std::size_t key_start = line.find_first_not_of(" \t");
    if (colon == std::string::npos)
      fail({li + 1, key_start + 1}, "expected 'key: value'");
    Field f;
    f.key = trim(std::string_view(line).substr(0, colon));
    f.line = li + 1;
    if (!kScalarKeys.count(f.key) && !kVectorKeys.count(f.key) && !kMatrixKeys.count(f.key))
      fail({li + 1, key_start + 1}, "unknown key '" + f.key + "'");
    if (file.has(f.key)) fail({li + 1, key_start + 1}, "duplicate key '" + f.key + "'");

    std::size_t vstart = colon + 1;
    while (vstart < line.size() && std::isspace(static_cast<unsigned char>(line[vstart]))) ++vstart;
    f.column = vstart + 1;

    if (kScalarKeys.count(f.key)) {
      f.scalar = trim(std::string_view(line).substr(colon + 1));
      if (f.scalar.empty()) fail({li + 1, f.column}, "missing value for '" + f.key + "'");
      file.fields.emplace(f.key, std::move(f));
      continue;
    }

    Cursor c;
    auto take = [&](std::size_t lidx, std::size_t from) {
      const std::string& l = lines[lidx];
      for (std::size_t k = from; k < l.size(); ++k) {
        c.chars.push_back(l[k]);
        c.pos.push_back({lidx + 1, k + 1});
      }
      c.chars.push_back(' ');
      c.pos.push_back({lidx + 1, l.size() + 1});
      c.end_pos = {lidx + 1, l.size() + 1};
    };
    take(li, colon + 1);
    int balance = bracket_balance(std::string_view(line).substr(colon + 1));
    while (balance > 0 && li + 1 < lines.size()) {
      ++li;
      take(li, 0);
      balance += bracket_balance(lines[li]);
    }
    if (c.at_end()) fail({f.line, f.column}, "missing value for '" + f.key + "'");
    parse_value(c, f);
    file.fields.emplace(f.key, std::move(f));
  }
  return file;
}

InstanceFile read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance_text(ss.str());
}

ProblemInstance to_problem(const InstanceFile& file) {
  if (file.is_fixed_point())
    throw Error(ErrorCode::Parse, "this is a fixed-point file (has f_star)");
  const BaseSpace base = parse_base(need(file, "base"));
  const bool pair = file.has("L1") || file.has("L2");
  if (pair && file.has("L"))
    throw Error(ErrorCode::Parse, "give either L or the pair L1, L2, not both");
  const Field& Lf = pair ? need(file, "L1") : need(file, "L");
  if (pair) need(file, "L2");

  auto n = count_field(file, "n");
  auto m = count_field(file, "m");
  if (!n) {
    if (file.has("A_N")) n = rows_of(file.fields.at("A_N"));
    else if (!Lf.rows.empty()) n = rows_of(Lf);
    else if (file.has(pair ? "v1" : "v")) n = file.fields.at(pair ? "v1" : "v").list.size();
    else n = 0;
  }
  if (!m) {
    if (file.has("A_M")) m = rows_of(file.fields.at("A_M"));
    else m = cols_of(Lf);
  }

  const IntMatrix A_M = file.has("A_M") ? matrix_of(file.fields.at("A_M"), *m, *m)
                                        : IntMatrix::identity(*m);
  const IntMatrix A_N = file.has("A_N") ? matrix_of(file.fields.at("A_N"), *n, *n)
                                        : IntMatrix::identity(*n);
  if (!Lf.rows.empty()) {
    check_declared("n", n, rows_of(Lf));
    check_declared("m", m, cols_of(Lf));
  }
  if (pair) {
    const IntMatrix L1 = matrix_of(Lf, *n, *m);
    const IntMatrix L2 = matrix_of(file.fields.at("L2"), *n, *m);
    return make_instance_from_pair(base, A_M, A_N, L1, vector_or_zero(file, "v1", *n), L2,
                                   vector_or_zero(file, "v2", *n));
  }
  return make_instance(base, A_M, A_N, matrix_of(Lf, *n, *m), vector_or_zero(file, "v", *n));
}

FixedPointProblem to_fixed_point_problem(const InstanceFile& file) {
  if (file.has("base") && parse_base(file.fields.at("base")).kind() != BaseKind::Circle)
    throw Error(ErrorCode::Parse, "fixed-point files need base: circle");
  const Field& F = need(file, "f_star");
  auto n = count_field(file, "n");
  if (!n) n = rows_of(F);
  const IntMatrix f = matrix_of(F, *n, *n);
  const IntMatrix A = file.has("A") ? matrix_of(file.fields.at("A"), *n, *n)
                                    : IntMatrix::identity(*n);
  check_declared("n", n, f.rows());
  return make_fixed_point_problem(A, f, vector_or_zero(file, "v", *n));
}

std::string format_matrix(const IntMatrix& A) {
  std::string s = "[";
  for (std::size_t i = 0; i < A.rows(); ++i) {
    if (i) s += ",";
    s += to_string(A.row(i));
  }
  return s + "]";
}

std::string serialize(const ProblemInstance& inst) {
  std::string s;
  s += "base: " + inst.base.name() + "\n";
  s += "m: " + std::to_string(inst.m()) + "\n";
  s += "n: " + std::to_string(inst.n()) + "\n";
  s += "A_M: " + format_matrix(inst.A_M()) + "\n";
  s += "A_N: " + format_matrix(inst.A_N()) + "\n";
  s += "L: " + format_matrix(inst.L()) + "\n";
  s += "v: " + to_string(inst.v()) + "\n";
  return s;
}

std::string serialize(const FixedPointProblem& p) {
  std::string s;
  s += "base: circle\n";
  s += "n: " + std::to_string(p.bundle.fiber_dim) + "\n";
  s += "A: " + format_matrix(p.bundle.gluing) + "\n";
  s += "f_star: " + format_matrix(p.f_star) + "\n";
  s += "v: " + to_string(p.v) + "\n";
  return s;
}

}  // namespace tn::io
