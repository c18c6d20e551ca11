#include "torusnielsen/integer.hpp"

#include <cctype>

#include "torusnielsen/errors.hpp"

namespace tn {

std::optional<Int> parse_int(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) return std::nullopt;
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) return std::nullopt;
  }
  Int value(std::string(text.substr(i)), 10);
  return negative ? Int(-value) : value;
}

std::string to_string(const IntVector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].get_str();
  }
  return out + "]";
}

IntVector operator+(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimMismatch, "vector sum");
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVector operator-(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::DimMismatch, "vector difference");
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntVector operator*(const Int& s, const IntVector& a) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::BadGluing: return "BadGluing";
    case ErrorCode::IntertwineViolated: return "IntertwineViolated";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InfiniteGroup: return "InfiniteGroup";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::IncompleteStats: return "IncompleteStats";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace tn
