#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "torusnielsen/integer.hpp"

namespace tn {

/// Dense row-major matrix of unbounded integers. Zero rows or columns are
/// allowed; an n x 0 matrix still knows its row count.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  /// Builds from a list of rows; all rows must have equal length.
  static IntMatrix from_rows(const std::vector<IntVector>& rows,
                             std::size_t cols_if_empty = 0);
  static IntMatrix from_rows(
      std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix from_columns(std::size_t rows,
                                const std::vector<IntVector>& cols);
  static IntMatrix identity(std::size_t n);
  static IntMatrix zero(std::size_t rows, std::size_t cols) {
    return IntMatrix(rows, cols);
  }
  static IntMatrix diagonal(const IntVector& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  void set_column(std::size_t c, const IntVector& v);
  IntMatrix columns(std::size_t first, std::size_t count) const;
  IntMatrix append_columns(const IntMatrix& other) const;

  IntMatrix transpose() const;
  bool is_zero() const;
  bool is_identity() const;

  // Elementary column operations, used by the normal form routines.
  void swap_columns(std::size_t a, std::size_t b);
  void negate_column(std::size_t c);
  /// col[dst] += factor * col[src]
  void add_column_multiple(std::size_t dst, std::size_t src, const Int& factor);

  void swap_rows(std::size_t a, std::size_t b);
  void negate_row(std::size_t r);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& factor);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, const IntVector& x);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const Int& s, const IntMatrix& a);

/// Block diagonal sum diag(a, b).
IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b);

}  // namespace tn
