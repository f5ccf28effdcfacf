#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace orbitrep {

/// Dense 0/1 matrix with boolean (or/and) arithmetic.
class BoolMatrix {
 public:
  BoolMatrix() = default;
  BoolMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  /// Throws ParseError on ragged input or entries other than 0 and 1.
  static BoolMatrix from_rows(const std::vector<std::vector<int>>& rows);
  static BoolMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  bool operator()(std::size_t r, std::size_t c) const { return data_.at(r * cols_ + c) != 0; }
  void set(std::size_t r, std::size_t c, bool value = true) { data_.at(r * cols_ + c) = value ? 1 : 0; }

  BoolMatrix transpose() const;
  bool all_positive() const;
  bool is_zero() const;
  bool is_permutation() const;
  std::size_t row_count(std::size_t r) const;
  std::size_t col_count(std::size_t c) const;
  std::vector<int> row(std::size_t r) const;
  std::vector<int> col(std::size_t c) const;
  std::vector<std::vector<int>> to_rows() const;

  /// Rows joined by newlines, entries separated by spaces.
  std::string str() const;

  friend BoolMatrix operator*(const BoolMatrix& a, const BoolMatrix& b);
  friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> data_;
};

}  // namespace orbitrep
