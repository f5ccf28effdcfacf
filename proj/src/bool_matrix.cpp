#include "orbitrep/bool_matrix.hpp"

#include <algorithm>
#include <stdexcept>

#include "orbitrep/errors.hpp"

namespace orbitrep {

BoolMatrix BoolMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BoolMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ParseError("matrix rows have different lengths");
    for (std::size_t c = 0; c < cols; ++c) {
      const int v = rows[r][c];
      if (v != 0 && v != 1) throw ParseError("matrix entries must be 0 or 1");
      m.set(r, c, v == 1);
    }
  }
  return m;
}

BoolMatrix BoolMatrix::identity(std::size_t n) {
  BoolMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BoolMatrix BoolMatrix::transpose() const {
  BoolMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, (*this)(r, c));
  return t;
}

bool BoolMatrix::all_positive() const {
  return std::all_of(data_.begin(), data_.end(), [](std::uint8_t v) { return v != 0; });
}

bool BoolMatrix::is_zero() const {
  return std::none_of(data_.begin(), data_.end(), [](std::uint8_t v) { return v != 0; });
}

bool BoolMatrix::is_permutation() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (row_count(i) != 1 || col_count(i) != 1) return false;
  }
  return true;
}

std::size_t BoolMatrix::row_count(std::size_t r) const {
  std::size_t n = 0;
  for (std::size_t c = 0; c < cols_; ++c) n += (*this)(r, c) ? 1 : 0;
  return n;
}

std::size_t BoolMatrix::col_count(std::size_t c) const {
  std::size_t n = 0;
  for (std::size_t r = 0; r < rows_; ++r) n += (*this)(r, c) ? 1 : 0;
  return n;
}

std::vector<int> BoolMatrix::row(std::size_t r) const {
  std::vector<int> out(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out[c] = (*this)(r, c) ? 1 : 0;
  return out;
}

std::vector<int> BoolMatrix::col(std::size_t c) const {
  std::vector<int> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c) ? 1 : 0;
  return out;
}

std::vector<std::vector<int>> BoolMatrix::to_rows() const {
  std::vector<std::vector<int>> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

std::string BoolMatrix::str() const {
  std::string out;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) out += ' ';
      out += (*this)(r, c) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

BoolMatrix operator*(const BoolMatrix& a, const BoolMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimensions do not agree");
  BoolMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (!a(i, k)) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (b(k, j)) out.set(i, j);
    }
  return out;
}

}  // namespace orbitrep
