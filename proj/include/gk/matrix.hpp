#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gk {

// Dense integer matrix, row-major. Dimensions may be zero (maps in and out
// of zero objects are empty matrices). All arithmetic is exact.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> data);

  static IntMatrix identity(std::size_t n);
  static IntMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  std::int64_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<std::int64_t>& data() const { return data_; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  IntMatrix operator-() const;
  void add_scaled(const IntMatrix& rhs, std::int64_t scale);

  bool operator==(const IntMatrix&) const = default;

  bool is_identity() const;
  bool is_zero() const;

  // Exact inverse over the integers: exists iff the matrix is square with
  // determinant +-1. Integer row reduction via extended-gcd combinations.
  std::optional<IntMatrix> inverse() const;
  bool is_unimodular() const { return is_square() && inverse().has_value(); }

  std::string to_string() const;  // e.g. [[1,0],[0,1]]

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

}  // namespace gk
