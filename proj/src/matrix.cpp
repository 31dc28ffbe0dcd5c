#include "gk/matrix.hpp"

#include <cstdlib>
#include <utility>

#include "gk/error.hpp"
#include "gk/kernels.hpp"

namespace gk {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw Error("matrix data size does not match " + std::to_string(rows_) + "x" +
                std::to_string(cols_));
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) {
    throw TypeError("matrix product shape mismatch: " + std::to_string(rows_) + "x" +
                    std::to_string(cols_) + " * " + std::to_string(rhs.rows_) + "x" +
                    std::to_string(rhs.cols_));
  }
  IntMatrix out(rows_, rhs.cols_);
  if (rows_ && cols_ && rhs.cols_) {
    kernels::active().matmul(data_.data(), rhs.data_.data(), out.data_.data(), rows_,
                             cols_, rhs.cols_);
  }
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
  IntMatrix out = *this;
  out.add_scaled(rhs, 1);
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
  IntMatrix out = *this;
  out.add_scaled(rhs, -1);
  return out;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix out(rows_, cols_);
  out.add_scaled(*this, -1);
  return out;
}

void IntMatrix::add_scaled(const IntMatrix& rhs, std::int64_t scale) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw TypeError("matrix sum shape mismatch: " + std::to_string(rows_) + "x" +
                    std::to_string(cols_) + " vs " + std::to_string(rhs.rows_) + "x" +
                    std::to_string(rhs.cols_));
  }
  if (!data_.empty()) {
    kernels::active().axpy(data_.data(), rhs.data_.data(), scale, data_.size());
  }
}

bool IntMatrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool IntMatrix::is_zero() const {
  for (std::int64_t v : data_)
    if (v != 0) return false;
  return true;
}

std::optional<IntMatrix> IntMatrix::inverse() const {
  if (!is_square()) return std::nullopt;
  const std::size_t n = rows_;
  IntMatrix a = *this;
  IntMatrix inv = identity(n);

  auto row_combine = [&](std::size_t r1, std::size_t r2, std::int64_t p, std::int64_t q,
                         std::int64_t x, std::int64_t y) {
    // (row r1, row r2) <- (p*r1 + q*r2, -y*r1 + x*r2); det of the 2x2 op is
    // p*x + q*y == 1 when (p,q) are Bezout coefficients for (a, b) with
    // x = a/g, y = b/g.
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t a1 = a.at(r1, j), a2 = a.at(r2, j);
      a.at(r1, j) = p * a1 + q * a2;
      a.at(r2, j) = -y * a1 + x * a2;
      std::int64_t b1 = inv.at(r1, j), b2 = inv.at(r2, j);
      inv.at(r1, j) = p * b1 + q * b2;
      inv.at(r2, j) = -y * b1 + x * b2;
    }
  };

  auto ext_gcd = [](std::int64_t a0, std::int64_t b0, std::int64_t& p, std::int64_t& q) {
    std::int64_t old_r = a0, r = b0, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      std::int64_t quot = old_r / r;
      std::int64_t tmp = old_r - quot * r; old_r = r; r = tmp;
      tmp = old_s - quot * s; old_s = s; s = tmp;
      tmp = old_t - quot * t; old_t = t; t = tmp;
    }
    p = old_s; q = old_t;
    return old_r;
  };

  for (std::size_t col = 0; col < n; ++col) {
    // clear below-pivot entries by gcd combination
    std::size_t pivot = col;
    while (pivot < n && a.at(pivot, col) == 0) ++pivot;
    if (pivot == n) return std::nullopt;  // singular
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a.at(col, j), a.at(pivot, j));
        std::swap(inv.at(col, j), inv.at(pivot, j));
      }
      for (std::size_t j = 0; j < n; ++j) a.at(pivot, j) = -a.at(pivot, j);
      for (std::size_t j = 0; j < n; ++j) inv.at(pivot, j) = -inv.at(pivot, j);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a.at(r, col) == 0) continue;
      std::int64_t p, q;
      std::int64_t g = ext_gcd(a.at(col, col), a.at(r, col), p, q);
      row_combine(col, r, p, q, a.at(col, col) / g, a.at(r, col) / g);
    }
    std::int64_t d = a.at(col, col);
    if (d != 1 && d != -1) return std::nullopt;  // |det| != 1
    if (d == -1) {
      for (std::size_t j = 0; j < n; ++j) {
        a.at(col, j) = -a.at(col, j);
        inv.at(col, j) = -inv.at(col, j);
      }
    }
    for (std::size_t r = 0; r < col; ++r) {
      std::int64_t factor = a.at(r, col);
      if (factor == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a.at(r, j) -= factor * a.at(col, j);
        inv.at(r, j) -= factor * inv.at(col, j);
      }
    }
  }
  return inv;
}

std::string IntMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out += ",";
    out += "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out += ",";
      out += std::to_string(at(i, j));
    }
    out += "]";
  }
  out += "]";
  return out;
}

}  // namespace gk
