#pragma once

#include <vector>

#include "crn/rational.hpp"

namespace crn {

// Dense matrix of exact rationals. Sized for reaction-network work
// (tens of rows/columns), so storage is a flat row-major vector and all
// operations are straightforward O(n^3) exact arithmetic.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  static Mat identity(int n);
  static Mat diagonal(const std::vector<Rat>& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Rat& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  Mat operator*(const Mat& rhs) const;
  Mat operator-(const Mat& rhs) const;
  bool operator==(const Mat& rhs) const;

  std::vector<Rat> apply(const std::vector<Rat>& x) const;  // this * x

  bool is_zero() const;
  Rat max_abs() const;

  // Exact rank by fraction-free (Bareiss) elimination. Rows are first
  // scaled to integers; the elimination then stays in Int with exact
  // divisions, which keeps intermediate entries from exploding the way
  // naive rational pivoting can.
  int rank() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

}  // namespace crn
