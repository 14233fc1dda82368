#include "crn/matrix.hpp"

#include <stdexcept>

namespace crn {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::diagonal(const std::vector<Rat>& d) {
  Mat m(int(d.size()), int(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m(int(i), int(i)) = d[i];
  return m;
}

Mat Mat::operator*(const Mat& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("Mat::*: shape mismatch");
  Mat out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rat& v = (*this)(i, k);
      if (v == 0) continue;
      for (int j = 0; j < rhs.cols_; ++j) out(i, j) += v * rhs(k, j);
    }
  return out;
}

Mat Mat::operator-(const Mat& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("Mat::-: shape mismatch");
  Mat out(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - rhs.a_[i];
  return out;
}

bool Mat::operator==(const Mat& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_;
}

std::vector<Rat> Mat::apply(const std::vector<Rat>& x) const {
  if (int(x.size()) != cols_) throw std::invalid_argument("Mat::apply: size");
  std::vector<Rat> y(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if ((*this)(i, j) != 0) y[i] += (*this)(i, j) * x[j];
  return y;
}

bool Mat::is_zero() const {
  for (const Rat& v : a_)
    if (v != 0) return false;
  return true;
}

Rat Mat::max_abs() const {
  Rat m = 0;
  for (const Rat& v : a_)
    if (cmp(abs(v), m) > 0) m = abs(v);
  return m;
}

int Mat::rank() const {
  if (rows_ == 0 || cols_ == 0) return 0;

  // Clear denominators row by row (row scaling preserves rank).
  std::vector<std::vector<Int>> w(rows_, std::vector<Int>(cols_));
  for (int i = 0; i < rows_; ++i) {
    Int l = 1;
    for (int j = 0; j < cols_; ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), (*this)(i, j).get_den().get_mpz_t());
    for (int j = 0; j < cols_; ++j) {
      const Rat& v = (*this)(i, j);
      w[i][j] = v.get_num() * (l / v.get_den());
    }
  }

  int r = 0;
  Int prev = 1;
  while (r < rows_ && r < cols_) {
    // Any nonzero entry of the trailing submatrix can be the pivot.
    int pi = -1, pj = -1;
    for (int i = r; i < rows_ && pi < 0; ++i)
      for (int j = r; j < cols_; ++j)
        if (w[i][j] != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    std::swap(w[r], w[pi]);
    if (pj != r)
      for (int i = 0; i < rows_; ++i) std::swap(w[i][r], w[i][pj]);

    // Bareiss step: every 2x2 minor against the pivot, divided by the
    // previous pivot. Division is exact by construction.
    for (int i = r + 1; i < rows_; ++i) {
      for (int j = r + 1; j < cols_; ++j) {
        Int t = w[r][r] * w[i][j] - w[i][r] * w[r][j];
        mpz_divexact(w[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      w[i][r] = 0;
    }
    prev = w[r][r];
    ++r;
  }
  return r;
}

}  // namespace crn
