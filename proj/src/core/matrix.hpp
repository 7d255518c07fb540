#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <optional>
#include <vector>

#include "scalar.hpp"

namespace dwb {

/// Dense row-major matrix over an exact or numeric field.
template <class K>
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<K> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, K(0)) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = K(1);
    return m;
  }
  static Mat zero(int r, int c) { return Mat(r, c); }

  K& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const K& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  bool is_zero() const {
    for (const auto& x : a)
      if (!FieldOps<K>::is_zero(x)) return false;
    return true;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& x : a) m = std::max(m, FieldOps<K>::abs_approx(x));
    return m;
  }

  Mat transpose() const {
    Mat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix product shape mismatch");
    Mat z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
      for (int k = 0; k < x.cols; ++k) {
        const K& xv = x(i, k);
        if (FieldOps<K>::is_zero(xv)) continue;
        for (int j = 0; j < y.cols; ++j) z(i, j) += xv * y(k, j);
      }
    return z;
  }

  friend Mat operator+(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols)
      throw std::invalid_argument("matrix sum shape mismatch");
    Mat z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
    return z;
  }

  friend Mat operator-(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols)
      throw std::invalid_argument("matrix difference shape mismatch");
    Mat z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
    return z;
  }

  friend Mat operator*(const K& s, Mat m) {
    for (auto& x : m.a) x *= s;
    return m;
  }

  std::vector<K> apply(const std::vector<K>& v) const {
    if (static_cast<int>(v.size()) != cols)
      throw std::invalid_argument("matrix apply shape mismatch");
    std::vector<K> w(rows, K(0));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) w[i] += (*this)(i, j) * v[j];
    return w;
  }
};

using MatQ = Mat<GaussRat>;
using MatC = Mat<std::complex<double>>;

namespace detail {

// Row-reduce in place; returns pivot column indices.
// For numeric scalars, pivots below eps * (initial max entry) are treated as zero.
template <class K>
std::vector<int> row_reduce(Mat<K>& m) {
  std::vector<int> pivots;
  const double floor_mag =
      FieldOps<K>::exact ? 0.0 : Tolerance::get() * std::max(m.max_abs(), 1.0);
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int best = -1;
    double best_mag = floor_mag;
    for (int i = r; i < m.rows; ++i) {
      double mag = FieldOps<K>::abs_approx(m(i, c));
      if (mag > best_mag || (FieldOps<K>::exact && best < 0 && !FieldOps<K>::is_zero(m(i, c)))) {
        best = i;
        best_mag = mag;
      }
    }
    if (best < 0) continue;
    if (best != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m(r, j), m(best, j));
    K inv = K(1) / m(r, c);
    for (int j = 0; j < m.cols; ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || FieldOps<K>::is_zero(m(i, c))) continue;
      K f = m(i, c);
      for (int j = 0; j < m.cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

template <class K>
int rank(Mat<K> m) {
  return static_cast<int>(detail::row_reduce(m).size());
}

/// Numeric rank with the global singular-value cutoff policy.
inline int rank_svd(const MatC& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  Eigen::MatrixXcd e(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) e(i, j) = m(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  double cut = Tolerance::get() * sv(0);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return r;
}

/// Basis of ker(m) as columns of the returned matrix.
template <class K>
Mat<K> kernel(const Mat<K>& m) {
  Mat<K> red = m;
  std::vector<int> pivots = detail::row_reduce(red);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  int free_count = m.cols - static_cast<int>(pivots.size());
  Mat<K> ker(m.cols, free_count);
  int col = 0;
  for (int c = 0; c < m.cols; ++c) {
    if (is_pivot[c]) continue;
    ker(c, col) = K(1);
    for (size_t p = 0; p < pivots.size(); ++p) ker(pivots[p], col) = -red(static_cast<int>(p), c);
    ++col;
  }
  return ker;
}

/// Basis of the column space: the subset of columns of m holding the pivots.
template <class K>
Mat<K> column_space(const Mat<K>& m) {
  Mat<K> red = m;
  std::vector<int> pivots = detail::row_reduce(red);
  Mat<K> img(m.rows, static_cast<int>(pivots.size()));
  for (size_t j = 0; j < pivots.size(); ++j)
    for (int i = 0; i < m.rows; ++i) img(i, static_cast<int>(j)) = m(i, pivots[j]);
  return img;
}

/// Horizontal concatenation [x | y].
template <class K>
Mat<K> hcat(const Mat<K>& x, const Mat<K>& y) {
  if (x.rows != y.rows) throw std::invalid_argument("hcat row mismatch");
  Mat<K> z(x.rows, x.cols + y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int j = 0; j < x.cols; ++j) z(i, j) = x(i, j);
    for (int j = 0; j < y.cols; ++j) z(i, x.cols + j) = y(i, j);
  }
  return z;
}

/// Solve A x = b; nullopt if inconsistent.
template <class K>
std::optional<std::vector<K>> solve(const Mat<K>& A, const std::vector<K>& b) {
  if (static_cast<int>(b.size()) != A.rows) throw std::invalid_argument("solve shape mismatch");
  Mat<K> aug(A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) aug(i, j) = A(i, j);
    aug(i, A.cols) = b[i];
  }
  std::vector<int> pivots = detail::row_reduce(aug);
  for (int c : pivots)
    if (c == A.cols) return std::nullopt;  // pivot in augmented column
  std::vector<K> x(A.cols, K(0));
  for (size_t p = 0; p < pivots.size(); ++p) x[pivots[p]] = aug(static_cast<int>(p), A.cols);
  return x;
}

/// Does span(cols of sub) lie inside span(cols of space)?
template <class K>
bool span_contains(const Mat<K>& space, const Mat<K>& sub) {
  if (sub.cols == 0) return true;
  return rank(hcat(space, sub)) == rank(space);
}

template <class K>
bool span_equal(const Mat<K>& x, const Mat<K>& y) {
  int rx = rank(x), ry = rank(y);
  return rx == ry && rank(hcat(x, y)) == rx;
}

}  // namespace dwb
