#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "field.hpp"

namespace glinv {

struct SingularSpan : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

template <class F>
class SparseMatrix {
 public:
  using Entries = std::map<std::pair<int, int>, F>;

  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix size");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }
  const Entries& entries() const { return entries_; }

  void set(int r, int c, F v) {
    check(r, c);
    if (is_zero(v))
      entries_.erase({r, c});
    else
      entries_[{r, c}] = std::move(v);
  }

  void add(int r, int c, const F& v) {
    if (is_zero(v)) return;
    check(r, c);
    auto [it, fresh] = entries_.try_emplace({r, c}, v);
    if (!fresh) {
      it->second += v;
      if (is_zero(it->second)) entries_.erase(it);
    }
  }

  F get(int r, int c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? F(0) : it->second;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows_);
    for (const auto& [rc, v] : entries_) t.entries_.emplace(std::make_pair(rc.second, rc.first), v);
    return t;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  void check(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix index");
  }

  int rows_ = 0, cols_ = 0;
  Entries entries_;
};

using ExactMatrix = SparseMatrix<Rational>;

template <class F>
SparseMatrix<F> multiply(const SparseMatrix<F>& a, const SparseMatrix<F>& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product");
  std::vector<std::vector<std::pair<int, F>>> brows(b.rows());
  for (const auto& [rc, v] : b.entries()) brows[rc.first].push_back({rc.second, v});
  SparseMatrix<F> c(a.rows(), b.cols());
  for (const auto& [rc, v] : a.entries())
    for (const auto& [j, w] : brows[rc.second]) c.add(rc.first, j, v * w);
  return c;
}

template <class F>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, F(0)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  F& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const F& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  static DenseMatrix identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  static DenseMatrix from_sparse(const SparseMatrix<F>& s) {
    DenseMatrix m(s.rows(), s.cols());
    for (const auto& [rc, v] : s.entries()) m(rc.first, rc.second) = v;
    return m;
  }

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<F> a_;
};

// In-place reduced row echelon form; returns pivot columns.
template <class F>
std::vector<int> rref(DenseMatrix<F>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = r;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    F inv = F(1) / m(r, c);
    for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      F f = m(i, c);
      for (int j = c; j < m.cols(); ++j)
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
int dense_rank(DenseMatrix<F> m) {
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = r;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    F inv = F(1) / m(r, c);
    for (int i = r + 1; i < m.rows(); ++i) {
      if (is_zero(m(i, c))) continue;
      F f = m(i, c) * inv;
      for (int j = c; j < m.cols(); ++j)
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

// Basis of {x : m x = 0}, one vector per free column.
template <class F>
std::vector<std::vector<F>> dense_kernel(DenseMatrix<F> m) {
  std::vector<int> piv = rref(m);
  std::vector<char> isPivot(m.cols(), 0);
  for (int c : piv) isPivot[c] = 1;
  std::vector<std::vector<F>> out;
  for (int f = 0; f < m.cols(); ++f) {
    if (isPivot[f]) continue;
    std::vector<F> v(m.cols(), F(0));
    v[f] = F(1);
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(static_cast<int>(i), f);
    out.push_back(std::move(v));
  }
  return out;
}

template <class F>
std::vector<std::vector<F>> kernel_basis(const SparseMatrix<F>& m) {
  return dense_kernel(DenseMatrix<F>::from_sparse(m));
}

template <class F>
DenseMatrix<F> inverse(const DenseMatrix<F>& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square matrix");
  int n = m.rows();
  DenseMatrix<F> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = F(1);
  }
  std::vector<int> piv = rref(aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw SingularSpan("matrix is singular");
  DenseMatrix<F> inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

// Given functionals c_1..c_n (rows, in coordinates), returns X with
// column j holding the vector x_j satisfying c_i(x_j) = delta_ij.
template <class F>
DenseMatrix<F> solve_dual_basis(const std::vector<std::vector<F>>& functionals) {
  int n = static_cast<int>(functionals.size());
  DenseMatrix<F> c(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(functionals[i].size()) != n) throw SingularSpan("functionals do not form a square system");
    for (int j = 0; j < n; ++j) c(i, j) = functionals[i][j];
  }
  return inverse(c);
}

// Rows of m selected greedily to be independent; returns their indices.
template <class F>
std::vector<int> independent_rows(const DenseMatrix<F>& m) {
  int n = m.cols();
  std::vector<std::vector<F>> basis;  // echelon rows
  std::vector<int> lead, chosen;
  for (int i = 0; i < m.rows(); ++i) {
    std::vector<F> v(n);
    for (int j = 0; j < n; ++j) v[j] = m(i, j);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (is_zero(v[lead[b]])) continue;
      F f = v[lead[b]];
      for (int j = 0; j < n; ++j)
        if (!is_zero(basis[b][j])) v[j] -= f * basis[b][j];
    }
    int l = 0;
    while (l < n && is_zero(v[l])) ++l;
    if (l == n) continue;
    F inv = F(1) / v[l];
    for (int j = 0; j < n; ++j) v[j] *= inv;
    basis.push_back(std::move(v));
    lead.push_back(l);
    chosen.push_back(i);
    if (static_cast<int>(chosen.size()) == n) break;
  }
  return chosen;
}

}  // namespace glinv
