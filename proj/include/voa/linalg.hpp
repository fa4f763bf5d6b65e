#ifndef VOA_LINALG_HPP
#define VOA_LINALG_HPP

// Dense exact linear algebra over a field (Rational or LevelScalar).
// Reduced row echelon forms are unique, so every routine here is
// deterministic regardless of which nonzero pivot is picked.

#include <cstddef>
#include <optional>
#include <vector>

namespace voa {

template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void append_row(const std::vector<T>& row) {
    if (rows_ == 0 && data_.empty()) cols_ = row.size();
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

namespace detail {

template <class T>
bool cheap_pivot(const T& x) {
  if constexpr (requires { x.is_constant(); }) {
    return x.is_constant();
  } else {
    return true;
  }
}

}  // namespace detail

/// In-place Gauss-Jordan elimination to reduced row echelon form over the
/// first `active_cols` columns (all columns by default). Returns the pivot
/// column of each nonzero row.
template <class T>
std::vector<std::size_t> reduce_rows(DenseMatrix<T>& m, std::size_t active_cols = static_cast<std::size_t>(-1)) {
  if (active_cols > m.cols()) active_cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < active_cols && row < m.rows(); ++col) {
    std::optional<std::size_t> best;
    for (std::size_t r = row; r < m.rows(); ++r) {
      if (m(r, col).is_zero()) continue;
      if (!best) best = r;
      if (detail::cheap_pivot(m(r, col))) {
        best = r;
        break;
      }
    }
    if (!best) continue;
    if (*best != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(row, c), m(*best, c));
    }
    const T inv = T(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) {
      if (!m(row, c).is_zero()) m(row, c) *= inv;
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const T f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class T>
std::size_t rank(DenseMatrix<T> m) {
  return reduce_rows(m).size();
}

/// Basis of the null space {v : m v = 0}; one vector per free column, with
/// a 1 in that column.
template <class T>
std::vector<std::vector<T>> kernel(DenseMatrix<T> m) {
  const auto pivots = reduce_rows(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols());
    v[free] = T(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves m x = rhs; free variables are set to zero. nullopt if inconsistent.
template <class T>
std::optional<std::vector<T>> solve(const DenseMatrix<T>& m, const std::vector<T>& rhs) {
  DenseMatrix<T> aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = rhs[r];
  }
  const auto pivots = reduce_rows(aug, m.cols());
  for (std::size_t r = pivots.size(); r < aug.rows(); ++r) {
    if (!aug(r, m.cols()).is_zero()) return std::nullopt;
  }
  std::vector<T> x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
  return x;
}

/// Row-reduces a list of row vectors and returns the nonzero rows of the
/// reduced echelon form.
template <class T>
std::vector<std::vector<T>> echelon_basis(const std::vector<std::vector<T>>& rows, std::size_t cols) {
  DenseMatrix<T> m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  const auto pivots = reduce_rows(m);
  std::vector<std::vector<T>> out;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    std::vector<T> v(cols);
    for (std::size_t c = 0; c < cols; ++c) v[c] = m(r, c);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace voa

#endif  // VOA_LINALG_HPP
