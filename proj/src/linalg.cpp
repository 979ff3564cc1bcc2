#include "ncaudit/linalg.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace ncaudit {
namespace {

// Gauss-Jordan state over the augmented matrix [A | B].
struct Reduction {
  Matrix aug;
  std::size_t a_cols = 0;
  std::vector<std::size_t> pivot_cols;  // pivot column of row i, i < rank
  std::vector<std::size_t> origin;      // original row index of each current row

  std::size_t rank() const noexcept { return pivot_cols.size(); }
};

Reduction reduce(const Matrix& a, const Matrix& b, kernels::Policy policy) {
  if (a.rows() != b.rows()) throw std::invalid_argument("gaussian_solve: row count mismatch");
  Reduction red;
  red.a_cols = a.cols();
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols() + b.cols();
  red.aug = Matrix(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto dst = red.aug.row(r);
    std::copy(a.row(r).begin(), a.row(r).end(), dst.begin());
    std::copy(b.row(r).begin(), b.row(r).end(), dst.begin() + static_cast<std::ptrdiff_t>(a.cols()));
  }
  red.origin.resize(rows);
  std::iota(red.origin.begin(), red.origin.end(), std::size_t{0});

  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < a.cols() && pivot_row < rows; ++c) {
    std::size_t sel = pivot_row;
    while (sel < rows && red.aug.at(sel, c) == 0) ++sel;
    if (sel == rows) continue;
    if (sel != pivot_row) {
      auto x = red.aug.row(sel);
      auto y = red.aug.row(pivot_row);
      std::swap_ranges(x.begin(), x.end(), y.begin());
      std::swap(red.origin[sel], red.origin[pivot_row]);
    }
    const Symbol* norm = gf::mul_row(gf::inv(red.aug.at(pivot_row, c)));
    for (auto& s : red.aug.row(pivot_row)) s = norm[s];
    kernels::eliminate(red.aug.data(), rows, cols, pivot_row, c, policy);
    red.pivot_cols.push_back(c);
    ++pivot_row;
  }
  return red;
}

std::optional<std::size_t> first_inconsistent(const Reduction& red) {
  for (std::size_t r = red.rank(); r < red.aug.rows(); ++r) {
    const auto row = red.aug.row(r);
    for (std::size_t c = red.a_cols; c < red.aug.cols(); ++c) {
      if (row[c] != 0) return red.origin[r];
    }
  }
  return std::nullopt;
}

// Particular solution with every free variable set to zero.
Matrix particular_solution(const Reduction& red) {
  const std::size_t k = red.aug.cols() - red.a_cols;
  Matrix x(red.a_cols, k);
  for (std::size_t i = 0; i < red.rank(); ++i) {
    const auto row = red.aug.row(i);
    for (std::size_t j = 0; j < k; ++j) x.at(red.pivot_cols[i], j) = row[red.a_cols + j];
  }
  return x;
}

}  // namespace

Matrix Matrix::from_rows(std::span<const SymbolVector> rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("Matrix::from_rows: ragged rows");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

SymbolVector Matrix::row_vector(std::size_t r) const {
  const auto s = row(r);
  return {s.begin(), s.end()};
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  }
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("Matrix::operator*: dimension mismatch");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    auto dst = out.row(r);
    for (std::size_t k = 0; k < cols_; ++k) {
      const Symbol a = at(r, k);
      if (a == 0) continue;
      const Symbol* tbl = gf::mul_row(a);
      const auto src = rhs.row(k);
      for (std::size_t c = 0; c < rhs.cols_; ++c) dst[c] ^= tbl[src[c]];
    }
  }
  return out;
}

SolveResult gaussian_solve(const Matrix& a, const Matrix& b, kernels::Policy policy) {
  const Reduction red = reduce(a, b, policy);
  if (auto bad = first_inconsistent(red)) return Inconsistent{*bad};
  if (red.rank() < a.cols()) {
    // First non-pivot column is free; set it to 1 and back-substitute.
    std::size_t free_col = 0;
    for (std::size_t i = 0; i < red.rank() && red.pivot_cols[i] == free_col; ++i) ++free_col;
    SymbolVector null_vector(a.cols(), 0);
    null_vector[free_col] = 1;
    for (std::size_t i = 0; i < red.rank(); ++i) null_vector[red.pivot_cols[i]] = red.aug.at(i, free_col);
    return RankDeficient{red.rank(), std::move(null_vector)};
  }
  return Solved{particular_solution(red)};
}

std::size_t rank(const Matrix& a) { return reduce(a, Matrix(a.rows(), 0), kernels::Policy::automatic).rank(); }

std::size_t rank(std::span<const SymbolVector> rows, std::size_t cols) {
  return rank(Matrix::from_rows(rows, cols));
}

std::optional<SymbolVector> express(std::span<const SymbolVector> rows, std::span<const Symbol> target) {
  Matrix at = Matrix::from_rows(rows, target.size()).transpose();
  if (rows.empty()) at = Matrix(target.size(), 0);
  Matrix rhs(target.size(), 1);
  for (std::size_t i = 0; i < target.size(); ++i) rhs.at(i, 0) = target[i];
  const Reduction red = reduce(at, rhs, kernels::Policy::automatic);
  if (first_inconsistent(red)) return std::nullopt;
  const Matrix x = particular_solution(red);
  SymbolVector c(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) c[i] = x.at(i, 0);
  return c;
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: matrix not square");
  auto result = gaussian_solve(a, Matrix::identity(a.rows()));
  if (auto* s = std::get_if<Solved>(&result)) return std::move(s->x);
  return std::nullopt;
}

}  // namespace ncaudit
