#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "ncaudit/field.hpp"
#include "ncaudit/kernels.hpp"

namespace ncaudit {

/// Dense row-major matrix over GF(2^8).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  /// All rows must have the same length. `cols` is used when `rows` is empty.
  static Matrix from_rows(std::span<const SymbolVector> rows, std::size_t cols = 0);
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Symbol& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Symbol at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Symbol> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Symbol> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  SymbolVector row_vector(std::size_t r) const;

  std::span<Symbol> data() noexcept { return data_; }
  std::span<const Symbol> data() const noexcept { return data_; }

  Matrix transpose() const;
  Matrix operator*(const Matrix& rhs) const;
  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  SymbolVector data_;
};

struct Solved {
  Matrix x;
};

/// The coefficient matrix lacks full column rank. `null_vector` is a nonzero
/// x with A·x = 0.
struct RankDeficient {
  std::size_t rank = 0;
  SymbolVector null_vector;
};

/// Some equation (original row index `row`) cannot be satisfied.
struct Inconsistent {
  std::size_t row = 0;
};

using SolveResult = std::variant<Solved, RankDeficient, Inconsistent>;

/// Solves A·X = B. A is r×c, B is r×k; on success X is c×k.
/// Inconsistency is reported before rank deficiency.
SolveResult gaussian_solve(const Matrix& a, const Matrix& b,
                           kernels::Policy policy = kernels::Policy::automatic);

std::size_t rank(const Matrix& a);
std::size_t rank(std::span<const SymbolVector> rows, std::size_t cols);

/// Finds c with Σ_i c_i·rows[i] = target, if one exists. Rows may be dependent.
std::optional<SymbolVector> express(std::span<const SymbolVector> rows, std::span<const Symbol> target);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& a);

}  // namespace ncaudit
