#pragma once

// Data-parallel GF(2^8) kernels. Each kernel has a serial reference in
// kernels::serial and an OpenMP variant in kernels::parallel; the top-level
// entry points dispatch on a Policy and do the multiplication accounting.

#include <cstddef>
#include <span>

#include "ncaudit/field.hpp"

namespace ncaudit::kernels {

enum class Policy { serial, parallel, automatic };

/// Work (in symbol multiplications) below which `automatic` stays serial.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 18;

bool parallel_available() noexcept;
int max_threads() noexcept;

namespace serial {
/// out = Σ_i coeffs[i]·rows[i]. Every row must have out.size() symbols.
void combine(std::span<Symbol> out, std::span<const std::span<const Symbol>> rows,
             std::span<const Symbol> coeffs) noexcept;
Symbol dot(std::span<const Symbol> u, std::span<const Symbol> v) noexcept;
/// For every row r != pivot_row of a row-major matrix with `cols` columns:
/// row_r += factor_r·row_pivot, where factor_r = matrix[r][pivot_col].
/// Only columns >= pivot_col are touched.
void eliminate(std::span<Symbol> matrix, std::size_t rows, std::size_t cols, std::size_t pivot_row,
               std::size_t pivot_col) noexcept;
}  // namespace serial

namespace parallel {
void combine(std::span<Symbol> out, std::span<const std::span<const Symbol>> rows,
             std::span<const Symbol> coeffs) noexcept;
Symbol dot(std::span<const Symbol> u, std::span<const Symbol> v) noexcept;
void eliminate(std::span<Symbol> matrix, std::size_t rows, std::size_t cols, std::size_t pivot_row,
               std::size_t pivot_col) noexcept;
}  // namespace parallel

/// Counts rows.size()·out.size() multiplications.
void combine(std::span<Symbol> out, std::span<const std::span<const Symbol>> rows,
             std::span<const Symbol> coeffs, Policy policy = Policy::automatic);

Symbol dot(std::span<const Symbol> u, std::span<const Symbol> v, Policy policy = Policy::automatic);

/// Not counted: elimination is bookkeeping, not part of any protocol cost formula.
void eliminate(std::span<Symbol> matrix, std::size_t rows, std::size_t cols, std::size_t pivot_row,
               std::size_t pivot_col, Policy policy = Policy::automatic);

}  // namespace ncaudit::kernels
