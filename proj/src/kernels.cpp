#include "ncaudit/kernels.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef NCAUDIT_HAVE_OPENMP
#include <omp.h>
#endif

namespace ncaudit::kernels {
namespace {

constexpr std::size_t kChunk = 2048;

bool use_parallel(Policy policy, std::size_t work) noexcept {
  switch (policy) {
    case Policy::serial:
      return false;
    case Policy::parallel:
      return parallel_available();
    case Policy::automatic:
      return parallel_available() && max_threads() > 1 && work >= kParallelThreshold;
  }
  return false;
}

void combine_range(std::span<Symbol> out, std::span<const std::span<const Symbol>> rows,
                   std::span<const Symbol> coeffs, std::size_t begin, std::size_t end) noexcept {
  std::fill(out.begin() + begin, out.begin() + end, Symbol{0});
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (coeffs[r] == 0) continue;
    const Symbol* tbl = gf::mul_row(coeffs[r]);
    const Symbol* src = rows[r].data();
    Symbol* dst = out.data();
    for (std::size_t i = begin; i < end; ++i) dst[i] ^= tbl[src[i]];
  }
}

void eliminate_row(std::span<Symbol> matrix, std::size_t cols, std::size_t r, std::size_t pivot_row,
                   std::size_t pivot_col) noexcept {
  Symbol* row = matrix.data() + r * cols;
  const Symbol factor = row[pivot_col];
  if (factor == 0) return;
  const Symbol* tbl = gf::mul_row(factor);
  const Symbol* piv = matrix.data() + pivot_row * cols;
  for (std::size_t c = pivot_col; c < cols; ++c) row[c] ^= tbl[piv[c]];
}

}  // namespace

bool parallel_available() noexcept {
#ifdef NCAUDIT_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() noexcept {
#ifdef NCAUDIT_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace serial {

void combine(std::span<Symbol> out, std::span<const std::span<const Symbol>> rows,
             std::span<const Symbol> coeffs) noexcept {
  combine_range(out, rows, coeffs, 0, out.size());
}

Symbol dot(std::span<const Symbol> u, std::span<const Symbol> v) noexcept {
  const auto& m = gf::tables().mul;
  Symbol acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) acc ^= m[u[i]][v[i]];
  return acc;
}

void eliminate(std::span<Symbol> matrix, std::size_t rows, std::size_t cols, std::size_t pivot_row,
               std::size_t pivot_col) noexcept {
  for (std::size_t r = 0; r < rows; ++r) {
    if (r != pivot_row) eliminate_row(matrix, cols, r, pivot_row, pivot_col);
  }
}

}  // namespace serial

namespace parallel {

void combine(std::span<Symbol> out, std::span<const std::span<const Symbol>> rows,
             std::span<const Symbol> coeffs) noexcept {
  const auto chunks = static_cast<std::ptrdiff_t>((out.size() + kChunk - 1) / kChunk);
#ifdef NCAUDIT_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
    const std::size_t end = std::min(out.size(), begin + kChunk);
    combine_range(out, rows, coeffs, begin, end);
  }
}

Symbol dot(std::span<const Symbol> u, std::span<const Symbol> v) noexcept {
  const auto& m = gf::tables().mul;
  const auto len = static_cast<std::ptrdiff_t>(u.size());
  unsigned acc = 0;
#ifdef NCAUDIT_HAVE_OPENMP
#pragma omp parallel for reduction(^ : acc) schedule(static)
#endif
  for (std::ptrdiff_t i = 0; i < len; ++i) acc ^= m[u[i]][v[i]];
  return static_cast<Symbol>(acc);
}

void eliminate(std::span<Symbol> matrix, std::size_t rows, std::size_t cols, std::size_t pivot_row,
               std::size_t pivot_col) noexcept {
  const auto n = static_cast<std::ptrdiff_t>(rows);
#ifdef NCAUDIT_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    if (static_cast<std::size_t>(r) != pivot_row) {
      eliminate_row(matrix, cols, static_cast<std::size_t>(r), pivot_row, pivot_col);
    }
  }
}

}  // namespace parallel

void combine(std::span<Symbol> out, std::span<const std::span<const Symbol>> rows,
             std::span<const Symbol> coeffs, Policy policy) {
  if (rows.size() != coeffs.size()) throw std::invalid_argument("combine: coefficient count mismatch");
  for (const auto& r : rows) {
    if (r.size() != out.size()) throw std::invalid_argument("combine: row length mismatch");
  }
  if (use_parallel(policy, rows.size() * out.size())) {
    parallel::combine(out, rows, coeffs);
  } else {
    serial::combine(out, rows, coeffs);
  }
  gf::count_muls(rows.size() * out.size());
}

Symbol dot(std::span<const Symbol> u, std::span<const Symbol> v, Policy policy) {
  if (u.size() != v.size()) throw std::invalid_argument("dot: length mismatch");
  const Symbol s = use_parallel(policy, u.size()) ? parallel::dot(u, v) : serial::dot(u, v);
  gf::count_muls(u.size());
  return s;
}

void eliminate(std::span<Symbol> matrix, std::size_t rows, std::size_t cols, std::size_t pivot_row,
               std::size_t pivot_col, Policy policy) {
  if (matrix.size() != rows * cols || pivot_row >= rows || pivot_col >= cols) {
    throw std::invalid_argument("eliminate: bad dimensions");
  }
  if (use_parallel(policy, rows * (cols - pivot_col))) {
    parallel::eliminate(matrix, rows, cols, pivot_row, pivot_col);
  } else {
    serial::eliminate(matrix, rows, cols, pivot_row, pivot_col);
  }
}

}  // namespace ncaudit::kernels
