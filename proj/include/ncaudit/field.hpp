#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ncaudit {

/// One symbol of GF(2^8).
using Symbol = std::uint8_t;
using SymbolVector = std::vector<Symbol>;

namespace gf {

/// x^8 + x^4 + x^3 + x + 1.
inline constexpr unsigned kPolynomial = 0x11B;
inline constexpr std::size_t kOrder = 256;

constexpr Symbol add(Symbol a, Symbol b) noexcept { return static_cast<Symbol>(a ^ b); }
constexpr Symbol sub(Symbol a, Symbol b) noexcept { return static_cast<Symbol>(a ^ b); }

/// Bitwise shift-and-reduce multiplication. Used to build the lookup table
/// and kept as the reference for tests.
constexpr Symbol mul_shift_reduce(Symbol a, Symbol b) noexcept {
  unsigned acc = 0;
  unsigned x = a;
  unsigned y = b;
  while (y != 0) {
    if (y & 1u) acc ^= x;
    y >>= 1;
    x <<= 1;
    if (x & 0x100u) x ^= kPolynomial;
  }
  return static_cast<Symbol>(acc);
}

struct Tables {
  std::array<std::array<Symbol, kOrder>, kOrder> mul;
  std::array<Symbol, kOrder> inv;
};

/// Built once on first use, immutable afterwards.
const Tables& tables() noexcept;

inline const Symbol* mul_row(Symbol a) noexcept { return tables().mul[a].data(); }

// Multiplication counter. Thread-local; bulk kernels add their full length
// in one step so the counts match the textbook operation counts exactly.
void count_muls(std::uint64_t n) noexcept;
std::uint64_t mul_count() noexcept;
void reset_mul_count() noexcept;

class MulCounterScope {
 public:
  MulCounterScope() noexcept : start_(mul_count()) {}
  std::uint64_t elapsed() const noexcept { return mul_count() - start_; }

 private:
  std::uint64_t start_;
};

inline Symbol mul(Symbol a, Symbol b) noexcept {
  count_muls(1);
  return tables().mul[a][b];
}

/// Throws std::domain_error for zero.
Symbol inv(Symbol a);
Symbol div(Symbol a, Symbol b);

/// Σ u_i·v_i. Throws std::invalid_argument on length mismatch.
Symbol dot(std::span<const Symbol> u, std::span<const Symbol> v);

/// y += alpha·x.
void axpy(std::span<Symbol> y, Symbol alpha, std::span<const Symbol> x);

/// y *= alpha.
void scale(std::span<Symbol> y, Symbol alpha) noexcept;

/// y += x (XOR, no multiplications).
void add_into(std::span<Symbol> y, std::span<const Symbol> x);

}  // namespace gf
}  // namespace ncaudit
