#include "ncaudit/field.hpp"

#include <stdexcept>

namespace ncaudit::gf {
namespace {

Tables build_tables() noexcept {
  Tables t{};
  for (unsigned a = 0; a < kOrder; ++a) {
    for (unsigned b = 0; b < kOrder; ++b) {
      t.mul[a][b] = mul_shift_reduce(static_cast<Symbol>(a), static_cast<Symbol>(b));
    }
  }
  t.inv[0] = 0;
  for (unsigned a = 1; a < kOrder; ++a) {
    for (unsigned b = 1; b < kOrder; ++b) {
      if (t.mul[a][b] == 1) {
        t.inv[a] = static_cast<Symbol>(b);
        break;
      }
    }
  }
  return t;
}

thread_local std::uint64_t tl_mul_count = 0;

}  // namespace

const Tables& tables() noexcept {
  static const Tables kTables = build_tables();
  return kTables;
}

void count_muls(std::uint64_t n) noexcept { tl_mul_count += n; }
std::uint64_t mul_count() noexcept { return tl_mul_count; }
void reset_mul_count() noexcept { tl_mul_count = 0; }

Symbol inv(Symbol a) {
  if (a == 0) throw std::domain_error("gf::inv: zero has no inverse");
  return tables().inv[a];
}

Symbol div(Symbol a, Symbol b) { return mul(a, inv(b)); }

Symbol dot(std::span<const Symbol> u, std::span<const Symbol> v) {
  if (u.size() != v.size()) throw std::invalid_argument("gf::dot: length mismatch");
  const auto& m = tables().mul;
  Symbol acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) acc ^= m[u[i]][v[i]];
  count_muls(u.size());
  return acc;
}

void axpy(std::span<Symbol> y, Symbol alpha, std::span<const Symbol> x) {
  if (y.size() != x.size()) throw std::invalid_argument("gf::axpy: length mismatch");
  const Symbol* row = mul_row(alpha);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] ^= row[x[i]];
  count_muls(y.size());
}

void scale(std::span<Symbol> y, Symbol alpha) noexcept {
  const Symbol* row = mul_row(alpha);
  for (auto& s : y) s = row[s];
  count_muls(y.size());
}

void add_into(std::span<Symbol> y, std::span<const Symbol> x) {
  if (y.size() != x.size()) throw std::invalid_argument("gf::add_into: length mismatch");
  for (std::size_t i = 0; i < y.size(); ++i) y[i] ^= x[i];
}

}  // namespace ncaudit::gf
