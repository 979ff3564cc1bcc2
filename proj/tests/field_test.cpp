#include <gtest/gtest.h>

#include "ncaudit/field.hpp"
#include "ncaudit/kernels.hpp"
#include "ncaudit/rng.hpp"

namespace ncaudit {
namespace {

TEST(Field, AddIsXor) {
  EXPECT_EQ(gf::add(0x00, 0x5A), 0x5A);
  EXPECT_EQ(gf::add(0x5A, 0x5A), 0x00);
  EXPECT_EQ(gf::add(0x57, 0x83), 0xD4);
}

TEST(Field, MulExamples) {
  EXPECT_EQ(gf::mul(0x01, 0xC3), 0xC3);
  EXPECT_EQ(gf::mul(0x02, 0x03), 0x06);
  EXPECT_EQ(gf::mul(0x53, 0xCA), 0x01);
  // Values from tests/oracles/prf_golden.py.
  EXPECT_EQ(gf::mul(0x57, 0x83), 0xC1);
  EXPECT_EQ(gf::mul(0x02, 0x87), 0x15);
  EXPECT_EQ(gf::mul(0xFF, 0xFF), 0x13);
}

TEST(Field, TableMatchesShiftReduceEverywhere) {
  for (unsigned a = 0; a < 256; ++a) {
    for (unsigned b = 0; b < 256; ++b) {
      ASSERT_EQ(gf::tables().mul[a][b], gf::mul_shift_reduce(static_cast<Symbol>(a), static_cast<Symbol>(b)))
          << a << "*" << b;
    }
  }
}

TEST(Field, InverseByExhaustiveSearch) {
  for (unsigned a = 1; a < 256; ++a) {
    unsigned found = 0;
    for (unsigned b = 1; b < 256; ++b) {
      if (gf::mul_shift_reduce(static_cast<Symbol>(a), static_cast<Symbol>(b)) == 1) found = b;
    }
    EXPECT_EQ(gf::inv(static_cast<Symbol>(a)), found);
  }
  EXPECT_THROW(gf::inv(0), std::domain_error);
  EXPECT_THROW(gf::div(3, 0), std::domain_error);
}

TEST(Field, MultiplicativeOrder255) {
  Symbol x = 1;
  int order = 0;
  do {
    x = gf::mul_shift_reduce(x, 0x03);
    ++order;
  } while (x != 1);
  EXPECT_EQ(order, 255);
}

TEST(Field, Distributivity) {
  Rng rng = Rng::seeded(3);
  for (int i = 0; i < 200000; ++i) {
    const Symbol a = rng.symbol(), b = rng.symbol(), c = rng.symbol();
    ASSERT_EQ(gf::mul(a, gf::add(b, c)), gf::add(gf::mul(a, b), gf::mul(a, c)));
  }
}

TEST(Field, DotExamples) {
  const SymbolVector zero(5, 0), v{9, 8, 7, 6, 5};
  EXPECT_EQ(gf::dot(zero, v), 0);
  for (std::size_t j = 0; j < v.size(); ++j) {
    SymbolVector e(v.size(), 0);
    e[j] = 1;
    EXPECT_EQ(gf::dot(e, v), v[j]);
  }
  EXPECT_EQ(gf::dot(SymbolVector{2, 4}, SymbolVector{3, 5}), 0x12);
  EXPECT_THROW(gf::dot(SymbolVector{1}, SymbolVector{1, 2}), std::invalid_argument);
}

TEST(Field, MulCounterCountsBulkLength) {
  gf::MulCounterScope scope;
  SymbolVector y(100, 1), x(100, 2);
  gf::axpy(y, 3, x);
  EXPECT_EQ(scope.elapsed(), 100u);
  gf::add_into(y, x);
  EXPECT_EQ(scope.elapsed(), 100u);
  (void)gf::dot(x, y);
  EXPECT_EQ(scope.elapsed(), 200u);
}

class KernelAgreement : public ::testing::TestWithParam<std::size_t> {};

TEST_P(KernelAgreement, SerialAndParallelMatch) {
  const std::size_t len = GetParam();
  Rng rng = Rng::seeded(len);
  std::vector<SymbolVector> rows;
  std::vector<std::span<const Symbol>> views;
  for (int i = 0; i < 17; ++i) rows.push_back(rng.symbols(len));
  for (const auto& r : rows) views.emplace_back(r);
  const auto coeffs = rng.symbols(rows.size());
  SymbolVector a(len, 0), b(len, 0);
  kernels::serial::combine(a, views, coeffs);
  kernels::parallel::combine(b, views, coeffs);
  EXPECT_EQ(a, b);
  EXPECT_EQ(kernels::serial::dot(rows[0], rows[1]), kernels::parallel::dot(rows[0], rows[1]));

  const std::size_t n = 24;
  auto m1 = rng.symbols(n * (n + 3));
  m1[0] = 1;
  auto m2 = m1;
  kernels::serial::eliminate(m1, n, n + 3, 0, 0);
  kernels::parallel::eliminate(m2, n, n + 3, 0, 0);
  EXPECT_EQ(m1, m2);
}

INSTANTIATE_TEST_SUITE_P(Lengths, KernelAgreement, ::testing::Values(1, 7, 64, 4096, 70000));

TEST(Kernels, CombineMatchesScalarLoop) {
  Rng rng = Rng::seeded(99);
  std::vector<SymbolVector> rows{rng.symbols(33), rng.symbols(33), rng.symbols(33)};
  std::vector<std::span<const Symbol>> views(rows.begin(), rows.end());
  const SymbolVector coeffs{0x53, 0x00, 0xCA};
  SymbolVector out(33, 0);
  gf::MulCounterScope scope;
  kernels::combine(out, views, coeffs, kernels::Policy::serial);
  EXPECT_EQ(scope.elapsed(), 99u);
  for (std::size_t k = 0; k < 33; ++k) {
    Symbol want = 0;
    for (std::size_t i = 0; i < 3; ++i) want ^= gf::mul_shift_reduce(coeffs[i], rows[i][k]);
    EXPECT_EQ(out[k], want);
  }
}

}  // namespace
}  // namespace ncaudit
