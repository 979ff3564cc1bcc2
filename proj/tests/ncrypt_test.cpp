#include <gtest/gtest.h>

#include "ncaudit/codec.hpp"
#include "ncaudit/linalg.hpp"
#include "ncaudit/ncrypt.hpp"
#include "support.hpp"

namespace ncaudit {
namespace {

using testing::test_prf;

struct Fixture {
  Prf k_e = test_prf(7);
  SpaceMac mac{test_prf(3), "f", 2};
  AuxiliaryElements aux;
  explicit Fixture(std::uint32_t n) : aux(ncrypt_setup(k_e, mac, n)) {}
};

TEST(NCrypt, SetupDimensions) {
  Fixture fx(4);
  EXPECT_EQ(fx.aux.basis.size(), 3u);
  for (const auto& b : fx.aux.basis) EXPECT_EQ(b.size(), 2u);
  ASSERT_EQ(fx.aux.ell(), 2u);
  for (const auto& s : fx.aux.scalars) EXPECT_EQ(s.size(), 3u);
}

TEST(NCrypt, BasisIsF2AndScalarsAreDots) {
  Fixture fx(12);
  for (std::uint32_t i = 1; i <= 11; ++i) {
    for (std::uint32_t j = 1; j <= 10; ++j) {
      ASSERT_EQ(fx.aux.basis[i - 1][j - 1], fx.k_e.eval(PrfDomain::mask_basis("f", i, j)));
    }
  }
  for (std::uint32_t j = 1; j <= 2; ++j) {
    const auto r = fx.mac.r_vector(j, 10);
    const std::span<const Symbol> r_bar(r->data(), 10);
    for (std::size_t i = 0; i < 11; ++i) EXPECT_EQ(fx.aux.scalars[j - 1][i], gf::dot(r_bar, fx.aux.basis[i]));
  }
}

TEST(NCrypt, GoldenBasisUnderPinnedPrf) {
  // From tests/oracles/prf_golden.py.
  Fixture fx(4);
  const std::vector<SymbolVector> want{{0x0B, 0xC2}, {0x88, 0x1D}, {0x32, 0x64}};
  EXPECT_EQ(fx.aux.basis, want);
}

TEST(NCrypt, RoundTrip) {
  Fixture fx(32);
  Rng rng = Rng::seeded(1);
  for (int t = 0; t < 200; ++t) {
    const auto x = rng.symbols(30);
    const auto ct = encrypt(fx.k_e, "f", x, fx.aux, 128, rng);
    EXPECT_EQ(ct.nonce.size(), 16u);
    ASSERT_EQ(decrypt(fx.k_e, "f", ct, fx.aux), x);
  }
}

TEST(NCrypt, ZeroPlaintextExposesMaskInSpan) {
  Fixture fx(16);
  Rng rng = Rng::seeded(2);
  const auto ct = encrypt(fx.k_e, "f", SymbolVector(14, 0), fx.aux, 128, rng);
  const auto mask = make_mask(fx.k_e, "f", fx.aux, ct.nonce);
  EXPECT_EQ(ct.c_bar, mask.m_bar);
  EXPECT_TRUE(express(fx.aux.basis, ct.c_bar).has_value());
}

TEST(NCrypt, MaskTagIdentity) {
  Fixture fx(24);
  Rng rng = Rng::seeded(3);
  for (int t = 0; t < 500; ++t) {
    const auto mask = fresh_mask(fx.k_e, "f", fx.aux, 128, rng);
    for (std::uint32_t j = 1; j <= 2; ++j) {
      const auto r = fx.mac.r_vector(j, 22);
      ASSERT_EQ(gf::dot(std::span<const Symbol>(r->data(), 22), mask.m_bar), mask.p[j - 1]);
    }
  }
}

TEST(NCrypt, MaskMatchesBetaDefinition) {
  Fixture fx(10);
  const std::vector<std::uint8_t> nonce(16, 0xAB);
  const auto beta = mask_coefficients(fx.k_e, "f", nonce, 10);
  ASSERT_EQ(beta.size(), 9u);
  for (std::uint32_t i = 1; i <= 9; ++i) EXPECT_EQ(beta[i - 1], fx.k_e.eval(PrfDomain::mask_coefficient("f", nonce, i)));
  const auto mask = make_mask(fx.k_e, "f", fx.aux, nonce);
  SymbolVector m_bar(8, 0);
  for (std::size_t i = 0; i < 9; ++i) gf::axpy(m_bar, beta[i], fx.aux.basis[i]);
  EXPECT_EQ(mask.m_bar, m_bar);
  EXPECT_EQ(make_mask(fx.k_e, "f", fx.aux, nonce).m_bar, mask.m_bar);
}

TEST(NCrypt, FreshNonceEachEncryption) {
  Fixture fx(16);
  Rng rng = Rng::seeded(4);
  const auto x = rng.symbols(14);
  for (int t = 0; t < 1000; ++t) {
    const auto a = encrypt(fx.k_e, "f", x, fx.aux, 128, rng);
    const auto b = encrypt(fx.k_e, "f", x, fx.aux, 128, rng);
    ASSERT_NE(a.nonce, b.nonce);
    ASSERT_NE(a.c_bar, b.c_bar);
  }
}

TEST(NCrypt, TamperedCiphertextDecryptsToOtherVector) {
  Fixture fx(16);
  Rng rng = Rng::seeded(5);
  const auto x = rng.symbols(14);
  auto ct = encrypt(fx.k_e, "f", x, fx.aux, 128, rng);
  ct.c_bar[3] ^= 0x10;
  EXPECT_NE(decrypt(fx.k_e, "f", ct, fx.aux), x);
}

TEST(NCrypt, GoldenCiphertextUnderPinnedPrf) {
  // From tests/oracles/prf_golden.py.
  Fixture fx(6);
  const Mask mask = make_mask(fx.k_e, "f", fx.aux, std::vector<std::uint8_t>(10, 0x5A));
  const auto ct = encrypt_with_mask(SymbolVector{1, 2, 3, 4}, mask);
  EXPECT_EQ(ct.c_bar, (SymbolVector{0x69, 0xB3, 0xD8, 0xD3}));
}

TEST(NCrypt, ProductionModeRoundTrip) {
  Rng rng = Rng::seeded(6);
  const Prf k_e(PrfKey::generate(128, rng), PrfMode::production);
  const SpaceMac mac(Prf(PrfKey::generate(128, rng), PrfMode::production), "f", 1);
  const auto aux = ncrypt_setup(k_e, mac, 40);
  const auto x = rng.symbols(38);
  EXPECT_EQ(decrypt(k_e, "f", encrypt(k_e, "f", x, aux, 80, rng), aux), x);
}

}  // namespace
}  // namespace ncaudit
