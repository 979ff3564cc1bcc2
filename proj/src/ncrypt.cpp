#include "ncaudit/ncrypt.hpp"

#include <algorithm>

#include "ncaudit/kernels.hpp"
#include "ncaudit/linalg.hpp"

namespace ncaudit {

AuxiliaryElements ncrypt_setup(const Prf& k_e, const SpaceMac& mac, std::uint32_t n) {
  if (n < 4) throw std::invalid_argument("ncrypt_setup: n must be >= 4");
  const std::size_t len = n - 2;
  AuxiliaryElements aux;
  aux.n = n;
  aux.basis.resize(n - 1);
  for (std::uint32_t i = 1; i <= n - 1; ++i) {
    auto& v = aux.basis[i - 1];
    v.resize(len);
    k_e.eval_run(PrfDomain::mask_basis(mac.file_id(), i, 1), 1, v);
  }
  if (n <= kBasisRankCheckLimit && rank(aux.basis, len) != len) {
    throw NCryptSetupError("ncrypt_setup: mask basis does not span F_q^{n-2}");
  }
  aux.scalars.resize(mac.ell());
  for (std::uint32_t j = 0; j < mac.ell(); ++j) {
    const auto r = mac.r_vector(j + 1, len);
    const std::span<const Symbol> r_bar(r->data(), len);
    if (std::all_of(r_bar.begin(), r_bar.end(), [](Symbol s) { return s == 0; })) {
      throw NCryptSetupError("ncrypt_setup: r̄ is the zero vector");
    }
    auto& row = aux.scalars[j];
    row.resize(n - 1);
    for (std::size_t i = 0; i < n - 1; ++i) row[i] = kernels::dot(r_bar, aux.basis[i]);
  }
  return aux;
}

SymbolVector mask_coefficients(const Prf& k_e, std::string_view file_id, std::span<const std::uint8_t> nonce,
                               std::size_t n) {
  if (nonce.empty()) throw std::invalid_argument("mask_coefficients: empty nonce");
  SymbolVector beta(n - 1);
  k_e.eval_run(PrfDomain::mask_coefficient(file_id, nonce, 1), 1, beta);
  return beta;
}

Mask make_mask(const Prf& k_e, std::string_view file_id, const AuxiliaryElements& aux,
               std::vector<std::uint8_t> nonce) {
  Mask mask;
  const auto beta = mask_coefficients(k_e, file_id, nonce, aux.n);
  mask.nonce = std::move(nonce);
  mask.m_bar.assign(aux.n - 2, 0);
  std::vector<std::span<const Symbol>> rows(aux.basis.begin(), aux.basis.end());
  kernels::combine(mask.m_bar, rows, beta);
  mask.p.resize(aux.ell());
  for (std::size_t j = 0; j < aux.ell(); ++j) mask.p[j] = kernels::dot(beta, aux.scalars[j]);
  return mask;
}

Mask fresh_mask(const Prf& k_e, std::string_view file_id, const AuxiliaryElements& aux, std::size_t lambda_bits,
                Rng& rng) {
  std::vector<std::uint8_t> nonce(lambda_bits / 8);
  rng.fill(nonce);
  return make_mask(k_e, file_id, aux, std::move(nonce));
}

Ciphertext encrypt_with_mask(std::span<const Symbol> e_bar, const Mask& mask) {
  if (e_bar.size() != mask.m_bar.size()) throw std::invalid_argument("encrypt: plaintext length != n-2");
  Ciphertext ct{{e_bar.begin(), e_bar.end()}, mask.nonce, mask.p};
  gf::add_into(ct.c_bar, mask.m_bar);
  return ct;
}

Ciphertext encrypt(const Prf& k_e, std::string_view file_id, std::span<const Symbol> e_bar,
                   const AuxiliaryElements& aux, std::size_t lambda_bits, Rng& rng) {
  return encrypt_with_mask(e_bar, fresh_mask(k_e, file_id, aux, lambda_bits, rng));
}

SymbolVector decrypt(const Prf& k_e, std::string_view file_id, const Ciphertext& ct, const AuxiliaryElements& aux) {
  if (ct.c_bar.size() != aux.n - 2) throw std::invalid_argument("decrypt: ciphertext length != n-2");
  const auto mask = make_mask(k_e, file_id, aux, ct.nonce);
  SymbolVector e_bar = ct.c_bar;
  gf::add_into(e_bar, mask.m_bar);
  return e_bar;
}

}  // namespace ncaudit
