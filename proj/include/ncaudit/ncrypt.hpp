#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncaudit/blocks.hpp"
#include "ncaudit/prf.hpp"
#include "ncaudit/rng.hpp"
#include "ncaudit/spacemac.hpp"

namespace ncaudit {

class NCryptSetupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mask basis p̄_1..p̄_{n-1} (each of length n-2) and, per key index j, the
/// scalars p_{i,j} = r̄_j·p̄_i.
struct AuxiliaryElements {
  std::size_t n = 0;
  std::vector<SymbolVector> basis;
  /// scalars[j][i] = p_{i+1, j+1}.
  std::vector<SymbolVector> scalars;

  std::size_t ell() const noexcept { return scalars.size(); }
  bool operator==(const AuxiliaryElements&) const = default;
};

/// Basis vectors are rank-checked only up to this n.
inline constexpr std::size_t kBasisRankCheckLimit = 256;

struct Ciphertext {
  SymbolVector c_bar;
  std::vector<std::uint8_t> nonce;
  SymbolVector p;  // one auxiliary tag per key index

  bool operator==(const Ciphertext&) const = default;
};

/// The nonce-dependent part of an encryption, computable ahead of time.
struct Mask {
  std::vector<std::uint8_t> nonce;
  SymbolVector m_bar;
  SymbolVector p;
};

/// Needs k_v (through `mac`) for r̄, so it runs on the user side.
/// Throws NCryptSetupError when some r̄_j is zero or, for n <= 256, when the
/// basis does not span F_q^{n-2}.
AuxiliaryElements ncrypt_setup(const Prf& k_e, const SpaceMac& mac, std::uint32_t n);

/// β_i = F3(k_e, id, nonce, i) for i = 1..n-1.
SymbolVector mask_coefficients(const Prf& k_e, std::string_view file_id, std::span<const std::uint8_t> nonce,
                               std::size_t n);

Mask make_mask(const Prf& k_e, std::string_view file_id, const AuxiliaryElements& aux,
               std::vector<std::uint8_t> nonce);
Mask fresh_mask(const Prf& k_e, std::string_view file_id, const AuxiliaryElements& aux, std::size_t lambda_bits,
                Rng& rng);

/// c̄ = ē + m̄. No field multiplications.
Ciphertext encrypt_with_mask(std::span<const Symbol> e_bar, const Mask& mask);
Ciphertext encrypt(const Prf& k_e, std::string_view file_id, std::span<const Symbol> e_bar,
                   const AuxiliaryElements& aux, std::size_t lambda_bits, Rng& rng);
SymbolVector decrypt(const Prf& k_e, std::string_view file_id, const Ciphertext& ct, const AuxiliaryElements& aux);

}  // namespace ncaudit
