#include "ncaudit/prf.hpp"

#include <sodium.h>

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace ncaudit {
namespace {

void put_u32be(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint64_t load_le64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

std::uint64_t absorb(std::uint64_t state, std::span<const std::uint8_t> bytes) noexcept {
  for (std::uint8_t b : bytes) state = prf_test::mix(state ^ (static_cast<std::uint64_t>(b) * prf_test::kGolden));
  return state;
}

}  // namespace

namespace prf_test {
std::uint64_t mix(std::uint64_t z) noexcept {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace prf_test

PrfMode prf_mode_from_env() {
  const char* v = std::getenv("NCAUDIT_TEST_PRF");
  return (v != nullptr && std::string_view(v) == "1") ? PrfMode::test : PrfMode::production;
}

PrfKey::PrfKey(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {
  if (bytes_.size() * 8 < kMinKeyBits || bytes_.size() * 8 > kMaxKeyBits) {
    throw std::invalid_argument("PrfKey: key must be 80..256 bits");
  }
}

PrfKey PrfKey::generate(std::size_t bits, Rng& rng) {
  if (bits % 8 != 0) throw std::invalid_argument("PrfKey::generate: bit length must be a multiple of 8");
  std::vector<std::uint8_t> bytes(bits / 8);
  rng.fill(bytes);
  return PrfKey(std::move(bytes));
}

PrfDomain::PrfDomain(PrfFunction fn, std::string_view id, std::initializer_list<std::uint32_t> idx,
                     std::span<const std::uint8_t> nonce_bytes)
    : function(fn), file_id(id), nonce(nonce_bytes), index_count(idx.size()) {
  if (idx.size() == 0 || idx.size() > indices.size()) {
    throw std::invalid_argument("PrfDomain: expected 1..3 indices");
  }
  if ((fn == PrfFunction::kMaskCoefficient) != !nonce_bytes.empty()) {
    throw std::invalid_argument("PrfDomain: a nonce is required for F3 and forbidden otherwise");
  }
  std::size_t k = 0;
  for (std::uint32_t v : idx) {
    if (v == 0) throw std::out_of_range("PrfDomain: indices are 1-based");
    indices[k++] = v;
  }
}

std::vector<std::uint8_t> PrfDomain::encode() const {
  std::vector<std::uint8_t> out;
  out.reserve(1 + 4 + file_id.size() + 4 + nonce.size() + 4 * index_count);
  out.push_back(static_cast<std::uint8_t>(function));
  put_u32be(out, static_cast<std::uint32_t>(file_id.size()));
  out.insert(out.end(), file_id.begin(), file_id.end());
  if (function == PrfFunction::kMaskCoefficient) {
    put_u32be(out, static_cast<std::uint32_t>(nonce.size()));
    out.insert(out.end(), nonce.begin(), nonce.end());
  }
  for (std::size_t i = 0; i < index_count; ++i) put_u32be(out, indices[i]);
  return out;
}

Prf::Prf(PrfKey key, PrfMode mode) : key_(std::move(key)), mode_(mode) {
  const auto k = key_.bytes();
  if (k.empty()) throw std::invalid_argument("Prf: empty key");
  if (mode_ == PrfMode::test) {
    test_seed_ = load_le64(k.data()) ^ load_le64(k.data() + k.size() - 8);
  } else {
    if (sodium_init() < 0) throw std::runtime_error("libsodium initialisation failed");
    crypto_generichash(sip_key_.data(), sip_key_.size(), k.data(), k.size(), nullptr, 0);
  }
}

Symbol Prf::eval(const PrfDomain& domain) const {
  const auto enc = domain.encode();
  if (mode_ == PrfMode::test) return static_cast<Symbol>(absorb(test_seed_, enc) & 0xFF);
  std::array<std::uint8_t, crypto_shorthash_siphash24_BYTES> h{};
  crypto_shorthash_siphash24(h.data(), enc.data(), enc.size(), sip_key_.data());
  return h[0];
}

void Prf::eval_run(const PrfDomain& domain, std::uint32_t first, std::span<Symbol> out) const {
  auto enc = domain.encode();
  const std::size_t prefix = enc.size() - 4;
  std::uint8_t* tail = enc.data() + prefix;
  const std::uint64_t prefix_state =
      mode_ == PrfMode::test ? absorb(test_seed_, std::span(enc.data(), prefix)) : 0;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto idx = static_cast<std::uint32_t>(first + k);
    if (idx == 0) throw std::out_of_range("Prf::eval_run: index wrapped to zero");
    tail[0] = static_cast<std::uint8_t>(idx >> 24);
    tail[1] = static_cast<std::uint8_t>(idx >> 16);
    tail[2] = static_cast<std::uint8_t>(idx >> 8);
    tail[3] = static_cast<std::uint8_t>(idx);
    if (mode_ == PrfMode::test) {
      out[k] = static_cast<Symbol>(absorb(prefix_state, std::span(tail, 4)) & 0xFF);
    } else {
      std::array<std::uint8_t, crypto_shorthash_siphash24_BYTES> h{};
      crypto_shorthash_siphash24(h.data(), enc.data(), enc.size(), sip_key_.data());
      out[k] = h[0];
    }
  }
}

SymbolVector derive_r_vector(const Prf& kv, std::string_view file_id, std::uint32_t key_index,
                             std::size_t length) {
  if (length == 0) throw std::invalid_argument("derive_r_vector: length must be >= 1");
  SymbolVector r(length);
  kv.eval_run(PrfDomain::mac_vector(file_id, key_index, 1), 1, r);
  return r;
}

}  // namespace ncaudit
