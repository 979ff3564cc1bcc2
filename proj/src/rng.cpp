#include "ncaudit/rng.hpp"

#include <sodium.h>

#include <cstring>
#include <sstream>
#include <stdexcept>

namespace ncaudit {
namespace {

void ensure_sodium() {
  static const int status = sodium_init();
  if (status < 0) throw std::runtime_error("libsodium initialisation failed");
}

}  // namespace

std::uint64_t Rng::next_u64() {
  if (seeded_) return engine_();
  ensure_sodium();
  std::uint64_t v = 0;
  randombytes_buf(&v, sizeof v);
  return v;
}

void Rng::fill(std::span<std::uint8_t> out) {
  if (!seeded_) {
    ensure_sodium();
    randombytes_buf(out.data(), out.size());
    return;
  }
  std::size_t i = 0;
  while (i < out.size()) {
    const std::uint64_t v = engine_();
    const std::size_t take = std::min<std::size_t>(8, out.size() - i);
    std::memcpy(out.data() + i, &v, take);
    i += take;
  }
}

Symbol Rng::symbol() { return static_cast<Symbol>(next_u64() & 0xFF); }

Symbol Rng::nonzero_symbol() { return static_cast<Symbol>(1 + below(255)); }

SymbolVector Rng::symbols(std::size_t n) {
  SymbolVector v(n);
  fill(v);
  return v;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
  // Rejection sampling to avoid modulo bias.
  const std::uint64_t limit = max() - (max() % bound);
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % bound;
}

double Rng::unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

Rng Rng::fork() {
  if (!seeded_) return Rng::secure();
  return Rng::seeded(next_u64() ^ 0xD1B54A32D192ED03ull);
}

std::string Rng::save_state() const {
  if (!seeded_) return {};
  std::ostringstream out;
  out << engine_;
  return out.str();
}

Rng Rng::restore(const std::string& state) {
  if (state.empty()) return Rng::secure();
  Rng rng(0);
  std::istringstream in(state);
  in >> rng.engine_;
  if (!in) throw std::invalid_argument("Rng::restore: malformed state");
  return rng;
}

}  // namespace ncaudit
