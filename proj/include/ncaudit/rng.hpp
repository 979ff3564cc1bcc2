#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>

#include "ncaudit/field.hpp"

namespace ncaudit {

/// Randomness handle passed explicitly to every probabilistic operation.
/// Seeded mode is reproducible (simulation and tests); secure mode draws
/// from the system CSPRNG.
class Rng {
 public:
  using result_type = std::uint64_t;

  static Rng seeded(std::uint64_t seed) { return Rng(seed); }
  static Rng secure() { return Rng(); }

  bool is_seeded() const noexcept { return seeded_; }

  std::uint64_t next_u64();
  std::uint64_t operator()() { return next_u64(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  void fill(std::span<std::uint8_t> out);
  Symbol symbol();
  Symbol nonzero_symbol();
  SymbolVector symbols(std::size_t n);
  /// Uniform in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);
  double unit();

  /// Independent child stream; deterministic in seeded mode.
  Rng fork();

  /// Engine state as text, for resuming a seeded stream in another process.
  /// Empty for secure generators.
  std::string save_state() const;
  /// Restores a state from save_state(); an empty string yields a secure generator.
  static Rng restore(const std::string& state);

 private:
  explicit Rng(std::uint64_t seed) : seeded_(true), engine_(seed) {}
  Rng() : seeded_(false) {}

  bool seeded_;
  std::mt19937_64 engine_;
};

}  // namespace ncaudit
