#pragma once

// Timing and operation-count harness for gen_proof / verify_proof.

#include <cstdint>
#include <string>

#include "ncaudit/prf.hpp"

namespace ncaudit::bench {

struct Config {
  std::uint32_t n = 4096;  // 4 KB blocks
  std::uint32_t m = 500;
  std::uint32_t challenge = 300;  // C, also the number of blocks at the node
  std::uint32_t ell = 10;
  std::uint32_t lambda_bits = 128;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  PrfMode mode = PrfMode::production;
};

struct Timing {
  double median_ms = 0;
  double mean_ms = 0;
};

struct Report {
  Config config;
  Timing gen;
  Timing verify;
  std::uint64_t gen_block_muls = 0;  // per proof, mask precomputed
  std::uint64_t gen_tag_muls = 0;
  std::uint64_t verify_muls = 0;
  std::uint64_t expected_gen_muls = 0;     // C·n
  std::uint64_t expected_verify_muls = 0;  // C·m + ℓ(n+m)
  std::size_t proof_bytes = 0;
  double overhead_ratio = 0;     // at config.lambda_bits
  double overhead_ratio_80 = 0;  // at λ = 80
  bool all_accepted = true;
  bool counts_match() const noexcept {
    return gen_block_muls == expected_gen_muls && verify_muls == expected_verify_muls;
  }
};

/// Builds one node holding C tagged blocks of an m-block file and times
/// `trials` challenge rounds against it. Throws std::invalid_argument on
/// unusable parameters.
Report run(const Config& config);

/// Line-delimited JSON record of a report.
std::string to_json(const Report& report);

}  // namespace ncaudit::bench
