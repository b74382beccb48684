#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace ugof {

/// xoshiro256++ stream. Satisfies UniformRandomBitGenerator.
class RngStream {
 public:
  using result_type = std::uint64_t;

  /// State expanded from a 64-bit seed with SplitMix64.
  explicit RngStream(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform() noexcept;

  /// Standard normal (Marsaglia polar method, one value per call).
  double normal() noexcept;

 private:
  std::uint64_t s_[4];
};

/// Stream number `task_index` derived from `master_seed`. The mapping is a
/// pure function, so results never depend on which worker runs the task.
RngStream rng_substream(std::uint64_t master_seed, std::uint64_t task_index);

/// 64-bit salt for a named simulation cell (FNV-1a, then mixed).
std::uint64_t cell_salt(std::string_view key);

/// Derives a per-cell seed: rng_substream(cell_seed(master, salt), rep).
std::uint64_t cell_seed(std::uint64_t master_seed, std::uint64_t salt);

}  // namespace ugof
