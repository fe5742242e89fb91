#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace steinlight {

// A (seed, stream) pair fully determines the sequence, so parallel workers
// can each own an independent stream and results do not depend on scheduling.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  // Uniform integer on [lo, hi].
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Stable 64-bit FNV-1a hash, used to derive stream ids from check names.
std::uint64_t stream_id(std::string_view name);
std::uint64_t stream_id(std::string_view name, std::uint64_t index);

// Seed from STEINLIGHT_SEED when set and parseable, otherwise the fallback.
std::uint64_t default_seed(std::uint64_t fallback = 20240601);

}  // namespace steinlight
