#include "steinlight/rng.hpp"

#include <cstdlib>
#include <string>

namespace steinlight {

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x5eedu};
  engine_.seed(seq);
}

std::uint64_t stream_id(std::string_view name) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t stream_id(std::string_view name, std::uint64_t index) {
  std::uint64_t h = stream_id(name);
  for (int k = 0; k < 8; ++k) {
    h ^= (index >> (8 * k)) & 0xffu;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t default_seed(std::uint64_t fallback) {
  const char* env = std::getenv("STEINLIGHT_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used, 10);
    if (used == std::string(env).size()) return v;
  } catch (...) {
  }
  return fallback;
}

}  // namespace steinlight
