#pragma once

#include <cstdint>
#include <random>

namespace multiprice {

/// Stream ids used with derive_seed. Item initialization and customer
/// behaviour draw from separate streams so that policies run on the same
/// (instance, seed) see the same customers.
enum class Stream : std::uint64_t {
  item_init = 1,
  customer = 2,
  instance = 3,
  permutation = 4,
};

std::uint64_t splitmix64(std::uint64_t& state);

/// Independent 64-bit seed for (base, stream, index).
std::uint64_t derive_seed(std::uint64_t base, Stream stream,
                          std::uint64_t index = 0);

class Rng {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t base, Stream stream, std::uint64_t index = 0)
      : engine_(derive_seed(base, stream, index)) {}

  /// Uniform on [0,1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace multiprice
