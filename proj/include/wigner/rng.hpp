#pragma once

#include <array>
#include <cstdint>

namespace wigner {

// Philox4x32 with 10 rounds (Salmon et al. 2011).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;
  static Counter block(Counter ctr, Key key);
};

// Counter-based stream: draw n of stream `index` under `seed` is a pure function
// of (seed, index, n), so realizations can be handed to any worker.
class RngStream {
public:
  RngStream() = default;
  RngStream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t index() const { return index_; }
  std::uint64_t position() const { return block_ * 4 + used_; }

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1).
  double uniform_open();
  // Standard normal, Marsaglia polar method. The second value of each pair is cached.
  double normal();
  // +1 or -1 with equal probability.
  double sign();

private:
  void refill();

  std::uint64_t seed_ = 0;
  std::uint64_t index_ = 0;
  std::uint64_t block_ = 0;
  Philox4x32::Counter buf_{};
  unsigned used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

RngStream derive_stream(std::uint64_t seed, std::uint64_t index);

}  // namespace wigner
