#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace telegraph {

// Philox4x64-10 counter-based generator. Output for a given (key, counter)
// block is a pure function, so streams keyed by (seed, stream_index) can be
// consumed in any order across workers with identical results. Constants and
// block layout match the widely used Philox reference implementations, so the
// first outputs of key (s, i) equal those of external Philox generators
// seeded with key = [s, i] and counter = 0.
class Philox4x64 {
public:
  using Block = std::array<std::uint64_t, 4>;

  Philox4x64(std::uint64_t key0, std::uint64_t key1) : key_{key0, key1} {}

  // Encrypts the given 256-bit counter under this generator's key.
  Block operator()(Block counter) const {
    std::uint64_t k0 = key_[0];
    std::uint64_t k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
      if (round != 0) {
        k0 += 0x9E3779B97F4A7C15ull;
        k1 += 0xBB67AE8584CAA73Bull;
      }
      counter = single_round(counter, k0, k1);
    }
    return counter;
  }

private:
  static Block single_round(const Block& ctr, std::uint64_t k0, std::uint64_t k1) {
    const std::uint64_t m0 = 0xD2E7470EE14C6C93ull;
    const std::uint64_t m1 = 0xCA5A826395121157ull;
    unsigned __int128 p0 = static_cast<unsigned __int128>(m0) * ctr[0];
    unsigned __int128 p1 = static_cast<unsigned __int128>(m1) * ctr[2];
    std::uint64_t lo0 = static_cast<std::uint64_t>(p0);
    std::uint64_t hi0 = static_cast<std::uint64_t>(p0 >> 64);
    std::uint64_t lo1 = static_cast<std::uint64_t>(p1);
    std::uint64_t hi1 = static_cast<std::uint64_t>(p1 >> 64);
    return {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
  }

  std::array<std::uint64_t, 2> key_;
};

// One logical random stream, keyed by (seed, stream_index). Distinct keys give
// statistically independent streams by construction of the block cipher, so
// the convention is one stream per path index.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream_index)
      : seed_(seed), stream_index_(stream_index), cipher_(seed, stream_index) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  // The counter is advanced before each block is encrypted, so block n covers
  // counter value n + 1; this matches the reference generators this stream is
  // cross-checked against.
  std::uint64_t next_u64() {
    if (buffer_pos_ == 4) {
      increment_counter();
      buffer_ = cipher_(counter_);
      buffer_pos_ = 0;
    }
    return buffer_[buffer_pos_++];
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Inverse-CDF exponential; U = 0 is rejected and redrawn so the result is
  // always finite and positive.
  double next_exponential(double rate) {
    double u;
    do {
      u = next_uniform();
    } while (u == 0.0);
    return -std::log(u) / rate;
  }

  bool next_bernoulli(double p) { return next_uniform() < p; }

private:
  void increment_counter() {
    for (auto& word : counter_) {
      if (++word != 0) break;
    }
  }

  std::uint64_t seed_;
  std::uint64_t stream_index_;
  Philox4x64 cipher_;
  Philox4x64::Block counter_{0, 0, 0, 0};
  Philox4x64::Block buffer_{};
  int buffer_pos_ = 4;
};

} // namespace telegraph
