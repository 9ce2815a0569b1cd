#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>

namespace nodeprune {

/**
 * Philox4x32-10 counter-based generator.
 *
 * The 128-bit counter is split into (stream, block): the high 64 bits hold a
 * stream id, the low 64 bits count blocks within the stream. Each block
 * yields two 64-bit outputs. Distinct streams of the same key never overlap,
 * so replicate r can draw from stream(master, r) regardless of how replicates
 * are scheduled.
 */
class Philox4x32 {
 public:
  using result_type = std::uint64_t;
  using Block = std::array<std::uint32_t, 4>;

  explicit Philox4x32(std::uint64_t key, std::uint64_t stream = 0) : key_(key), stream_(stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Independent generator sharing this key on another stream.
  Philox4x32 split(std::uint64_t stream_id) const { return Philox4x32(key_, stream_id); }

  std::uint64_t key() const { return key_; }
  std::uint64_t stream() const { return stream_; }

  /// Raw bijection: ten Philox rounds of `counter` under `key`.
  static Block encrypt(Block counter, std::array<std::uint32_t, 2> key);

 private:
  std::uint64_t key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  Block buffer_{};
  int consumed_ = 2;  // 64-bit words used from buffer_
};

/// Uniform double in the open interval (0, 1), 53 bits of resolution.
double uniform_open01(Philox4x32& rng);

/// Standard normal draws by the Marsaglia polar method (pairs, spare cached).
class NormalSampler {
 public:
  double operator()(Philox4x32& rng);

 private:
  std::optional<double> spare_;
};

}  // namespace nodeprune
