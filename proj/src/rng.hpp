#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace zopt {

/// Counter-based random stream (Philox4x32-10).
///
/// A stream is fully identified by (seed, stream id); the n-th output is a
/// pure function of (seed, stream id, n), so streams reproduce bit-for-bit
/// across platforms and thread schedules. `derive` produces an independent
/// child stream keyed by an integer or a string label.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Marsaglia polar method; pairs are cached).
  double normal();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  Rng derive(std::uint64_t key) const;
  Rng derive(std::string_view label) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> out_{};
  int used_ = 4;  // 32-bit words consumed from out_
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// SplitMix64 finalizer; used for seed and stream derivation.
std::uint64_t mix64(std::uint64_t x);
/// FNV-1a over the bytes of `s`, finalized with mix64.
std::uint64_t hash_label(std::string_view s);

}  // namespace zopt
