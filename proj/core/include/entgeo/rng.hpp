#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace entgeo {

// Counter-based generator: output n is a SplitMix64 finalizer applied to
// key + n * golden. Streams are identified by a key derived from a seed and
// any number of indices, so a (seed, trial) pair always yields the same
// sequence regardless of which thread draws it or in which order.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  // Stream for (seed, i0, i1, ...).
  static CounterRng keyed(std::uint64_t seed, std::initializer_list<std::uint64_t> indices) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  // Independent child stream; does not advance this generator.
  CounterRng split(std::uint64_t index) const noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace entgeo
