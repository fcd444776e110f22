#include "entgeo/rng.hpp"

namespace entgeo {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

CounterRng CounterRng::keyed(std::uint64_t seed, std::initializer_list<std::uint64_t> indices) noexcept {
  std::uint64_t key = mix64(seed + kGolden);
  for (std::uint64_t index : indices) {
    key = mix64(key ^ mix64(index + kGolden));
  }
  return CounterRng(key);
}

CounterRng::result_type CounterRng::operator()() noexcept {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

CounterRng CounterRng::split(std::uint64_t index) const noexcept {
  return CounterRng(mix64(key_ ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

}  // namespace entgeo
