#include "butterfly/xor_blocks.hpp"

#include <cstring>
#include <stdexcept>

namespace butterfly {

void xor_blocks(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
  if (dst.size() != src.size()) {
    throw std::invalid_argument("xor_blocks: length mismatch (" + std::to_string(dst.size()) +
                                " vs " + std::to_string(src.size()) + ")");
  }
  std::uint8_t* d = dst.data();
  const std::uint8_t* s = src.data();
  std::size_t n = dst.size();
  // Word loop; memcpy keeps it alignment-agnostic and the compiler turns it
  // into vector loads.
  constexpr std::size_t kWord = sizeof(std::uint64_t);
  for (; n >= 4 * kWord; n -= 4 * kWord, d += 4 * kWord, s += 4 * kWord) {
    std::uint64_t a[4];
    std::uint64_t b[4];
    std::memcpy(a, d, sizeof a);
    std::memcpy(b, s, sizeof b);
    for (int i = 0; i < 4; ++i) a[i] ^= b[i];
    std::memcpy(d, a, sizeof a);
  }
  for (; n > 0; --n) *d++ ^= *s++;
}

}  // namespace butterfly
