#pragma once

#include <cstdint>
#include <span>

namespace butterfly {

// dst ^= src, octet-wise. Throws std::invalid_argument on a length mismatch.
void xor_blocks(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src);

}  // namespace butterfly
