#pragma once

// On-disk shard header. Layout, little-endian, 30 octets:
//
//   offset  size  field
//   0       4     magic "BFLY"
//   4       2     format version
//   6       2     k_user
//   8       4     block_size
//   12      2     node tag (0..k_user-1 info, 0xFFFE horizontal, 0xFFFF butterfly)
//   14      8     stripe_count
//   22      8     original_length
//
// The header is followed by the node's column for every stripe in order,
// rows() * block_size octets per stripe.

#include <array>
#include <boost/crc.hpp>
#include <cstddef>
#include <cstdint>
#include <span>

#include "butterfly/node_id.hpp"

namespace butterfly::store {

inline constexpr std::array<std::uint8_t, 4> kShardMagic{'B', 'F', 'L', 'Y'};
inline constexpr std::uint16_t kShardVersion = 1;
inline constexpr std::size_t kShardHeaderSize = 30;
inline constexpr std::uint16_t kHorizontalTag = 0xFFFE;
inline constexpr std::uint16_t kButterflyTag = 0xFFFF;

std::uint16_t node_tag(NodeId node);
// Throws FormatError for a tag that names no node of a k_user-column code.
NodeId node_from_tag(std::uint16_t tag, unsigned k_user);

struct ShardHeader {
  std::uint16_t version = kShardVersion;
  std::uint16_t k_user = 0;
  std::uint32_t block_size = 0;
  NodeId node;
  std::uint64_t stripe_count = 0;
  std::uint64_t original_length = 0;

  std::array<std::uint8_t, kShardHeaderSize> serialize() const;
  // Throws FormatError on short input, bad magic, unknown version or an
  // invalid node tag.
  static ShardHeader parse(std::span<const std::uint8_t> bytes);

  friend bool operator==(const ShardHeader&, const ShardHeader&) = default;
};

// CRC-64/XZ, streaming.
class Checksum {
 public:
  void update(std::span<const std::uint8_t> bytes) { crc_.process_bytes(bytes.data(), bytes.size()); }
  std::uint64_t value() const { return crc_.checksum(); }

 private:
  boost::crc_optimal<64, 0x42F0E1EBA9EA3693ULL, ~0ULL, ~0ULL, true, true> crc_;
};

std::uint64_t checksum(std::span<const std::uint8_t> bytes);

}  // namespace butterfly::store
