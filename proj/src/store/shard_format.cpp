#include "butterfly/store/shard_format.hpp"

#include <algorithm>
#include <string>

#include "butterfly/errors.hpp"

namespace butterfly::store {

namespace {

template <typename T>
void put_le(std::uint8_t* out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out[i] = static_cast<std::uint8_t>(value >> (8 * i));
}

template <typename T>
T get_le(const std::uint8_t* in) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(T{in[i]} << (8 * i));
  return value;
}

}  // namespace

std::uint16_t node_tag(NodeId node) {
  switch (node.kind) {
    case NodeId::Kind::Info:
      return static_cast<std::uint16_t>(node.index);
    case NodeId::Kind::Horizontal:
      return kHorizontalTag;
    case NodeId::Kind::Butterfly:
      break;
  }
  return kButterflyTag;
}

NodeId node_from_tag(std::uint16_t tag, unsigned k_user) {
  if (tag == kHorizontalTag) return NodeId::horizontal();
  if (tag == kButterflyTag) return NodeId::butterfly();
  if (tag < k_user) return NodeId::info(tag);
  throw FormatError("node tag " + std::to_string(tag) + " is invalid for k_user = " + std::to_string(k_user));
}

std::array<std::uint8_t, kShardHeaderSize> ShardHeader::serialize() const {
  std::array<std::uint8_t, kShardHeaderSize> out{};
  std::copy(kShardMagic.begin(), kShardMagic.end(), out.begin());
  put_le(out.data() + 4, version);
  put_le(out.data() + 6, k_user);
  put_le(out.data() + 8, block_size);
  put_le(out.data() + 12, node_tag(node));
  put_le(out.data() + 14, stripe_count);
  put_le(out.data() + 22, original_length);
  return out;
}

ShardHeader ShardHeader::parse(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kShardHeaderSize) throw FormatError("shard header truncated");
  if (!std::equal(kShardMagic.begin(), kShardMagic.end(), bytes.begin())) {
    throw FormatError("not a shard file (bad magic)");
  }
  ShardHeader h;
  h.version = get_le<std::uint16_t>(bytes.data() + 4);
  if (h.version != kShardVersion) {
    throw FormatError("unsupported shard format version " + std::to_string(h.version));
  }
  h.k_user = get_le<std::uint16_t>(bytes.data() + 6);
  h.block_size = get_le<std::uint32_t>(bytes.data() + 8);
  h.node = node_from_tag(get_le<std::uint16_t>(bytes.data() + 12), h.k_user);
  h.stripe_count = get_le<std::uint64_t>(bytes.data() + 14);
  h.original_length = get_le<std::uint64_t>(bytes.data() + 22);
  return h;
}

std::uint64_t checksum(std::span<const std::uint8_t> bytes) {
  Checksum crc;
  crc.update(bytes);
  return crc.value();
}

}  // namespace butterfly::store
