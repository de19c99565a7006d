#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "butterfly/code_params.hpp"
#include "butterfly/node_id.hpp"

namespace butterfly::store {

inline constexpr std::string_view kManifestFileName = "manifest.txt";

struct ShardEntry {
  NodeId node;
  std::string file;
  std::uint64_t digest = 0;  // checksum() of the whole shard file

  friend bool operator==(const ShardEntry&, const ShardEntry&) = default;
};

// Sidecar describing one encoded file. Stored as "key=value" lines:
//
//   format_version=1
//   k_user=4
//   block_size=4096
//   stripe_count=4
//   original_name=photo.jpg
//   original_length=1048576
//   shard.info.0=info_00.bfly 9f2c...        (file name, 16 hex digit digest)
//   shard.horizontal=horizontal.bfly 01ab...
//   shard.butterfly=butterfly.bfly 77d0...
//
// Lines starting with '#' and blank lines are ignored.
struct Manifest {
  static constexpr unsigned kFormatVersion = 1;

  unsigned k_user = 0;
  std::size_t block_size = 0;
  std::uint64_t stripe_count = 0;
  std::string original_name;
  std::uint64_t original_length = 0;
  std::vector<ShardEntry> shards;  // slot order

  CodeParams params() const { return CodeParams(k_user, block_size); }
  // Throws std::out_of_range when the node has no entry.
  const ShardEntry& shard(NodeId node) const;
  ShardEntry& shard(NodeId node);

  std::string to_text() const;
  // Throws FormatError on unknown keys, bad numbers, a missing field or a
  // shard list that does not cover exactly k_user + 2 nodes.
  static Manifest parse(std::string_view text);

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

}  // namespace butterfly::store
