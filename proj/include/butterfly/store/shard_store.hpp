#pragma once

// Maps byte streams onto stripes and stripes onto shard files, one file per
// stored node. Within a stripe, user bytes fill information column 0 top to
// bottom, then column 1, and so on, so each information shard holds
// contiguous slices of the original file.

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "butterfly/codec.hpp"
#include "butterfly/node_id.hpp"
#include "butterfly/store/manifest.hpp"
#include "butterfly/store/shard_format.hpp"
#include "butterfly/stripe.hpp"

namespace butterfly::store {

// "info_00.bfly", "horizontal.bfly", "butterfly.bfly".
std::string shard_file_name(NodeId node);

// Splits `bytes` into stripes of params.stripe_payload() octets, zero-padding
// the last one. Parity columns are left zero; run ButterflyCode::encode.
std::vector<Stripe> chunk_file(std::span<const std::uint8_t> bytes, const CodeParams& params);

// Concatenates the information columns and truncates to original_length.
std::vector<std::uint8_t> assemble_file(std::span<const Stripe> stripes, std::uint64_t original_length);

// Writes one shard per stored node plus the manifest into `dir` (created if
// needed). Stripes must be encoded.
Manifest write_shards(std::span<const Stripe> stripes, const CodeParams& params, const std::filesystem::path& dir,
                      std::string_view original_name, std::uint64_t original_length);

struct ShardSet {
  std::filesystem::path dir;
  Manifest manifest;
  ErasurePattern missing;
};

// Reads the manifest and checks every shard that exists: header fields must
// agree with the manifest and the file size with the stripe count; with
// verify_digests, the file checksum must match too. Missing shard files form
// the erasure pattern. Throws UnrecoverableLoss for more than two missing,
// FormatError / DigestMismatch for bad shards, IoError for I/O failures.
ShardSet read_available(const std::filesystem::path& dir, bool verify_digests = true);

// Every stripe of the set, with the missing nodes absent.
std::vector<Stripe> load_stripes(const ShardSet& set);

// Payload octets read per node; header reads counted separately.
struct ReadAccounting {
  std::map<NodeId, std::uint64_t> payload_bytes;
  std::uint64_t header_bytes = 0;

  std::uint64_t total_payload() const;
};

struct RepairOutcome {
  NodeId node;
  RepairPlan plan;
  std::uint64_t stripe_count = 0;
  ReadAccounting reads;
  std::uint64_t digest = 0;
  bool digest_matches = false;
};

// Rebuilds the single missing shard of `dir`, reading from each surviving
// shard only the blocks named by the repair plan. Surviving shard digests
// are not checked, since that would mean reading them in full. Throws
// std::invalid_argument unless exactly one shard is missing.
RepairOutcome repair_shard(const std::filesystem::path& dir);

// Writes the shards of `set.missing` from fully decoded stripes and returns
// the nodes whose digest disagrees with the manifest (empty on success).
std::vector<NodeId> rebuild_missing(const ShardSet& set, std::span<const Stripe> stripes);

}  // namespace butterfly::store
