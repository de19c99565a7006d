#include "butterfly/store/shard_store.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "butterfly/errors.hpp"

namespace butterfly::store {

namespace fs = std::filesystem;

namespace {

std::size_t column_bytes(const CodeParams& params) {
  return std::size_t{params.rows()} * params.block_size();
}

ShardHeader header_for(const Manifest& m, NodeId node) {
  ShardHeader h;
  h.k_user = static_cast<std::uint16_t>(m.k_user);
  h.block_size = static_cast<std::uint32_t>(m.block_size);
  h.node = node;
  h.stripe_count = m.stripe_count;
  h.original_length = m.original_length;
  return h;
}

// Writes to "<name>.tmp" and renames on finish, so a crash never leaves a
// plausible-looking partial shard.
class ShardWriter {
 public:
  ShardWriter(fs::path path, const ShardHeader& header) : path_(std::move(path)), tmp_(path_) {
    tmp_ += ".tmp";
    out_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!out_) throw IoError("cannot create " + tmp_.string());
    const auto bytes = header.serialize();
    append(bytes);
  }

  void append(std::span<const std::uint8_t> bytes) {
    out_.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out_) throw IoError("write failed on " + tmp_.string());
    crc_.update(bytes);
  }

  std::uint64_t finish() {
    out_.close();
    if (!out_) throw IoError("close failed on " + tmp_.string());
    std::error_code ec;
    fs::rename(tmp_, path_, ec);
    if (ec) throw IoError("cannot rename " + tmp_.string() + ": " + ec.message());
    return crc_.value();
  }

 private:
  fs::path path_;
  fs::path tmp_;
  std::ofstream out_;
  Checksum crc_;
};

// Random access to one shard's payload with byte accounting.
class ShardReader {
 public:
  ShardReader(const fs::path& path, const CodeParams& params) : params_(params) {
    in_.open(path, std::ios::binary);
    if (!in_) throw IoError("cannot open " + path.string());
    path_ = path;
  }

  ShardHeader read_header() {
    std::array<std::uint8_t, kShardHeaderSize> bytes{};
    read_at(0, bytes);
    return ShardHeader::parse(bytes);
  }

  void read_block(std::uint64_t stripe, Row row, std::span<std::uint8_t> out) {
    const std::uint64_t offset = kShardHeaderSize + stripe * column_bytes(params_) +
                                 std::uint64_t{row} * params_.block_size();
    read_at(offset, out);
    payload_bytes_ += out.size();
  }

  void read_column(std::uint64_t stripe, std::span<std::uint8_t> out) {
    read_at(kShardHeaderSize + stripe * column_bytes(params_), out);
    payload_bytes_ += out.size();
  }

  std::uint64_t payload_bytes() const { return payload_bytes_; }

 private:
  void read_at(std::uint64_t offset, std::span<std::uint8_t> out) {
    in_.seekg(static_cast<std::streamoff>(offset));
    in_.read(reinterpret_cast<char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!in_) throw FormatError("short read in " + path_.string());
  }

  CodeParams params_;
  fs::path path_;
  std::ifstream in_;
  std::uint64_t payload_bytes_ = 0;
};

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_manifest(const fs::path& dir, const Manifest& m) {
  const fs::path path = dir / kManifestFileName;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << m.to_text();
  out.close();
  if (!out) throw IoError("cannot write " + path.string());
}

std::uint64_t file_checksum(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  Checksum crc;
  std::vector<std::uint8_t> buf(1 << 16);
  while (in) {
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    crc.update(std::span(buf.data(), static_cast<std::size_t>(in.gcount())));
  }
  return crc.value();
}

void check_shard(const ShardSet& set, const ShardEntry& entry, bool verify_digest) {
  const fs::path path = set.dir / entry.file;
  const CodeParams params = set.manifest.params();
  ShardReader reader(path, params);
  const ShardHeader header = reader.read_header();
  if (!(header == header_for(set.manifest, entry.node))) {
    throw FormatError("shard " + entry.file + " header does not match the manifest");
  }
  const std::uint64_t expected = kShardHeaderSize + set.manifest.stripe_count * column_bytes(params);
  if (fs::file_size(path) != expected) {
    throw FormatError("shard " + entry.file + " has " + std::to_string(fs::file_size(path)) +
                      " octets, expected " + std::to_string(expected));
  }
  if (verify_digest && file_checksum(path) != entry.digest) {
    throw DigestMismatch("shard " + entry.file + " digest does not match the manifest");
  }
}

}  // namespace

std::string shard_file_name(NodeId node) {
  switch (node.kind) {
    case NodeId::Kind::Info: {
      std::ostringstream name;
      name << "info_" << std::setw(2) << std::setfill('0') << node.index << ".bfly";
      return name.str();
    }
    case NodeId::Kind::Horizontal:
      return "horizontal.bfly";
    case NodeId::Kind::Butterfly:
      break;
  }
  return "butterfly.bfly";
}

std::vector<Stripe> chunk_file(std::span<const std::uint8_t> bytes, const CodeParams& params) {
  const std::size_t payload = params.stripe_payload();
  const std::size_t column = column_bytes(params);
  const std::size_t count = (bytes.size() + payload - 1) / payload;
  std::vector<Stripe> stripes;
  stripes.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    Stripe& stripe = stripes.emplace_back(params);
    for (Column j = 0; j < params.user_columns(); ++j) {
      const std::size_t begin = std::min(bytes.size(), s * payload + j * column);
      const std::size_t end = std::min(bytes.size(), begin + column);
      std::copy(bytes.begin() + static_cast<std::ptrdiff_t>(begin), bytes.begin() + static_cast<std::ptrdiff_t>(end),
                stripe.mutable_column(NodeId::info(j)).begin());
    }
  }
  return stripes;
}

std::vector<std::uint8_t> assemble_file(std::span<const Stripe> stripes, std::uint64_t original_length) {
  std::vector<std::uint8_t> out;
  if (!stripes.empty()) out.reserve(stripes.size() * stripes.front().params().stripe_payload());
  for (const Stripe& s : stripes) {
    for (Column j = 0; j < s.params().user_columns(); ++j) {
      const auto col = s.column(NodeId::info(j));
      out.insert(out.end(), col.begin(), col.end());
    }
  }
  if (original_length > out.size()) {
    throw FormatError("stripes hold " + std::to_string(out.size()) + " octets, manifest says " +
                      std::to_string(original_length));
  }
  out.resize(original_length);
  return out;
}

Manifest write_shards(std::span<const Stripe> stripes, const CodeParams& params, const fs::path& dir,
                      std::string_view original_name, std::uint64_t original_length) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  Manifest m;
  m.k_user = params.user_columns();
  m.block_size = params.block_size();
  m.stripe_count = stripes.size();
  m.original_name = std::string(original_name);
  m.original_length = original_length;
  for (NodeId node : stored_nodes(params)) {
    ShardEntry entry{node, shard_file_name(node), 0};
    ShardWriter writer(dir / entry.file, header_for(m, node));
    for (const Stripe& s : stripes) writer.append(s.column(node));
    entry.digest = writer.finish();
    m.shards.push_back(std::move(entry));
  }
  write_manifest(dir, m);
  return m;
}

ShardSet read_available(const fs::path& dir, bool verify_digests) {
  ShardSet set;
  set.dir = dir;
  set.manifest = Manifest::parse(read_text(dir / kManifestFileName));
  for (const ShardEntry& entry : set.manifest.shards) {
    if (!fs::exists(dir / entry.file)) {
      set.missing.add(entry.node);
      continue;
    }
    check_shard(set, entry, verify_digests);
  }
  return set;
}

std::vector<Stripe> load_stripes(const ShardSet& set) {
  const CodeParams params = set.manifest.params();
  std::vector<Stripe> stripes;
  stripes.reserve(set.manifest.stripe_count);
  for (std::uint64_t s = 0; s < set.manifest.stripe_count; ++s) stripes.emplace_back(params).erase(set.missing);
  for (const ShardEntry& entry : set.manifest.shards) {
    if (set.missing.contains(entry.node)) continue;
    ShardReader reader(set.dir / entry.file, params);
    for (std::uint64_t s = 0; s < set.manifest.stripe_count; ++s) {
      reader.read_column(s, stripes[s].mutable_column(entry.node));
    }
  }
  return stripes;
}

std::uint64_t ReadAccounting::total_payload() const {
  std::uint64_t total = 0;
  for (const auto& [node, bytes] : payload_bytes) total += bytes;
  return total;
}

RepairOutcome repair_shard(const fs::path& dir) {
  const ShardSet set = read_available(dir, false);
  if (set.missing.size() != 1) {
    throw std::invalid_argument("single-shard repair needs exactly one missing shard, found " +
                                std::to_string(set.missing.size()));
  }
  const CodeParams params = set.manifest.params();
  const ButterflyCode code(params);

  RepairOutcome outcome;
  outcome.node = set.missing.nodes().front();
  outcome.plan = code.repair_plan(outcome.node);
  outcome.stripe_count = set.manifest.stripe_count;

  std::map<NodeId, ShardReader> readers;
  for (const auto& [node, rows] : outcome.plan.reads) {
    if (rows.empty()) continue;
    auto& reader = readers.try_emplace(node, dir / set.manifest.shard(node).file, params).first->second;
    (void)reader.read_header();
    outcome.reads.header_bytes += kShardHeaderSize;
  }

  const ShardEntry& entry = set.manifest.shard(outcome.node);
  ShardWriter writer(dir / entry.file, header_for(set.manifest, outcome.node));
  for (std::uint64_t s = 0; s < set.manifest.stripe_count; ++s) {
    Stripe stripe(params);
    for (NodeId n : stored_nodes(params)) stripe.erase(n);
    for (const auto& [node, rows] : outcome.plan.reads) {
      for (Row r : rows) readers.at(node).read_block(s, r, stripe.mutable_block(node, r));
    }
    code.repair(stripe, outcome.node);
    writer.append(stripe.column(outcome.node));
  }
  outcome.digest = writer.finish();
  outcome.digest_matches = outcome.digest == entry.digest;
  for (const auto& [node, reader] : readers) outcome.reads.payload_bytes[node] = reader.payload_bytes();
  return outcome;
}

std::vector<NodeId> rebuild_missing(const ShardSet& set, std::span<const Stripe> stripes) {
  std::vector<NodeId> mismatched;
  for (NodeId node : set.missing) {
    const ShardEntry& entry = set.manifest.shard(node);
    ShardWriter writer(set.dir / entry.file, header_for(set.manifest, node));
    for (const Stripe& s : stripes) writer.append(s.column(node));
    if (writer.finish() != entry.digest) mismatched.push_back(node);
  }
  return mismatched;
}

}  // namespace butterfly::store
