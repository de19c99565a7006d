#include "butterfly/store/manifest.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "butterfly/errors.hpp"

namespace butterfly::store {

namespace {

std::string shard_key(NodeId node) {
  switch (node.kind) {
    case NodeId::Kind::Info:
      return "shard.info." + std::to_string(node.index);
    case NodeId::Kind::Horizontal:
      return "shard.horizontal";
    case NodeId::Kind::Butterfly:
      break;
  }
  return "shard.butterfly";
}

template <typename T>
T parse_number(std::string_view key, std::string_view text, int base = 10) {
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw FormatError("manifest: bad value for " + std::string(key) + ": '" + std::string(text) + "'");
  }
  return value;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << v;
  return out.str();
}

}  // namespace

const ShardEntry& Manifest::shard(NodeId node) const {
  const auto it = std::find_if(shards.begin(), shards.end(), [&](const ShardEntry& e) { return e.node == node; });
  if (it == shards.end()) throw std::out_of_range("manifest has no shard for " + node.to_string());
  return *it;
}

ShardEntry& Manifest::shard(NodeId node) {
  return const_cast<ShardEntry&>(std::as_const(*this).shard(node));
}

std::string Manifest::to_text() const {
  std::ostringstream out;
  out << "# butterfly shard manifest\n"
      << "format_version=" << kFormatVersion << '\n'
      << "k_user=" << k_user << '\n'
      << "block_size=" << block_size << '\n'
      << "stripe_count=" << stripe_count << '\n'
      << "original_name=" << original_name << '\n'
      << "original_length=" << original_length << '\n';
  for (const ShardEntry& e : shards) out << shard_key(e.node) << '=' << e.file << ' ' << hex64(e.digest) << '\n';
  return out.str();
}

Manifest Manifest::parse(std::string_view text) {
  std::map<std::string, std::string, std::less<>> fields;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("manifest: line without '=': " + line);
    if (!fields.emplace(line.substr(0, eq), line.substr(eq + 1)).second) {
      throw FormatError("manifest: duplicate key " + line.substr(0, eq));
    }
  }

  auto take = [&](std::string_view key) {
    const auto it = fields.find(key);
    if (it == fields.end()) throw FormatError("manifest: missing " + std::string(key));
    std::string value = it->second;
    fields.erase(it);
    return value;
  };

  const auto version = parse_number<unsigned>("format_version", take("format_version"));
  if (version != kFormatVersion) {
    throw FormatError("manifest: unsupported format version " + std::to_string(version));
  }
  Manifest m;
  m.k_user = parse_number<unsigned>("k_user", take("k_user"));
  m.block_size = parse_number<std::size_t>("block_size", take("block_size"));
  m.stripe_count = parse_number<std::uint64_t>("stripe_count", take("stripe_count"));
  m.original_name = take("original_name");
  m.original_length = parse_number<std::uint64_t>("original_length", take("original_length"));
  try {
    (void)m.params();
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("manifest: ") + e.what());
  }

  for (NodeId node : stored_nodes(m.params())) {
    const std::string key = shard_key(node);
    const std::string value = take(key);
    const auto space = value.rfind(' ');
    if (space == std::string::npos || space == 0) throw FormatError("manifest: bad shard entry " + key);
    m.shards.push_back({node, value.substr(0, space),
                        parse_number<std::uint64_t>(key, std::string_view(value).substr(space + 1), 16)});
  }
  if (!fields.empty()) throw FormatError("manifest: unexpected key " + fields.begin()->first);
  return m;
}

}  // namespace butterfly::store
