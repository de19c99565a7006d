#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "butterfly/code_params.hpp"
#include "butterfly/construction.hpp"
#include "butterfly/node_id.hpp"

namespace butterfly {

// One codeword: k_user information columns plus the horizontal and butterfly
// columns, each rows() blocks of block_size() octets. Every block carries a
// presence flag so a stripe can model partial reads and erased nodes;
// reading an absent block throws MissingElement.
//
// The virtual column (even k_user) is not stored. Reading it yields zeros.
class Stripe {
 public:
  // Zero-filled, every block present.
  explicit Stripe(const CodeParams& params);

  const CodeParams& params() const noexcept { return params_; }

  // Information element; zeros for the virtual column.
  std::span<const std::uint8_t> info(Coord c) const;
  std::span<const std::uint8_t> block(NodeId node, Row row) const;
  std::span<const std::uint8_t> parity(const ParityRef& p) const;

  // Writable access; marks the block present.
  std::span<std::uint8_t> mutable_block(NodeId node, Row row);

  // Whole column (rows * block_size octets, row order). The const form
  // requires every block present.
  std::span<const std::uint8_t> column(NodeId node) const;
  std::span<std::uint8_t> mutable_column(NodeId node);

  bool present(NodeId node, Row row) const;
  bool column_present(NodeId node) const;

  // Zero the column and mark every block absent.
  void erase(NodeId node);
  void erase(const ErasurePattern& pattern);

  // Copy in which only the listed rows of the listed nodes are present.
  Stripe restricted_to(const std::map<NodeId, std::vector<Row>>& reads) const;

  // Content equality over all stored columns; presence is ignored.
  bool same_content(const Stripe& other) const;

 private:
  std::size_t offset(NodeId node, Row row) const;
  std::size_t flag_index(NodeId node, Row row) const;

  CodeParams params_;
  std::vector<std::uint8_t> bytes_;
  std::vector<std::uint8_t> present_;
  std::vector<std::uint8_t> zeros_;
};

}  // namespace butterfly
