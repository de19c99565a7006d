#pragma once

#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

#include "butterfly/code_params.hpp"

namespace butterfly {

// Identifies one stored node of a stripe.
struct NodeId {
  enum class Kind : unsigned char { Info, Horizontal, Butterfly };

  Kind kind = Kind::Info;
  Column index = 0;  // meaningful for Info only

  static constexpr NodeId info(Column j) noexcept { return {Kind::Info, j}; }
  static constexpr NodeId horizontal() noexcept { return {Kind::Horizontal, 0}; }
  static constexpr NodeId butterfly() noexcept { return {Kind::Butterfly, 0}; }

  bool is_info() const noexcept { return kind == Kind::Info; }
  bool is_parity() const noexcept { return kind != Kind::Info; }

  // Position among the stored nodes: info columns first, then horizontal,
  // then butterfly.
  unsigned slot(const CodeParams& params) const noexcept;
  static NodeId from_slot(const CodeParams& params, unsigned slot);

  std::string to_string() const;

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

// Every stored node of a code, in slot order.
std::vector<NodeId> stored_nodes(const CodeParams& params);

// Throws std::invalid_argument if the node does not exist in this code.
void validate_node(const CodeParams& params, NodeId node);

// A set of at most two distinct failed nodes, kept sorted.
class ErasurePattern {
 public:
  ErasurePattern() = default;
  ErasurePattern(std::initializer_list<NodeId> nodes);

  void add(NodeId node);
  bool contains(NodeId node) const noexcept;
  std::size_t size() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }
  const std::vector<NodeId>& nodes() const noexcept { return nodes_; }
  auto begin() const noexcept { return nodes_.begin(); }
  auto end() const noexcept { return nodes_.end(); }

  std::string to_string() const;

  friend bool operator==(const ErasurePattern&, const ErasurePattern&) = default;

  static constexpr std::size_t kMaxErasures = 2;

 private:
  std::vector<NodeId> nodes_;
};

// All patterns of exactly `count` failed stored nodes (count 1 or 2).
std::vector<ErasurePattern> all_patterns(const CodeParams& params, std::size_t count);

}  // namespace butterfly
