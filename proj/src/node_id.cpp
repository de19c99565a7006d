#include "butterfly/node_id.hpp"

#include <algorithm>
#include <stdexcept>

#include "butterfly/errors.hpp"

namespace butterfly {

unsigned NodeId::slot(const CodeParams& params) const noexcept {
  switch (kind) {
    case Kind::Info:
      return index;
    case Kind::Horizontal:
      return params.user_columns();
    case Kind::Butterfly:
      break;
  }
  return params.user_columns() + 1;
}

NodeId NodeId::from_slot(const CodeParams& params, unsigned slot) {
  if (slot < params.user_columns()) return info(slot);
  if (slot == params.user_columns()) return horizontal();
  if (slot == params.user_columns() + 1) return butterfly();
  throw std::out_of_range("node slot " + std::to_string(slot) + " out of range");
}

std::string NodeId::to_string() const {
  switch (kind) {
    case Kind::Info:
      return "info" + std::to_string(index);
    case Kind::Horizontal:
      return "horizontal";
    case Kind::Butterfly:
      break;
  }
  return "butterfly";
}

std::vector<NodeId> stored_nodes(const CodeParams& params) {
  std::vector<NodeId> out;
  out.reserve(params.stored_nodes());
  for (unsigned s = 0; s < params.stored_nodes(); ++s) out.push_back(NodeId::from_slot(params, s));
  return out;
}

void validate_node(const CodeParams& params, NodeId node) {
  if (node.is_info() && node.index >= params.user_columns()) {
    throw std::invalid_argument("information node " + std::to_string(node.index) +
                                " is not a stored column (k_user = " +
                                std::to_string(params.user_columns()) + ")");
  }
}

ErasurePattern::ErasurePattern(std::initializer_list<NodeId> nodes) {
  for (NodeId n : nodes) add(n);
}

void ErasurePattern::add(NodeId node) {
  if (contains(node)) {
    throw std::invalid_argument("node " + node.to_string() + " listed twice in erasure pattern");
  }
  if (nodes_.size() == kMaxErasures) {
    throw UnrecoverableLoss("more than two nodes lost");
  }
  nodes_.insert(std::upper_bound(nodes_.begin(), nodes_.end(), node), node);
}

bool ErasurePattern::contains(NodeId node) const noexcept {
  return std::find(nodes_.begin(), nodes_.end(), node) != nodes_.end();
}

std::string ErasurePattern::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i) out += ", ";
    out += nodes_[i].to_string();
  }
  return out + "}";
}

std::vector<ErasurePattern> all_patterns(const CodeParams& params, std::size_t count) {
  const auto nodes = stored_nodes(params);
  std::vector<ErasurePattern> out;
  if (count == 1) {
    for (NodeId n : nodes) out.push_back({n});
  } else if (count == 2) {
    for (std::size_t a = 0; a < nodes.size(); ++a)
      for (std::size_t b = a + 1; b < nodes.size(); ++b) out.push_back({nodes[a], nodes[b]});
  } else {
    throw std::invalid_argument("erasure patterns have one or two nodes");
  }
  return out;
}

}  // namespace butterfly
