#include "butterfly/stripe.hpp"

#include <algorithm>
#include <stdexcept>

#include "butterfly/errors.hpp"

namespace butterfly {

Stripe::Stripe(const CodeParams& params)
    : params_(params),
      bytes_(std::size_t{params.stored_nodes()} * params.rows() * params.block_size(), 0),
      present_(std::size_t{params.stored_nodes()} * params.rows(), 1),
      zeros_(params.block_size(), 0) {}

std::size_t Stripe::flag_index(NodeId node, Row row) const {
  validate_node(params_, node);
  if (row >= params_.rows()) {
    throw std::out_of_range("row " + std::to_string(row) + " outside stripe");
  }
  return std::size_t{node.slot(params_)} * params_.rows() + row;
}

std::size_t Stripe::offset(NodeId node, Row row) const {
  return flag_index(node, row) * params_.block_size();
}

std::span<const std::uint8_t> Stripe::info(Coord c) const {
  if (c.col >= params_.columns()) {
    throw std::out_of_range("column " + std::to_string(c.col) + " outside stripe");
  }
  if (params_.is_virtual(c.col)) {
    if (c.row >= params_.rows()) throw std::out_of_range("row outside stripe");
    return zeros_;
  }
  return block(NodeId::info(c.col), c.row);
}

std::span<const std::uint8_t> Stripe::block(NodeId node, Row row) const {
  const std::size_t flag = flag_index(node, row);
  if (!present_[flag]) {
    throw MissingElement("element " + std::to_string(row) + " of node " + node.to_string() +
                         " is not available");
  }
  return {bytes_.data() + flag * params_.block_size(), params_.block_size()};
}

std::span<const std::uint8_t> Stripe::parity(const ParityRef& p) const {
  return block(p.kind == ParityRef::Kind::Horizontal ? NodeId::horizontal() : NodeId::butterfly(), p.row);
}

std::span<std::uint8_t> Stripe::mutable_block(NodeId node, Row row) {
  const std::size_t flag = flag_index(node, row);
  present_[flag] = 1;
  return {bytes_.data() + flag * params_.block_size(), params_.block_size()};
}

std::span<const std::uint8_t> Stripe::column(NodeId node) const {
  if (!column_present(node)) {
    throw MissingElement("node " + node.to_string() + " is not fully available");
  }
  return {bytes_.data() + offset(node, 0), std::size_t{params_.rows()} * params_.block_size()};
}

std::span<std::uint8_t> Stripe::mutable_column(NodeId node) {
  const std::size_t first = flag_index(node, 0);
  std::fill_n(present_.begin() + static_cast<std::ptrdiff_t>(first), params_.rows(), 1);
  return {bytes_.data() + first * params_.block_size(), std::size_t{params_.rows()} * params_.block_size()};
}

bool Stripe::present(NodeId node, Row row) const { return present_[flag_index(node, row)] != 0; }

bool Stripe::column_present(NodeId node) const {
  const auto first = present_.begin() + static_cast<std::ptrdiff_t>(flag_index(node, 0));
  return std::all_of(first, first + params_.rows(), [](std::uint8_t f) { return f != 0; });
}

void Stripe::erase(NodeId node) {
  const std::size_t first = flag_index(node, 0);
  std::fill_n(present_.begin() + static_cast<std::ptrdiff_t>(first), params_.rows(), 0);
  std::fill_n(bytes_.begin() + static_cast<std::ptrdiff_t>(first * params_.block_size()),
              std::size_t{params_.rows()} * params_.block_size(), 0);
}

void Stripe::erase(const ErasurePattern& pattern) {
  for (NodeId n : pattern) erase(n);
}

Stripe Stripe::restricted_to(const std::map<NodeId, std::vector<Row>>& reads) const {
  Stripe out(params_);
  std::fill(out.present_.begin(), out.present_.end(), 0);
  std::fill(out.bytes_.begin(), out.bytes_.end(), 0);
  for (const auto& [node, rows] : reads) {
    for (Row r : rows) {
      const auto src = block(node, r);
      std::copy(src.begin(), src.end(), out.mutable_block(node, r).begin());
    }
  }
  return out;
}

bool Stripe::same_content(const Stripe& other) const {
  return params_ == other.params_ && bytes_ == other.bytes_;
}

}  // namespace butterfly
