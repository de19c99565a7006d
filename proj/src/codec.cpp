#include "butterfly/codec.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>

#include "butterfly/errors.hpp"
#include "butterfly/xor_blocks.hpp"

namespace butterfly {

namespace {

void copy_block(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
  std::copy(src.begin(), src.end(), dst.begin());
}

// Records the iteration in which each element of the failed columns was
// recovered, and checks every cross-row use of a recovered element: the
// producing iteration must differ from the current one in exactly one bit,
// and that bit must be set in the current iteration.
class OrderTracker {
 public:
  OrderTracker(std::vector<Column> columns, Row rows, DecodeStats& stats)
      : columns_(std::move(columns)), produced_(columns_.size() * rows, -1), rows_(rows), stats_(stats) {}

  void begin(std::uint32_t iteration, std::initializer_list<Row> rows) {
    iteration_ = iteration;
    current_.assign(rows.begin(), rows.end());
  }

  bool tracks(Column col) const {
    return std::find(columns_.begin(), columns_.end(), col) != columns_.end();
  }

  void produced(Coord c) { produced_[index(c)] = iteration_; }

  void consume(Coord c) {
    if (!tracks(c.col)) return;
    if (std::find(current_.begin(), current_.end(), c.row) != current_.end()) return;
    const std::int64_t at = produced_[index(c)];
    if (at < 0) {
      throw DecodeOrderViolation("iteration " + std::to_string(iteration_) + " needs " + to_string(c) +
                                 ", which has not been recovered yet");
    }
    const auto diff = static_cast<std::uint32_t>(at) ^ iteration_;
    if (std::popcount(diff) != 1 || (iteration_ & diff) == 0) {
      throw DecodeOrderViolation("iteration " + std::to_string(iteration_) + " uses " + to_string(c) +
                                 " from iteration " + std::to_string(at) +
                                 ", which is not an immediate predecessor");
    }
    ++stats_.dependencies_checked;
  }

 private:
  std::size_t index(Coord c) const {
    const auto pos = std::find(columns_.begin(), columns_.end(), c.col) - columns_.begin();
    return static_cast<std::size_t>(pos) * rows_ + c.row;
  }

  std::vector<Column> columns_;
  std::vector<std::int64_t> produced_;
  Row rows_;
  DecodeStats& stats_;
  std::uint32_t iteration_ = 0;
  std::vector<Row> current_;
};

}  // namespace

std::size_t RepairPlan::elements_read() const {
  std::size_t total = 0;
  for (const auto& [node, rows] : reads) total += rows.size();
  return total;
}

ButterflyCode::ButterflyCode(const CodeParams& params) : params_(params) {
  sets_.reserve(params.rows());
  for (Row r = 0; r < params.rows(); ++r) sets_.push_back(butterfly::butterfly_set(params, r));
}

void ButterflyCode::check_stripe(const Stripe& stripe) const {
  if (!(stripe.params() == params_)) {
    throw std::invalid_argument("stripe geometry does not match the code");
  }
}

void ButterflyCode::encode(Stripe& stripe) const {
  encode_horizontal(stripe);
  encode_butterfly(stripe);
}

void ButterflyCode::encode_horizontal(Stripe& stripe) const {
  check_stripe(stripe);
  for (Row r = 0; r < params_.rows(); ++r) {
    auto h = stripe.mutable_block(NodeId::horizontal(), r);
    std::fill(h.begin(), h.end(), 0);
    for (Column j = 0; j < params_.user_columns(); ++j) xor_blocks(h, stripe.info({r, j}));
  }
}

void ButterflyCode::encode_butterfly(Stripe& stripe) const {
  check_stripe(stripe);
  for (Row r = 0; r < params_.rows(); ++r) {
    auto b = stripe.mutable_block(NodeId::butterfly(), r);
    std::fill(b.begin(), b.end(), 0);
    for (Coord c : sets_[r]) {
      if (!params_.is_virtual(c.col)) xor_blocks(b, stripe.info(c));
    }
  }
}

RepairPlan ButterflyCode::repair_plan(NodeId failed) const {
  validate_node(params_, failed);
  RepairPlan plan;
  plan.failed = failed;
  for (NodeId n : stored_nodes(params_)) {
    if (n != failed) plan.reads[n];
  }

  if (failed.is_parity()) {
    plan.reencode = true;
    std::vector<Row> all(params_.rows());
    for (Row r = 0; r < params_.rows(); ++r) all[r] = r;
    for (Column j = 0; j < params_.user_columns(); ++j) plan.reads[NodeId::info(j)] = all;
    return plan;
  }

  const Column col = failed.index;
  std::vector<RepairStep> white;
  for (Row r = 0; r < params_.rows(); ++r) {
    RepairStep step;
    step.target = {r, col};
    if (is_dark(params_, r, col)) {
      step.method = RecoveryMethod::Horizontal;
      step.parity_row = r;
      for (Column j = 0; j < params_.user_columns(); ++j) {
        if (j != col) step.terms.push_back({r, j});
      }
      plan.steps.push_back(std::move(step));
    } else {
      step.method = RecoveryMethod::Butterfly;
      step.parity_row = line_index(r, col);
      for (Coord c : sets_[step.parity_row]) {
        if (c != step.target && !params_.is_virtual(c.col)) step.terms.push_back(c);
      }
      white.push_back(std::move(step));
    }
  }
  std::move(white.begin(), white.end(), std::back_inserter(plan.steps));

  for (const RepairStep& step : plan.steps) {
    const NodeId parity_node =
        step.method == RecoveryMethod::Horizontal ? NodeId::horizontal() : NodeId::butterfly();
    plan.reads[parity_node].push_back(step.parity_row);
    for (Coord c : step.terms) {
      if (c.col != col) plan.reads[NodeId::info(c.col)].push_back(c.row);
    }
  }
  for (auto& [node, rows] : plan.reads) {
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  }
  return plan;
}

void ButterflyCode::repair(Stripe& stripe, NodeId failed) const {
  check_stripe(stripe);
  const RepairPlan plan = repair_plan(failed);
  stripe.erase(failed);
  if (plan.reencode) {
    if (failed.kind == NodeId::Kind::Horizontal) {
      encode_horizontal(stripe);
    } else {
      encode_butterfly(stripe);
    }
    return;
  }
  for (const RepairStep& step : plan.steps) {
    const NodeId parity_node =
        step.method == RecoveryMethod::Horizontal ? NodeId::horizontal() : NodeId::butterfly();
    // Read every source before touching the target so a missing element
    // leaves the target absent.
    std::vector<std::uint8_t> acc(stripe.block(parity_node, step.parity_row).begin(),
                                  stripe.block(parity_node, step.parity_row).end());
    for (Coord c : step.terms) xor_blocks(acc, stripe.info(c));
    copy_block(stripe.mutable_block(failed, step.target.row), acc);
  }
}

void ButterflyCode::recover_from_horizontal(Stripe& stripe, Row row, Column col) const {
  std::vector<std::uint8_t> acc(stripe.block(NodeId::horizontal(), row).begin(),
                                stripe.block(NodeId::horizontal(), row).end());
  for (Column j = 0; j < params_.user_columns(); ++j) {
    if (j != col) xor_blocks(acc, stripe.info({row, j}));
  }
  copy_block(stripe.mutable_block(NodeId::info(col), row), acc);
}

DecodeStats ButterflyCode::decode(Stripe& stripe, const ErasurePattern& pattern) const {
  check_stripe(stripe);
  for (NodeId n : pattern) validate_node(params_, n);
  for (NodeId n : stored_nodes(params_)) {
    if (!pattern.contains(n) && !stripe.column_present(n)) {
      throw MissingElement("node " + n.to_string() + " is outside the erasure pattern " +
                           pattern.to_string() + " but not fully available");
    }
  }

  DecodeStats stats;
  if (pattern.empty()) return stats;
  if (pattern.size() == 1) {
    repair(stripe, pattern.nodes().front());
    return stats;
  }

  stripe.erase(pattern);
  // Sorted order: info nodes come first, then horizontal, then butterfly.
  const NodeId first = pattern.nodes()[0];
  const NodeId second = pattern.nodes()[1];

  if (first.is_parity()) {
    encode(stripe);
  } else if (second.kind == NodeId::Kind::Butterfly) {
    for (Row r = 0; r < params_.rows(); ++r) recover_from_horizontal(stripe, r, first.index);
    encode_butterfly(stripe);
  } else if (second.kind == NodeId::Kind::Horizontal) {
    decode_with_horizontal(stripe, first.index, stats);
    encode_horizontal(stripe);
  } else {
    decode_two_info(stripe, first.index, second.index, stats);
  }
  return stats;
}

void ButterflyCode::decode_with_horizontal(Stripe& stripe, Column col, DecodeStats& stats) const {
  OrderTracker order({col}, params_.rows(), stats);
  const NodeId node = NodeId::info(col);
  for (std::uint32_t t = 0; t < params_.rows(); ++t) {
    const Row row = find_row_single(params_, t, col);
    const Row line = line_index(row, col);
    order.begin(t, {row});
    std::vector<std::uint8_t> acc(stripe.block(NodeId::butterfly(), line).begin(),
                                  stripe.block(NodeId::butterfly(), line).end());
    for (Coord c : sets_[line]) {
      if (c == Coord{row, col} || params_.is_virtual(c.col)) continue;
      order.consume(c);
      xor_blocks(acc, stripe.info(c));
    }
    copy_block(stripe.mutable_block(node, row), acc);
    order.produced({row, col});
  }
}

void ButterflyCode::decode_two_info(Stripe& stripe, Column a, Column b, DecodeStats& stats) const {
  const ColumnPair pair = order_pair(params_, a, b);
  const Column j0 = pair.first;
  const Column j1 = pair.second;
  OrderTracker order({j0, j1}, params_.rows(), stats);

  auto horizontal_sum = [&](std::vector<std::uint8_t>& acc, Row row, std::initializer_list<Column> skip) {
    xor_blocks(acc, stripe.block(NodeId::horizontal(), row));
    for (Column j = 0; j < params_.user_columns(); ++j) {
      if (std::find(skip.begin(), skip.end(), j) != skip.end()) continue;
      order.consume({row, j});
      xor_blocks(acc, stripe.info({row, j}));
    }
  };
  auto butterfly_sum = [&](std::vector<std::uint8_t>& acc, Row line, std::initializer_list<Coord> skip) {
    xor_blocks(acc, stripe.block(NodeId::butterfly(), line));
    for (Coord c : sets_[line]) {
      if (params_.is_virtual(c.col) || std::find(skip.begin(), skip.end(), c) != skip.end()) continue;
      order.consume(c);
      xor_blocks(acc, stripe.info(c));
    }
  };
  auto store = [&](Coord c, const std::vector<std::uint8_t>& acc) {
    copy_block(stripe.mutable_block(NodeId::info(c.col), c.row), acc);
    order.produced(c);
  };

  std::vector<std::uint8_t> acc(params_.block_size());
  for (std::uint32_t t = 0; t < params_.rows() / 2; ++t) {
    const RowPair rows = find_rows_pair(params_, t, pair);
    const Row i0 = rows.dark;
    const Row i1 = rows.white;
    order.begin(t, {i0, i1});

    // h_{i0} leaves a_{i0,j0} + a_{i0,j1}; the line through (i1, j0) holds
    // the same two elements because i0 is dark at j1. Their sum cancels.
    std::fill(acc.begin(), acc.end(), 0);
    horizontal_sum(acc, i0, {j0, j1});
    butterfly_sum(acc, line_index(i1, j0), {{i1, j0}, {i0, j0}, {i0, j1}});
    store({i1, j0}, acc);

    std::fill(acc.begin(), acc.end(), 0);
    horizontal_sum(acc, i1, {j1});
    store({i1, j1}, acc);

    // i1 is white at j1, so the line through (i0, j0) meets column j1 only
    // at the element just recovered.
    std::fill(acc.begin(), acc.end(), 0);
    butterfly_sum(acc, line_index(i0, j0), {{i0, j0}});
    store({i0, j0}, acc);

    std::fill(acc.begin(), acc.end(), 0);
    horizontal_sum(acc, i0, {j1});
    store({i0, j1}, acc);
  }
}

}  // namespace butterfly
