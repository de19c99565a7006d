#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "butterfly/code_params.hpp"
#include "butterfly/construction.hpp"
#include "butterfly/node_id.hpp"
#include "butterfly/stripe.hpp"

namespace butterfly {

enum class RecoveryMethod : unsigned char { Horizontal, Butterfly };

// target = parity + XOR of terms. Terms exclude virtual-column elements and
// may include elements of the failed column recovered by earlier steps.
struct RepairStep {
  Coord target;
  RecoveryMethod method = RecoveryMethod::Horizontal;
  Row parity_row = 0;
  std::vector<Coord> terms;
};

struct RepairPlan {
  NodeId failed;
  // Rows read from each surviving stored node, ascending.
  std::map<NodeId, std::vector<Row>> reads;
  // Information repair: dark rows (horizontal) first, then white rows.
  std::vector<RepairStep> steps;
  // Parity repair: re-encode from the full information array.
  bool reencode = false;

  std::size_t elements_read() const;
};

struct DecodeStats {
  // Cross-row dependencies on already-recovered elements that were checked
  // against the iteration order.
  std::size_t dependencies_checked = 0;
};

// Construction tables for one code, built once and then read-only; safe to
// share between threads.
class ButterflyCode {
 public:
  explicit ButterflyCode(const CodeParams& params);

  const CodeParams& params() const noexcept { return params_; }

  // Full set, including virtual-column coordinates.
  const ParitySet& butterfly_set(Row row) const { return sets_.at(row); }

  // Fill both parity columns from the information columns.
  void encode(Stripe& stripe) const;
  void encode_horizontal(Stripe& stripe) const;
  void encode_butterfly(Stripe& stripe) const;

  // Throws std::invalid_argument for a node outside the code (including the
  // virtual column).
  RepairPlan repair_plan(NodeId failed) const;

  // Rebuild one node in place. Only the elements named by repair_plan(failed)
  // are read; any other block may be absent.
  void repair(Stripe& stripe, NodeId failed) const;

  // Rebuild every node of `pattern` in place. All other nodes must be fully
  // present. Throws DecodeOrderViolation if the row ordering ever consumes
  // an element before the iteration that produces it.
  DecodeStats decode(Stripe& stripe, const ErasurePattern& pattern) const;

 private:
  void check_stripe(const Stripe& stripe) const;
  void decode_with_horizontal(Stripe& stripe, Column col, DecodeStats& stats) const;
  void decode_two_info(Stripe& stripe, Column a, Column b, DecodeStats& stats) const;
  void recover_from_horizontal(Stripe& stripe, Row row, Column col) const;

  CodeParams params_;
  std::vector<ParitySet> sets_;
};

}  // namespace butterfly
