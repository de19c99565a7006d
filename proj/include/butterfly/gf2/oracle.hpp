#pragma once

// Independent bit-level model of the code: the generator matrix over GF(2),
// rank certification of every two-node erasure, and a reference decoder
// that solves the surviving linear system by elimination. Shares nothing
// with the codec beyond the parity-set definitions.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "butterfly/code_params.hpp"
#include "butterfly/construction.hpp"
#include "butterfly/gf2/bit_matrix.hpp"
#include "butterfly/node_id.hpp"
#include "butterfly/stripe.hpp"

namespace butterfly::gf2 {

// Generator of the systematic code at one bit per element.
//
// Rows index information bits, column-major over stored columns:
// bit(j, i) = j * rows + i. Columns index stored bits, node-major in slot
// order (info nodes, horizontal, butterfly), then by row.
struct CodeSystem {
  CodeParams params;
  BitMatrix generator;

  std::size_t info_bit(Coord c) const { return std::size_t{c.col} * params.rows() + c.row; }
  std::size_t stored_bit(NodeId node, Row row) const {
    return std::size_t{node.slot(params)} * params.rows() + row;
  }
  std::size_t info_bits() const { return generator.rows(); }
};

CodeSystem build_generator(const CodeParams& params);
// Same, with caller-supplied butterfly sets (one per row). Used to check
// that the verifier notices a damaged construction.
CodeSystem build_generator(const CodeParams& params, const std::vector<ParitySet>& butterfly_sets);

// Text grid, one generator row per line; see CodeSystem for ordering.
std::string dump_generator(const CodeSystem& system);

std::size_t rank(const BitMatrix& m);

struct PatternCheck {
  ErasurePattern pattern;
  std::size_t rank = 0;
  std::size_t required = 0;
  bool ok() const { return rank == required; }
};

struct MdsReport {
  std::vector<PatternCheck> patterns;
  std::size_t passed() const;
  bool all_ok() const { return passed() == patterns.size(); }
};

inline constexpr unsigned kMaxVerifyColumns = 9;

// Rank of the surviving generator columns for every two-node erasure.
// Throws std::invalid_argument when the padded column count exceeds
// kMaxVerifyColumns.
MdsReport mds_verify(const CodeParams& params);
MdsReport mds_verify(const CodeSystem& system);

// Solves for the information bits from every stored bit outside `pattern`.
// Elimination happens once at construction; each solve is then a sparse
// XOR per information bit, so block-valued data lifts by linearity.
class OracleDecoder {
 public:
  // Throws SingularSystem when the survivors do not determine the data.
  OracleDecoder(const CodeSystem& system, const ErasurePattern& pattern);

  // Stored bits that survive `pattern`, in the order solve() expects.
  const std::vector<std::size_t>& surviving_bits() const noexcept { return surviving_; }

  // observed[o] is the 0/1 value of surviving_bits()[o]. Returns information
  // bits in CodeSystem order.
  std::vector<std::uint8_t> solve(std::span<const std::uint8_t> observed) const;

  // Block-level solve: reads the surviving nodes of `available` and returns
  // a stripe holding the solved information columns and the surviving
  // parity columns. Erased parity columns are left absent.
  Stripe recover(const Stripe& available) const;

 private:
  CodeParams params_;
  ErasurePattern pattern_;
  std::vector<std::size_t> surviving_;
  // Per information bit: indices into surviving_ whose XOR equals it.
  std::vector<std::vector<std::size_t>> combinations_;
};

// Convenience wrapper around OracleDecoder::solve.
std::vector<std::uint8_t> oracle_decode(const CodeParams& params, const ErasurePattern& pattern,
                                        std::span<const std::uint8_t> observed);

}  // namespace butterfly::gf2
