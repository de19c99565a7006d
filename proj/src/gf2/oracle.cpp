#include "butterfly/gf2/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "butterfly/errors.hpp"
#include "butterfly/xor_blocks.hpp"

namespace butterfly::gf2 {

CodeSystem build_generator(const CodeParams& params) {
  std::vector<ParitySet> sets;
  sets.reserve(params.rows());
  for (Row r = 0; r < params.rows(); ++r) sets.push_back(butterfly_set(params, r));
  return build_generator(params, sets);
}

CodeSystem build_generator(const CodeParams& params, const std::vector<ParitySet>& butterfly_sets) {
  if (butterfly_sets.size() != params.rows()) {
    throw std::invalid_argument("need one butterfly set per row");
  }
  CodeSystem system{params, BitMatrix(std::size_t{params.user_columns()} * params.rows(),
                                      std::size_t{params.stored_nodes()} * params.rows())};
  BitMatrix& g = system.generator;
  for (Column j = 0; j < params.user_columns(); ++j) {
    for (Row i = 0; i < params.rows(); ++i) {
      const std::size_t bit = system.info_bit({i, j});
      g.set(bit, system.stored_bit(NodeId::info(j), i));
      g.set(bit, system.stored_bit(NodeId::horizontal(), i));
    }
  }
  for (Row i = 0; i < params.rows(); ++i) {
    for (Coord c : butterfly_sets[i]) {
      if (params.is_virtual(c.col)) continue;
      g.flip(system.info_bit(c), system.stored_bit(NodeId::butterfly(), i));
    }
  }
  return system;
}

std::string dump_generator(const CodeSystem& system) { return system.generator.to_text(); }

std::size_t rank(const BitMatrix& m) { return m.rank(); }

std::size_t MdsReport::passed() const {
  return static_cast<std::size_t>(
      std::count_if(patterns.begin(), patterns.end(), [](const PatternCheck& p) { return p.ok(); }));
}

namespace {

std::vector<std::size_t> surviving_columns(const CodeSystem& system, const ErasurePattern& pattern) {
  std::vector<std::size_t> cols;
  for (NodeId n : stored_nodes(system.params)) {
    if (pattern.contains(n)) continue;
    for (Row r = 0; r < system.params.rows(); ++r) cols.push_back(system.stored_bit(n, r));
  }
  return cols;
}

}  // namespace

MdsReport mds_verify(const CodeParams& params) {
  if (params.columns() > kMaxVerifyColumns) {
    throw std::invalid_argument("mds_verify supports at most " + std::to_string(kMaxVerifyColumns) +
                                " padded columns");
  }
  return mds_verify(build_generator(params));
}

MdsReport mds_verify(const CodeSystem& system) {
  MdsReport report;
  for (const ErasurePattern& pattern : all_patterns(system.params, 2)) {
    PatternCheck check;
    check.pattern = pattern;
    check.required = system.info_bits();
    check.rank = system.generator.select_columns(surviving_columns(system, pattern)).rank();
    report.patterns.push_back(std::move(check));
  }
  return report;
}

OracleDecoder::OracleDecoder(const CodeSystem& system, const ErasurePattern& pattern)
    : params_(system.params), pattern_(pattern), surviving_(surviving_columns(system, pattern)) {
  // One equation per surviving stored bit: observed = sum of info bits.
  // Reduce [A | I] to reduced row echelon form on the A block; the I block
  // then records which observations make up each pivot.
  const BitMatrix equations = system.generator.select_columns(surviving_).transposed();
  const std::size_t m = equations.rows();
  const std::size_t n = equations.cols();
  BitMatrix aug(m, n + m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c)
      if (equations.get(r, c)) aug.set(r, c);
    aug.set(r, n + r);
  }

  std::vector<std::size_t> pivot_row(n);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = rank;
    while (pivot < m && !aug.get(pivot, c)) ++pivot;
    if (pivot == m) {
      throw SingularSystem("erasure pattern " + pattern.to_string() +
                           " leaves information bit " + std::to_string(c) + " undetermined");
    }
    aug.swap_rows(rank, pivot);
    for (std::size_t r = 0; r < m; ++r) {
      if (r != rank && aug.get(r, c)) aug.add_row(r, rank);
    }
    pivot_row[c] = rank++;
  }

  combinations_.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t o = 0; o < m; ++o) {
      if (aug.get(pivot_row[c], n + o)) combinations_[c].push_back(o);
    }
  }
}

std::vector<std::uint8_t> OracleDecoder::solve(std::span<const std::uint8_t> observed) const {
  if (observed.size() != surviving_.size()) {
    throw std::invalid_argument("expected " + std::to_string(surviving_.size()) + " observed bits");
  }
  std::vector<std::uint8_t> out(combinations_.size(), 0);
  for (std::size_t u = 0; u < combinations_.size(); ++u) {
    for (std::size_t o : combinations_[u]) out[u] ^= observed[o] & 1u;
  }
  return out;
}

Stripe OracleDecoder::recover(const Stripe& available) const {
  if (!(available.params() == params_)) throw std::invalid_argument("stripe geometry mismatch");
  const Row rows = params_.rows();
  auto observation = [&](std::size_t o) {
    const std::size_t bit = surviving_[o];
    return available.block(NodeId::from_slot(params_, static_cast<unsigned>(bit / rows)),
                           static_cast<Row>(bit % rows));
  };

  Stripe out(params_);
  for (std::size_t u = 0; u < combinations_.size(); ++u) {
    auto dst = out.mutable_block(NodeId::info(static_cast<Column>(u / rows)), static_cast<Row>(u % rows));
    for (std::size_t o : combinations_[u]) xor_blocks(dst, observation(o));
  }
  for (NodeId parity : {NodeId::horizontal(), NodeId::butterfly()}) {
    if (pattern_.contains(parity)) {
      out.erase(parity);
    } else {
      const auto src = available.column(parity);
      std::copy(src.begin(), src.end(), out.mutable_column(parity).begin());
    }
  }
  return out;
}

std::vector<std::uint8_t> oracle_decode(const CodeParams& params, const ErasurePattern& pattern,
                                        std::span<const std::uint8_t> observed) {
  return OracleDecoder(build_generator(params), pattern).solve(observed);
}

}  // namespace butterfly::gf2
