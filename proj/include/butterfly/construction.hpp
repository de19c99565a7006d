#pragma once

// Row and column combinatorics of the butterfly code: element colors, the
// local and butterfly parity sets, and the row orderings used by the
// double-failure decoder. Everything here is a pure function of CodeParams.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "butterfly/code_params.hpp"

namespace butterfly {

// Address of one information element.
struct Coord {
  Row row = 0;
  Column col = 0;

  friend auto operator<=>(const Coord&, const Coord&) = default;
};

std::string to_string(Coord c);

// Bit `position` of `value`, LSB at position 0. Negative positions read as 0.
constexpr int bit(std::uint64_t value, int position) noexcept {
  if (position < 0 || position >= 64) return 0;
  return static_cast<int>((value >> position) & 1u);
}

// 0 for a dark element (bit col of row equals bit col-1), 1 for white.
// Throws std::out_of_range for coordinates outside the padded array.
int color(const CodeParams& params, Row row, Column col);

inline bool is_dark(const CodeParams& params, Row row, Column col) {
  return color(params, row, col) == 0;
}

// row XOR (2^col - 1). For fixed col this is an involution on rows: the
// butterfly parity whose line crosses column col at `row`.
constexpr Row line_index(Row row, Column col) noexcept {
  return row ^ ((Row{1} << col) - 1);
}

// Set of element coordinates, kept in (row, col) order without duplicates.
class ParitySet {
 public:
  ParitySet() = default;
  // Sorts; throws std::invalid_argument on duplicate coordinates.
  explicit ParitySet(std::vector<Coord> coords);

  bool contains(Coord c) const noexcept;
  std::size_t size() const noexcept { return coords_.size(); }
  bool empty() const noexcept { return coords_.empty(); }
  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }
  const std::vector<Coord>& coords() const noexcept { return coords_; }

  // Copy without one coordinate. Used by mutation tests.
  ParitySet without(Coord c) const;

  friend bool operator==(const ParitySet&, const ParitySet&) = default;

 private:
  std::vector<Coord> coords_;
};

// {(row, col)} for a white element; otherwise the dark element together with
// the window() elements cyclically to its right in the same row.
ParitySet local_set(const CodeParams& params, Row row, Column col);

// Union over all columns j of local_set(line_index(row, j), j). Includes
// coordinates in the virtual column when there is one.
ParitySet butterfly_set(const CodeParams& params, Row row);

// "b_2 = a_{2,0} + a_{1,1} + ..." in ParitySet order.
std::string describe_butterfly_parity(const CodeParams& params, Row row);

// Two failed information columns oriented so that
// (second - first) mod k <= window().
struct ColumnPair {
  Column first = 0;   // j0
  Column second = 0;  // j1

  friend bool operator==(const ColumnPair&, const ColumnPair&) = default;
};

ColumnPair order_pair(const CodeParams& params, Column a, Column b);

// Packs the colors of `row` at every column not in `skipped`, ascending
// column order mapped to ascending bit positions.
std::uint32_t color_pattern(const CodeParams& params, Row row, std::initializer_list<Column> skipped);

// The row whose color pattern over columns != col equals `iteration`.
// Inverse of color_pattern(params, row, {col}).
Row find_row_single(const CodeParams& params, std::uint32_t iteration, Column col);

struct RowPair {
  Row dark = 0;   // i0: dark at pair.second
  Row white = 0;  // i1 = i0 ^ (2^j1 - 1) ^ (2^j0 - 1)

  friend bool operator==(const RowPair&, const RowPair&) = default;
};

// The two rows whose color pattern over columns outside the pair equals
// `iteration`, distinguished by their color at pair.second.
RowPair find_rows_pair(const CodeParams& params, std::uint32_t iteration, ColumnPair pair);

// One element of a parity node.
struct ParityRef {
  enum class Kind : unsigned char { Horizontal, Butterfly };
  Kind kind = Kind::Horizontal;
  Row row = 0;

  static constexpr ParityRef horizontal(Row r) noexcept { return {Kind::Horizontal, r}; }
  static constexpr ParityRef butterfly(Row r) noexcept { return {Kind::Butterfly, r}; }

  friend auto operator<=>(const ParityRef&, const ParityRef&) = default;
};

// Parity elements whose value depends on information element c, sorted.
// Enumerated directly from the coloring, without building butterfly sets.
std::vector<ParityRef> update_parity_coords(const CodeParams& params, Coord c);

}  // namespace butterfly
