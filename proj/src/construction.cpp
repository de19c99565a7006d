#include "butterfly/construction.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace butterfly {

namespace {

void check_row(const CodeParams& params, Row row) {
  if (row >= params.rows()) {
    throw std::out_of_range("row " + std::to_string(row) + " outside [0, " +
                            std::to_string(params.rows()) + ")");
  }
}

void check_col(const CodeParams& params, Column col) {
  if (col >= params.columns()) {
    throw std::out_of_range("column " + std::to_string(col) + " outside [0, " +
                            std::to_string(params.columns()) + ")");
  }
}

Column cyclic_distance(const CodeParams& params, Column from, Column to) {
  const Column k = params.columns();
  return (to + k - from) % k;
}

// Rebuilds a row from its color bits: bit c of the row is the XOR of colors
// 0..c. The colors of a row always XOR to zero, so the top color is implied.
Row row_from_colors(const CodeParams& params, const std::array<int, CodeParams::kMaxColumns>& colors) {
  Row row = 0;
  int running = 0;
  for (Column c = 0; c + 1 < params.columns(); ++c) {
    running ^= colors[c];
    row |= static_cast<Row>(running) << c;
  }
  return row;
}

}  // namespace

std::string to_string(Coord c) {
  return "a_{" + std::to_string(c.row) + "," + std::to_string(c.col) + "}";
}

int color(const CodeParams& params, Row row, Column col) {
  check_row(params, row);
  check_col(params, col);
  return bit(row, static_cast<int>(col)) ^ bit(row, static_cast<int>(col) - 1);
}

ParitySet::ParitySet(std::vector<Coord> coords) : coords_(std::move(coords)) {
  std::sort(coords_.begin(), coords_.end());
  if (std::adjacent_find(coords_.begin(), coords_.end()) != coords_.end()) {
    throw std::invalid_argument("duplicate coordinate in parity set");
  }
}

bool ParitySet::contains(Coord c) const noexcept {
  return std::binary_search(coords_.begin(), coords_.end(), c);
}

ParitySet ParitySet::without(Coord c) const {
  ParitySet out = *this;
  out.coords_.erase(std::remove(out.coords_.begin(), out.coords_.end(), c), out.coords_.end());
  return out;
}

ParitySet local_set(const CodeParams& params, Row row, Column col) {
  if (color(params, row, col) == 1) return ParitySet({{row, col}});
  const Column k = params.columns();
  std::vector<Coord> coords;
  coords.reserve(params.window() + 1);
  for (Column d = 0; d <= params.window(); ++d) coords.push_back({row, (col + k - d) % k});
  return ParitySet(std::move(coords));
}

ParitySet butterfly_set(const CodeParams& params, Row row) {
  check_row(params, row);
  std::vector<Coord> coords;
  for (Column j = 0; j < params.columns(); ++j) {
    const ParitySet part = local_set(params, line_index(row, j), j);
    coords.insert(coords.end(), part.begin(), part.end());
  }
  return ParitySet(std::move(coords));
}

std::string describe_butterfly_parity(const CodeParams& params, Row row) {
  std::string out = "b_" + std::to_string(row) + " =";
  bool first = true;
  for (Coord c : butterfly_set(params, row)) {
    out += first ? " " : " + ";
    out += to_string(c);
    first = false;
  }
  return out;
}

ColumnPair order_pair(const CodeParams& params, Column a, Column b) {
  check_col(params, a);
  check_col(params, b);
  if (a == b) throw std::invalid_argument("order_pair needs two distinct columns");
  // k is odd, so exactly one orientation has a short forward distance.
  if (cyclic_distance(params, a, b) <= params.window()) return {a, b};
  return {b, a};
}

std::uint32_t color_pattern(const CodeParams& params, Row row, std::initializer_list<Column> skipped) {
  std::uint32_t pattern = 0;
  unsigned position = 0;
  for (Column c = 0; c < params.columns(); ++c) {
    if (std::find(skipped.begin(), skipped.end(), c) != skipped.end()) continue;
    pattern |= static_cast<std::uint32_t>(color(params, row, c)) << position++;
  }
  return pattern;
}

Row find_row_single(const CodeParams& params, std::uint32_t iteration, Column col) {
  check_col(params, col);
  if (iteration >= params.rows()) {
    throw std::out_of_range("iteration " + std::to_string(iteration) + " outside [0, " +
                            std::to_string(params.rows()) + ")");
  }
  std::array<int, CodeParams::kMaxColumns> colors{};
  int parity = 0;
  unsigned position = 0;
  for (Column c = 0; c < params.columns(); ++c) {
    if (c == col) continue;
    colors[c] = bit(iteration, static_cast<int>(position++));
    parity ^= colors[c];
  }
  colors[col] = parity;
  return row_from_colors(params, colors);
}

RowPair find_rows_pair(const CodeParams& params, std::uint32_t iteration, ColumnPair pair) {
  check_col(params, pair.first);
  check_col(params, pair.second);
  if (pair.first == pair.second || cyclic_distance(params, pair.first, pair.second) > params.window()) {
    throw std::invalid_argument("column pair is not ordered; use order_pair");
  }
  if (iteration >= params.rows() / 2) {
    throw std::out_of_range("iteration " + std::to_string(iteration) + " outside [0, " +
                            std::to_string(params.rows() / 2) + ")");
  }
  std::array<int, CodeParams::kMaxColumns> colors{};
  int parity = 0;
  unsigned position = 0;
  for (Column c = 0; c < params.columns(); ++c) {
    if (c == pair.first || c == pair.second) continue;
    colors[c] = bit(iteration, static_cast<int>(position++));
    parity ^= colors[c];
  }
  colors[pair.second] = 0;
  colors[pair.first] = parity;
  const Row dark = row_from_colors(params, colors);
  const Row white = dark ^ ((Row{1} << pair.second) - 1) ^ ((Row{1} << pair.first) - 1);
  return {dark, white};
}

std::vector<ParityRef> update_parity_coords(const CodeParams& params, Coord c) {
  check_row(params, c.row);
  check_col(params, c.col);
  std::vector<ParityRef> out{ParityRef::horizontal(c.row)};
  // (row, col) sits in local_set(row, j) for j = col, and for every dark j
  // whose window reaches back to col.
  for (Column d = 0; d <= params.window(); ++d) {
    const Column j = (c.col + d) % params.columns();
    if (d == 0 || color(params, c.row, j) == 0) out.push_back(ParityRef::butterfly(line_index(c.row, j)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace butterfly
