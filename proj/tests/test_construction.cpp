#include <doctest.h>

#include <algorithm>
#include <set>

#include "butterfly/construction.hpp"
#include "test_support.hpp"

using namespace butterfly;
using butterfly::testing::brute_force_butterfly;
using butterfly::testing::brute_force_rows_with_pattern;

namespace {

std::set<std::pair<unsigned, unsigned>> as_pairs(const ParitySet& s) {
  std::set<std::pair<unsigned, unsigned>> out;
  for (Coord c : s) out.insert({c.row, c.col});
  return out;
}

std::vector<Row> dark_rows(const CodeParams& p, Column col, Row limit) {
  std::vector<Row> out;
  for (Row r = 0; r < limit; ++r)
    if (is_dark(p, r, col)) out.push_back(r);
  return out;
}

}  // namespace

TEST_CASE("code params pad even column counts") {
  CodeParams three(3);
  CHECK(three.columns() == 3);
  CHECK(three.rows() == 4);
  CHECK(three.nodes() == 5);
  CHECK_FALSE(three.has_virtual_column());

  CodeParams four(4, 64);
  CHECK(four.columns() == 5);
  CHECK(four.rows() == 16);
  CHECK(four.stored_nodes() == 6);
  CHECK(four.is_virtual(4));
  CHECK(four.stripe_payload() == 4096);

  CodeParams one(1);
  CHECK(one.rows() == 1);

  CHECK_THROWS_AS(CodeParams(0), std::invalid_argument);
  CHECK_THROWS_AS(CodeParams(16), std::invalid_argument);
  CHECK_NOTHROW(CodeParams(14));
  CHECK_THROWS_AS(CodeParams(3, 0), std::invalid_argument);
}

TEST_CASE("bit") {
  CHECK(bit(5, 0) == 1);
  CHECK(bit(5, -1) == 0);
  CHECK(bit(5, 3) == 0);
  CHECK(bit(5, 2) == 1);
}

TEST_CASE("color matches the dark elements of the three- and four-column figures") {
  CodeParams k3(3);
  CHECK(color(k3, 0, 1) == 0);
  CHECK(color(k3, 1, 0) == 1);
  CHECK(dark_rows(k3, 0, 4) == std::vector<Row>{0, 2});
  CHECK(dark_rows(k3, 1, 4) == std::vector<Row>{0, 3});
  CHECK(dark_rows(k3, 2, 4) == std::vector<Row>{0, 1});

  // Four user columns pad to k = 5; the figure shows the first eight rows.
  CodeParams k4(4);
  CHECK(color(k4, 7, 2) == 0);
  CHECK(dark_rows(k4, 0, 8) == std::vector<Row>{0, 2, 4, 6});
  CHECK(dark_rows(k4, 1, 8) == std::vector<Row>{0, 3, 4, 7});
  CHECK(dark_rows(k4, 2, 8) == std::vector<Row>{0, 1, 6, 7});
  CHECK(dark_rows(k4, 3, 8) == std::vector<Row>{0, 1, 2, 3});

  CHECK_THROWS_AS(color(k3, 4, 0), std::out_of_range);
  CHECK_THROWS_AS(color(k3, 0, 3), std::out_of_range);
}

TEST_CASE("colors of a row XOR to zero and each column is half dark") {
  for (unsigned k : {3u, 5u, 7u, 9u}) {
    CodeParams p(k);
    for (Row r = 0; r < p.rows(); ++r) {
      int x = 0;
      for (Column c = 0; c < k; ++c) x ^= color(p, r, c);
      CHECK(x == 0);
    }
    for (Column c = 0; c < k; ++c) CHECK(dark_rows(p, c, p.rows()).size() == p.rows() / 2);
  }
}

TEST_CASE("line_index") {
  CHECK(line_index(0, 0) == 0);
  CHECK(line_index(0, 2) == 3);
  CHECK(line_index(4, 0) == 4);
  CHECK(line_index(7, 2) == 4);
  for (Row r = 0; r < 64; ++r)
    for (Column c = 0; c < 7; ++c) CHECK(line_index(line_index(r, c), c) == r);
}

TEST_CASE("local_set") {
  CodeParams k3(3);
  CHECK(local_set(k3, 0, 0) == ParitySet({{0, 0}, {0, 2}}));
  CHECK(local_set(k3, 1, 1) == ParitySet({{1, 1}}));
  CHECK(local_set(k3, 3, 1) == ParitySet({{3, 1}, {3, 0}}));

  for (unsigned k : {3u, 5u, 7u}) {
    CodeParams p(k);
    for (Row r = 0; r < p.rows(); ++r) {
      for (Column c = 0; c < k; ++c) {
        const ParitySet s = local_set(p, r, c);
        CHECK(s.contains({r, c}));
        CHECK(s.size() == (color(p, r, c) == 1 ? 1u : k / 2 + 1));
      }
    }
  }
}

TEST_CASE("butterfly_set reproduces the worked three-column parities") {
  CodeParams k3(3);
  CHECK(butterfly_set(k3, 0) == ParitySet({{0, 0}, {1, 1}, {3, 2}, {0, 2}}));
  CHECK(butterfly_set(k3, 2) == ParitySet({{2, 0}, {3, 1}, {1, 2}, {2, 2}, {3, 0}, {1, 1}}));
  CHECK(butterfly_set(k3, 3) == ParitySet({{3, 0}, {2, 1}, {0, 2}, {0, 1}}));
  CHECK(describe_butterfly_parity(k3, 0) == "b_0 = a_{0,0} + a_{0,2} + a_{1,1} + a_{3,2}");
}

TEST_CASE("butterfly_set agrees with brute-force membership and is a disjoint union") {
  for (unsigned k : {3u, 5u, 7u}) {
    CodeParams p(k);
    for (Row i = 0; i < p.rows(); ++i) {
      const ParitySet set = butterfly_set(p, i);
      CHECK(as_pairs(set) == brute_force_butterfly(k, i));
      std::size_t parts = 0;
      std::set<Row> part_rows;
      for (Column j = 0; j < k; ++j) {
        parts += local_set(p, line_index(i, j), j).size();
        part_rows.insert(line_index(i, j));
      }
      CHECK(parts == set.size());
      CHECK(part_rows.size() == k);
    }
  }
}

TEST_CASE("order_pair") {
  CodeParams k5(5);
  CHECK(order_pair(k5, 0, 2) == ColumnPair{0, 2});
  CHECK(order_pair(k5, 2, 0) == ColumnPair{0, 2});
  CHECK(order_pair(k5, 0, 3) == ColumnPair{3, 0});
  CHECK(order_pair(CodeParams(3), 0, 1) == ColumnPair{0, 1});
  CHECK(order_pair(CodeParams(3), 0, 2) == ColumnPair{2, 0});
  CHECK_THROWS_AS(order_pair(k5, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(order_pair(k5, 1, 5), std::out_of_range);
}

TEST_CASE("find_row_single") {
  CodeParams k3(3);
  CHECK(find_row_single(k3, 1, 1) == 1);
  CHECK(brute_force_rows_with_pattern(3, 1, {1}) == std::vector<unsigned>{1});

  for (unsigned k : {3u, 5u, 7u}) {
    CodeParams p(k);
    for (Column j = 0; j < k; ++j) {
      CHECK(find_row_single(p, 0, j) == 0);
      std::set<Row> seen;
      for (std::uint32_t t = 0; t < p.rows(); ++t) {
        const Row r = find_row_single(p, t, j);
        seen.insert(r);
        CHECK(color_pattern(p, r, {j}) == t);
        CHECK(brute_force_rows_with_pattern(k, t, {j}) == std::vector<unsigned>{r});
      }
      CHECK(seen.size() == p.rows());
    }
  }
  CHECK_THROWS_AS(find_row_single(k3, 4, 0), std::out_of_range);
  CHECK_THROWS_AS(find_row_single(k3, 0, 3), std::out_of_range);
}

TEST_CASE("find_rows_pair reproduces the worked four-column example") {
  CodeParams k5(4);
  CHECK(find_rows_pair(k5, 2, {0, 2}) == RowPair{7, 4});
  CHECK(find_rows_pair(k5, 0, {0, 2}) == RowPair{0, 3});
  CHECK_THROWS_AS(find_rows_pair(k5, 0, {2, 0}), std::invalid_argument);
  CHECK_THROWS_AS(find_rows_pair(k5, 8, {0, 2}), std::out_of_range);
}

TEST_CASE("find_rows_pair partitions the rows") {
  for (unsigned k : {3u, 5u, 7u}) {
    CodeParams p(k);
    for (Column a = 0; a < k; ++a) {
      for (Column b = a + 1; b < k; ++b) {
        const ColumnPair pair = order_pair(p, a, b);
        const Row mask = ((Row{1} << pair.second) - 1) ^ ((Row{1} << pair.first) - 1);
        std::set<Row> seen;
        for (std::uint32_t t = 0; t < p.rows() / 2; ++t) {
          const RowPair rows = find_rows_pair(p, t, pair);
          CHECK(rows.white == (rows.dark ^ mask));
          CHECK(is_dark(p, rows.dark, pair.second));
          CHECK_FALSE(is_dark(p, rows.white, pair.second));
          auto brute = brute_force_rows_with_pattern(k, t, {pair.first, pair.second});
          std::vector<unsigned> got{rows.dark, rows.white};
          std::sort(got.begin(), got.end());
          CHECK(brute == got);
          seen.insert(rows.dark);
          seen.insert(rows.white);
        }
        CHECK(seen.size() == p.rows());
      }
    }
  }
}

TEST_CASE("update_parity_coords") {
  CodeParams k3(3);
  using R = ParityRef;
  CHECK(update_parity_coords(k3, {0, 0}) == std::vector<R>{R::horizontal(0), R::butterfly(0), R::butterfly(1)});
  // a_{1,1} appears in both b_0 and b_2 of the worked three-column parities.
  CHECK(update_parity_coords(k3, {1, 1}) == std::vector<R>{R::horizontal(1), R::butterfly(0), R::butterfly(2)});
  // (1, 1) is white, so a_{1,0} only sits in its own line.
  CHECK(update_parity_coords(k3, {1, 0}).size() == 2);

  for (unsigned k : {3u, 5u, 7u}) {
    CodeParams p(k);
    for (Row r = 0; r < p.rows(); ++r) {
      for (Column c = 0; c < k; ++c) {
        const auto refs = update_parity_coords(p, {r, c});
        CHECK(refs.size() <= k / 2 + 2);
        // Same memberships as the butterfly sets, enumerated the other way.
        std::vector<R> expected{R::horizontal(r)};
        for (Row i = 0; i < p.rows(); ++i)
          if (brute_force_butterfly(k, i).count({r, c})) expected.push_back(R::butterfly(i));
        std::sort(expected.begin(), expected.end());
        CHECK(refs == expected);
      }
    }
  }
}

TEST_CASE("parity set rejects duplicates") {
  CHECK_THROWS_AS(ParitySet({{0, 1}, {0, 1}}), std::invalid_argument);
  const ParitySet s({{2, 0}, {0, 1}});
  CHECK(s.coords().front() == Coord{0, 1});
  CHECK(s.without({0, 1}).size() == 1);
}
