#include "butterfly/gf2/bit_matrix.hpp"

#include <bit>
#include <stdexcept>
#include <utility>

namespace butterfly::gf2 {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64), words_(rows * stride_, 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

void BitMatrix::check(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("bit matrix index out of range");
}

bool BitMatrix::get(std::size_t r, std::size_t c) const {
  check(r, c);
  return (row_words(r)[c / 64] >> (c % 64)) & 1u;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
  check(r, c);
  const std::uint64_t mask = std::uint64_t{1} << (c % 64);
  if (value) {
    row_words(r)[c / 64] |= mask;
  } else {
    row_words(r)[c / 64] &= ~mask;
  }
}

void BitMatrix::flip(std::size_t r, std::size_t c) {
  check(r, c);
  row_words(r)[c / 64] ^= std::uint64_t{1} << (c % 64);
}

void BitMatrix::add_row(std::size_t dst, std::size_t src) {
  std::uint64_t* d = row_words(dst);
  const std::uint64_t* s = row_words(src);
  for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::uint64_t* x = row_words(a);
  std::uint64_t* y = row_words(b);
  for (std::size_t w = 0; w < stride_; ++w) std::swap(x[w], y[w]);
}

std::size_t BitMatrix::row_weight(std::size_t r) const {
  std::size_t weight = 0;
  const std::uint64_t* words = row_words(r);
  for (std::size_t w = 0; w < stride_; ++w) weight += static_cast<std::size_t>(std::popcount(words[w]));
  return weight;
}

std::size_t BitMatrix::col_weight(std::size_t c) const {
  std::size_t weight = 0;
  for (std::size_t r = 0; r < rows_; ++r) weight += get(r, c) ? 1 : 0;
  return weight;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) out.set(c, r);
  return out;
}

BitMatrix BitMatrix::select_columns(const std::vector<std::size_t>& cols) const {
  BitMatrix out(rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t i = 0; i < cols.size(); ++i)
      if (get(r, cols[i])) out.set(r, i);
  return out;
}

std::size_t BitMatrix::rank() const {
  BitMatrix m = *this;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows_ && !m.get(pivot, c)) ++pivot;
    if (pivot == rows_) continue;
    m.swap_rows(rank, pivot);
    for (std::size_t r = rank + 1; r < rows_; ++r) {
      if (m.get(r, c)) m.add_row(r, rank);
    }
    ++rank;
  }
  return rank;
}

std::string BitMatrix::to_text() const {
  std::string out;
  out.reserve(rows_ * (cols_ + 1));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out += get(r, c) ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace butterfly::gf2
