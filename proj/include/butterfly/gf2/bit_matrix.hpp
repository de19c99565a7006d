#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace butterfly::gf2 {

// Dense matrix over GF(2), row-major, each row packed into 64-bit words.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool value = true);
  void flip(std::size_t r, std::size_t c);

  // row dst += row src
  void add_row(std::size_t dst, std::size_t src);
  void swap_rows(std::size_t a, std::size_t b);

  std::size_t row_weight(std::size_t r) const;
  std::size_t col_weight(std::size_t c) const;

  BitMatrix transposed() const;
  // Columns in the given order.
  BitMatrix select_columns(const std::vector<std::size_t>& cols) const;

  // Row reduction on a copy.
  std::size_t rank() const;

  // One line of '0'/'1' characters per row.
  std::string to_text() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::uint64_t* row_words(std::size_t r) { return words_.data() + r * stride_; }
  const std::uint64_t* row_words(std::size_t r) const { return words_.data() + r * stride_; }
  void check(std::size_t r, std::size_t c) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace butterfly::gf2
