#pragma once

#include <cstddef>
#include <cstdint>

namespace butterfly {

using Row = std::uint32_t;
using Column = unsigned;

inline constexpr std::size_t kDefaultBlockSize = 4096;

// Geometry of one butterfly code instance.
//
// The construction needs an odd number of information columns. An even user
// column count is padded with one virtual all-zero column at index k - 1;
// that column is never stored and never read.
class CodeParams {
 public:
  static constexpr unsigned kMaxColumns = 15;

  // Throws std::invalid_argument when k_user is 0, the padded column count
  // exceeds kMaxColumns, or block_size is 0.
  explicit CodeParams(unsigned k_user, std::size_t block_size = kDefaultBlockSize);

  unsigned user_columns() const noexcept { return k_user_; }
  // Padded (odd) column count k.
  unsigned columns() const noexcept { return k_; }
  // 2^(k-1).
  Row rows() const noexcept { return Row{1} << (k_ - 1); }
  // k + 2, counting the virtual column when present.
  unsigned nodes() const noexcept { return k_ + 2; }
  // Nodes that actually hold data: k_user + 2.
  unsigned stored_nodes() const noexcept { return k_user_ + 2; }
  std::size_t block_size() const noexcept { return block_size_; }
  bool has_virtual_column() const noexcept { return k_ != k_user_; }
  bool is_virtual(Column col) const noexcept { return col >= k_user_; }
  // floor(k / 2): how far a dark element's parity window reaches.
  unsigned window() const noexcept { return k_ / 2; }

  // Octets of user payload carried by one stripe.
  std::size_t stripe_payload() const noexcept {
    return std::size_t{k_user_} * rows() * block_size_;
  }

  friend bool operator==(const CodeParams&, const CodeParams&) = default;

 private:
  unsigned k_user_;
  unsigned k_;
  std::size_t block_size_;
};

}  // namespace butterfly
