#include "butterfly/code_params.hpp"

#include <stdexcept>
#include <string>

namespace butterfly {

CodeParams::CodeParams(unsigned k_user, std::size_t block_size)
    : k_user_(k_user), k_(k_user % 2 == 1 ? k_user : k_user + 1), block_size_(block_size) {
  if (k_user == 0) {
    throw std::invalid_argument("code needs at least one information column");
  }
  if (k_ > kMaxColumns) {
    throw std::invalid_argument("padded column count " + std::to_string(k_) +
                                " exceeds the limit of " + std::to_string(kMaxColumns));
  }
  if (block_size == 0) {
    throw std::invalid_argument("block size must be at least one octet");
  }
}

}  // namespace butterfly
