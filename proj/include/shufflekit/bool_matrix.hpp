#ifndef SHUFFLEKIT_BOOL_MATRIX_HPP
#define SHUFFLEKIT_BOOL_MATRIX_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace shufflekit {

/// Square Boolean matrix with bit-packed rows.
class BoolMatrix {
 public:
  explicit BoolMatrix(std::size_t n = 0) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i, std::size_t j) const { return (bits_[i * words_ + j / 64] >> (j % 64)) & 1; }
  void set(std::size_t i, std::size_t j, bool v = true);

  friend BoolMatrix operator*(const BoolMatrix& a, const BoolMatrix& b);
  friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

/// A^d for d >= 1 by right-to-left binary exponentiation, never multiplying
/// by the identity. Adds the number of products formed to `*products`.
BoolMatrix matrix_power(const BoolMatrix& a, std::uint64_t d, std::size_t* products = nullptr);

}  // namespace shufflekit

#endif
