#include "shufflekit/bool_matrix.hpp"

#include <optional>
#include <stdexcept>

namespace shufflekit {

void BoolMatrix::set(std::size_t i, std::size_t j, bool v) {
  std::uint64_t& w = bits_[i * words_ + j / 64];
  const std::uint64_t mask = std::uint64_t{1} << (j % 64);
  w = v ? (w | mask) : (w & ~mask);
}

BoolMatrix operator*(const BoolMatrix& a, const BoolMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("matrix dimension mismatch");
  BoolMatrix c(a.n_);
  for (std::size_t i = 0; i < a.n_; ++i) {
    std::uint64_t* row = &c.bits_[i * c.words_];
    for (std::size_t k = 0; k < a.n_; ++k) {
      if (!a.get(i, k)) continue;
      const std::uint64_t* src = &b.bits_[k * b.words_];
      for (std::size_t w = 0; w < c.words_; ++w) row[w] |= src[w];
    }
  }
  return c;
}

BoolMatrix matrix_power(const BoolMatrix& a, std::uint64_t d, std::size_t* products) {
  if (d == 0) throw std::invalid_argument("matrix_power needs d >= 1");
  std::size_t count = 0;
  std::optional<BoolMatrix> result;
  BoolMatrix base = a;
  for (;;) {
    if (d & 1) {
      if (result) {
        result = *result * base;
        ++count;
      } else {
        result = base;
      }
    }
    d >>= 1;
    if (!d) break;
    base = base * base;
    ++count;
  }
  if (products) *products += count;
  return *result;
}

}  // namespace shufflekit
