#include "bloomrf/bit_array.hpp"

#include <bit>

#include "bloomrf/dyadic.hpp"

namespace bloomrf {

bit_array::bit_array(std::uint64_t bits)
    : bits_(bits), words_(std::make_unique<std::atomic<std::uint64_t>[]>(word_count())) {
  for (std::size_t i = 0; i < word_count(); ++i) words_[i].store(0, std::memory_order_relaxed);
}

bit_array::bit_array(const bit_array& other) : bit_array(other.bits_) {
  for (std::size_t i = 0; i < word_count(); ++i) words_[i].store(other.word(i), std::memory_order_relaxed);
}

bit_array& bit_array::operator=(const bit_array& other) {
  if (this != &other) *this = bit_array(other);
  return *this;
}

bool bit_array::any(std::uint64_t first, std::uint64_t last) const noexcept {
  if (first > last) return false;
  const std::size_t w0 = first >> 6;
  const std::size_t w1 = last >> 6;
  const std::uint64_t head = ~low_mask(first & 63);
  const std::uint64_t tail = low_mask((last & 63) + 1);
  if (w0 == w1) return (word(w0) & head & tail) != 0;
  if (word(w0) & head) return true;
  for (std::size_t w = w0 + 1; w < w1; ++w) {
    if (word(w)) return true;
  }
  return (word(w1) & tail) != 0;
}

std::uint64_t bit_array::popcount() const noexcept {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < word_count(); ++i) total += std::popcount(word(i));
  return total;
}

}  // namespace bloomrf
