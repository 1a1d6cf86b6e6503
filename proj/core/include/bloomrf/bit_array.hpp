#pragma once

#include <atomic>
#include <cstdint>
#include <memory>

namespace bloomrf {

/// Fixed-size bit array over atomic 64-bit words.
///
/// Bits only ever go 0 -> 1 through set()/or_word(), which publish with
/// release ordering; readers load with acquire. Bit i lives in word i / 64 at
/// bit i % 64, so the little-endian byte image places it in byte i / 8 at bit
/// i % 8.
class bit_array {
 public:
  bit_array() = default;
  explicit bit_array(std::uint64_t bits);
  bit_array(const bit_array& other);
  bit_array& operator=(const bit_array& other);
  bit_array(bit_array&&) noexcept = default;
  bit_array& operator=(bit_array&&) noexcept = default;

  std::uint64_t size() const noexcept { return bits_; }
  std::size_t word_count() const noexcept { return static_cast<std::size_t>((bits_ + 63) / 64); }

  bool test(std::uint64_t bit) const noexcept {
    return (word(bit >> 6) >> (bit & 63)) & 1;
  }
  /// Returns true if the bit was previously clear.
  bool set(std::uint64_t bit) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (bit & 63);
    return (words_[bit >> 6].fetch_or(mask, std::memory_order_release) & mask) == 0;
  }
  /// Clears a bit. Not part of normal operation: a cleared bit can turn an
  /// inserted key into a false negative. Used for diagnostics and tests.
  void reset(std::uint64_t bit) noexcept {
    words_[bit >> 6].fetch_and(~(std::uint64_t{1} << (bit & 63)), std::memory_order_acq_rel);
  }

  std::uint64_t word(std::size_t index) const noexcept { return words_[index].load(std::memory_order_acquire); }
  void store_word(std::size_t index, std::uint64_t value) noexcept {
    words_[index].store(value, std::memory_order_release);
  }

  /// `width` bits starting at `first`; the run must not straddle a word.
  std::uint64_t extract(std::uint64_t first, unsigned width) const noexcept {
    const std::uint64_t w = word(first >> 6) >> (first & 63);
    return width >= 64 ? w : w & ((std::uint64_t{1} << width) - 1);
  }

  /// True if any bit in [first, last] is set.
  bool any(std::uint64_t first, std::uint64_t last) const noexcept;
  std::uint64_t popcount() const noexcept;

 private:
  std::uint64_t bits_ = 0;
  std::unique_ptr<std::atomic<std::uint64_t>[]> words_;
};

}  // namespace bloomrf
