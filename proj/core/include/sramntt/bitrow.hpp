#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace sramntt {

// One bit per column, packed 64 to a word. Bits past size() are kept zero so
// that equality and popcount need no masking.
class BitRow {
 public:
  BitRow() = default;
  explicit BitRow(std::size_t size, bool value = false)
      : size_(size), words_((size + 63) / 64, value ? ~std::uint64_t{0} : 0) {
    trim();
  }

  std::size_t size() const noexcept { return size_; }

  bool get(std::size_t i) const noexcept { return ((words_[i >> 6] >> (i & 63)) & 1U) != 0; }
  void set(std::size_t i, bool v) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= bit;
    } else {
      words_[i >> 6] &= ~bit;
    }
  }

  void fill(bool v) noexcept {
    for (auto& w : words_) w = v ? ~std::uint64_t{0} : 0;
    trim();
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const noexcept {
    for (auto w : words_) {
      if (w != 0) return true;
    }
    return false;
  }
  bool none() const noexcept { return !any(); }

  std::vector<std::uint64_t>& words() noexcept { return words_; }
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  BitRow& operator&=(const BitRow& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  BitRow& operator|=(const BitRow& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  BitRow& operator^=(const BitRow& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }

  friend BitRow operator&(BitRow a, const BitRow& b) noexcept { return a &= b; }
  friend BitRow operator|(BitRow a, const BitRow& b) noexcept { return a |= b; }
  friend BitRow operator^(BitRow a, const BitRow& b) noexcept { return a ^= b; }
  friend BitRow operator~(BitRow a) noexcept {
    for (auto& w : a.words_) w = ~w;
    a.trim();
    return a;
  }

  bool operator==(const BitRow&) const = default;

 private:
  void trim() noexcept {
    if (size_ % 64 != 0 && !words_.empty()) {
      words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace sramntt
