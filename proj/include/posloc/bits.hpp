#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace posloc {

/// Fixed-size packed bit matrix, row-major. Rows are independently usable as
/// bit sets (e.g. up-sets / down-sets of a poset element).
class BitMatrix {
public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64),
        bits_(rows * words_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return words_; }

  bool get(std::size_t r, std::size_t c) const {
    return (bits_[r * words_ + c / 64] >> (c % 64)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v = true) {
    uint64_t& w = bits_[r * words_ + c / 64];
    uint64_t m = uint64_t{1} << (c % 64);
    if (v) w |= m; else w &= ~m;
  }

  const uint64_t* row(std::size_t r) const { return bits_.data() + r * words_; }
  uint64_t* row(std::size_t r) { return bits_.data() + r * words_; }

  /// dst := row(a) & row(b), dst must hold words_per_row() words.
  void row_and(std::size_t a, std::size_t b, uint64_t* dst) const {
    const uint64_t* ra = row(a);
    const uint64_t* rb = row(b);
    for (std::size_t i = 0; i < words_; ++i) dst[i] = ra[i] & rb[i];
  }

  /// true iff row(a) is a subset of row(b).
  bool row_subset(std::size_t a, std::size_t b) const {
    const uint64_t* ra = row(a);
    const uint64_t* rb = row(b);
    for (std::size_t i = 0; i < words_; ++i)
      if (ra[i] & ~rb[i]) return false;
    return true;
  }

  bool operator==(const BitMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_;
  }

private:
  std::size_t rows_ = 0, cols_ = 0, words_ = 0;
  std::vector<uint64_t> bits_;
};

/// Iterates the set bits of a word array of `words` words, calling fn(index).
template <typename Fn>
inline void for_each_bit(const uint64_t* w, std::size_t words, Fn&& fn) {
  for (std::size_t i = 0; i < words; ++i) {
    uint64_t x = w[i];
    while (x) {
      unsigned b = static_cast<unsigned>(__builtin_ctzll(x));
      fn(i * 64 + b);
      x &= x - 1;
    }
  }
}

} // namespace posloc
