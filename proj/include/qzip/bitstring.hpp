#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qzip {

// Packed bit sequence with stable logical ordering: bit 0 is the first bit of
// the stream. Used for LZ codewords and for simulated qubit registers.
class BitString {
 public:
  BitString() = default;

  static BitString zeros(std::size_t count);
  static BitString from_bools(const std::vector<std::uint8_t>& bits);
  // Adopts packed words (bit i at word i/64, bit i%64); excess bits are cleared.
  static BitString from_words(std::vector<std::uint64_t> words, std::size_t bit_count);

  void push_back(bool bit);
  // Appends `width` bits of `value`, most significant first.
  void append_uint(std::uint64_t value, unsigned width);
  void append(const BitString& other);

  bool bit(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1ULL;
  }
  void set_bit(std::size_t i, bool value);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  // Copy extended (or truncated) to `size` bits with zero fill.
  BitString padded_to(std::size_t size) const;

  // 1-based position of the last set bit; 0 when the string has no ones.
  std::size_t last_one_position() const;
  std::size_t trailing_zeros() const { return size_ - last_one_position(); }

  // Byte packing for file I/O: bit i maps to bit (7 - i % 8) of byte i / 8.
  std::vector<std::uint8_t> to_bytes() const;
  static BitString from_bytes(const std::vector<std::uint8_t>& bytes, std::size_t bit_count);

  bool operator==(const BitString& other) const;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

// Sequential reader over a BitString. Callers must check remaining() before
// reading; reading past the end is a programming error.
class BitReader {
 public:
  explicit BitReader(const BitString& bits) : bits_(&bits) {}

  bool read_bit() { return bits_->bit(pos_++); }

  std::uint64_t read_uint(unsigned width) {
    std::uint64_t value = 0;
    for (unsigned i = 0; i < width; ++i) {
      value = (value << 1) | static_cast<std::uint64_t>(read_bit());
    }
    return value;
  }

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return bits_->size() - pos_; }

 private:
  const BitString* bits_;
  std::size_t pos_ = 0;
};

}  // namespace qzip
