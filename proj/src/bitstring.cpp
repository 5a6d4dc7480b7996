#include "qzip/bitstring.hpp"

#include <bit>
#include <stdexcept>

namespace qzip {

BitString BitString::zeros(std::size_t count) {
  BitString out;
  out.size_ = count;
  out.words_.assign((count + 63) / 64, 0ULL);
  return out;
}

BitString BitString::from_bools(const std::vector<std::uint8_t>& bits) {
  BitString out = zeros(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out.words_[i >> 6] |= 1ULL << (i & 63);
  }
  return out;
}

BitString BitString::from_words(std::vector<std::uint64_t> words, std::size_t bit_count) {
  if (bit_count > words.size() * 64) {
    throw std::invalid_argument("BitString::from_words: bit count exceeds data");
  }
  BitString out;
  out.size_ = bit_count;
  words.resize((bit_count + 63) / 64);
  out.words_ = std::move(words);
  if ((bit_count & 63) != 0 && !out.words_.empty()) {
    out.words_.back() &= (1ULL << (bit_count & 63)) - 1;
  }
  return out;
}

void BitString::push_back(bool bit) {
  if ((size_ & 63) == 0) words_.push_back(0ULL);
  if (bit) words_[size_ >> 6] |= 1ULL << (size_ & 63);
  ++size_;
}

void BitString::append_uint(std::uint64_t value, unsigned width) {
  for (unsigned i = width; i-- > 0;) {
    push_back((value >> i) & 1ULL);
  }
}

void BitString::append(const BitString& other) {
  for (std::size_t i = 0; i < other.size_; ++i) push_back(other.bit(i));
}

void BitString::set_bit(std::size_t i, bool value) {
  const std::uint64_t mask = 1ULL << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

BitString BitString::padded_to(std::size_t size) const {
  BitString out = *this;
  out.words_.resize((size + 63) / 64, 0ULL);
  if (size < size_ && (size & 63) != 0) {
    out.words_.back() &= (1ULL << (size & 63)) - 1;
  }
  out.size_ = size;
  return out;
}

std::size_t BitString::last_one_position() const {
  for (std::size_t w = words_.size(); w-- > 0;) {
    if (words_[w] != 0) {
      const int high = 63 - std::countl_zero(words_[w]);
      return w * 64 + static_cast<std::size_t>(high) + 1;
    }
  }
  return 0;
}

std::vector<std::uint8_t> BitString::to_bytes() const {
  std::vector<std::uint8_t> bytes((size_ + 7) / 8, 0);
  for (std::size_t i = 0; i < size_; ++i) {
    if (bit(i)) bytes[i >> 3] |= static_cast<std::uint8_t>(1u << (7 - (i & 7)));
  }
  return bytes;
}

BitString BitString::from_bytes(const std::vector<std::uint8_t>& bytes, std::size_t bit_count) {
  if (bit_count > bytes.size() * 8) {
    throw std::invalid_argument("BitString::from_bytes: bit count exceeds data");
  }
  BitString out = zeros(bit_count);
  for (std::size_t i = 0; i < bit_count; ++i) {
    if ((bytes[i >> 3] >> (7 - (i & 7))) & 1u) out.words_[i >> 6] |= 1ULL << (i & 63);
  }
  return out;
}

bool BitString::operator==(const BitString& other) const {
  if (size_ != other.size_) return false;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t a = words_[w];
    std::uint64_t b = other.words_[w];
    if (w == words_.size() - 1 && (size_ & 63) != 0) {
      const std::uint64_t mask = (1ULL << (size_ & 63)) - 1;
      a &= mask;
      b &= mask;
    }
    if (a != b) return false;
  }
  return true;
}

}  // namespace qzip
