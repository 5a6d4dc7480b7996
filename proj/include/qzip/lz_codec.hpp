#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qzip/bitstring.hpp"
#include "qzip/quantum_core.hpp"

namespace qzip {

struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bits needed to reference one of `entry_count` dictionary entries.
inline unsigned index_bit_width(std::uint32_t entry_count) {
  return entry_count <= 1 ? 0u : static_cast<unsigned>(std::bit_width(entry_count - 1));
}

// Incremental phrase tree over the binary alphabet. Phrase 0 is the empty
// root; every other phrase is a one-symbol extension of an earlier phrase.
class LZDictionary {
 public:
  LZDictionary() { nodes_.push_back(Node{{-1, -1}, 0, 0, 0}); }

  std::uint32_t phrase_count() const { return static_cast<std::uint32_t>(nodes_.size()); }

  std::int32_t child(std::uint32_t node, unsigned symbol) const {
    return nodes_[node].child[symbol];
  }

  std::uint32_t add_child(std::uint32_t parent, unsigned symbol) {
    const auto index = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back(Node{{-1, -1}, parent, static_cast<std::uint8_t>(symbol),
                          nodes_[parent].length + 1});
    nodes_[parent].child[symbol] = static_cast<std::int32_t>(index);
    return index;
  }

  std::uint32_t phrase_length(std::uint32_t node) const { return nodes_[node].length; }

  // Appends the symbols of the phrase (root excluded) to `out`.
  void append_phrase(std::uint32_t node, std::vector<std::uint8_t>& out) const;

 private:
  struct Node {
    std::array<std::int32_t, 2> child;
    std::uint32_t parent;
    std::uint8_t symbol;
    std::uint32_t length;
  };
  std::vector<Node> nodes_;
};

struct LZPair {
  std::uint32_t prefix;  // dictionary index of the longest previously seen prefix
  std::uint8_t symbol;   // one-symbol extension

  bool operator==(const LZPair&) const = default;
};

// Result of the incremental parse: complete phrases plus the (possibly empty)
// unfinished suffix, which always equals an existing phrase.
struct ParseOutput {
  std::vector<LZPair> pairs;
  std::uint32_t tail_phrase = 0;

  // Rebuilds the input by concatenating phrase strings; independent of the
  // encoder state, so it doubles as a parse-validity check.
  std::vector<std::uint8_t> reconstruct() const;

  // The complete phrases as explicit symbol strings, in creation order.
  std::vector<std::vector<std::uint8_t>> phrase_list() const;
};

ParseOutput lz_parse(std::span<const std::uint8_t> symbols);

void append_elias_gamma(BitString& bits, std::uint64_t value);  // value >= 1

// Serialization: an Elias-gamma header holding (pair count + 1), one record
// [prefix index][symbol bit] per complete phrase, and a final tail record
// [tail phrase index]. Index fields use index_bit_width(current dictionary
// size) bits, most significant first. The header-determined record structure
// makes the code self-delimiting (prefix-free).
BitString lz_encode(std::span<const std::uint8_t> symbols);

// Strict inverse of lz_encode: consumes the whole bitstring and throws
// DecodeError on truncation, out-of-range references, or trailing bits.
std::vector<std::uint8_t> lz_decode(const BitString& code);

// One condensed register: the packed codeword occupying the leading
// positions, then blank (zero) positions. When the codeword overflows the
// register there is nothing blank and the total length grows with it.
struct CondensedBlock {
  BitString data_bits;
  std::size_t blank_count = 0;
  std::size_t total_length = 0;  // |data_bits| + blank_count

  BitString as_register() const { return data_bits.padded_to(total_length); }
};

CondensedBlock condense_block(std::span<const std::uint8_t> symbols);

struct PrefixDecodeResult {
  std::vector<std::uint8_t> symbols;
  std::size_t bits_consumed;
};

// Decodes the leading codeword of `code`, ignoring any bits after the tail
// record. Returns nullopt instead of throwing on malformed input; used when
// decoding truncated registers whose suffix was discarded.
std::optional<PrefixDecodeResult> lz_try_decode_prefix(const BitString& code);

// Fixed-width binary pre-coding for alphabets larger than 2.
std::vector<std::uint8_t> symbols_to_bits(std::span<const std::uint8_t> symbols,
                                          unsigned alphabet_size);

// The parse/encode map realized as an explicit bijection on n-bit strings.
// Inputs ranked by (codeword length, codeword, input) map to outputs ordered
// so that shorter codewords receive more trailing zeros: an input whose
// codeword fits in n bits keeps the codeword as its leading bits followed by
// zeros; the rest are assigned the remaining outputs by descending
// trailing-zero count. Bit 1 of a string is the most significant integer bit.
class LZPermutation {
 public:
  explicit LZPermutation(int n_bits);  // n_bits <= 20

  std::uint32_t apply(std::uint32_t input) const { return forward_[input]; }
  std::uint32_t invert(std::uint32_t output) const { return inverse_[output]; }
  int bits() const { return n_bits_; }

 private:
  int n_bits_;
  std::vector<std::uint32_t> forward_;
  std::vector<std::uint32_t> inverse_;
};

struct RateEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t trials = 0;
};

// Mean codeword length per symbol over i.i.d. blocks from mu.
RateEstimate empirical_rate(const ProbabilityDistribution& mu, std::size_t n, std::size_t trials,
                            std::uint64_t seed);

}  // namespace qzip
