#include "qzip/lz_codec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qzip/rng.hpp"
#include "qzip/source_model.hpp"

namespace qzip {

void LZDictionary::append_phrase(std::uint32_t node, std::vector<std::uint8_t>& out) const {
  const std::uint32_t len = nodes_[node].length;
  out.resize(out.size() + len);
  std::size_t pos = out.size();
  for (std::uint32_t cur = node; cur != 0; cur = nodes_[cur].parent) {
    out[--pos] = nodes_[cur].symbol;
  }
}

std::vector<std::uint8_t> ParseOutput::reconstruct() const {
  LZDictionary dict;
  std::vector<std::uint8_t> out;
  for (const LZPair& p : pairs) {
    dict.append_phrase(p.prefix, out);
    out.push_back(p.symbol);
    dict.add_child(p.prefix, p.symbol);
  }
  dict.append_phrase(tail_phrase, out);
  return out;
}

std::vector<std::vector<std::uint8_t>> ParseOutput::phrase_list() const {
  std::vector<std::vector<std::uint8_t>> phrases;
  phrases.reserve(pairs.size() + 1);
  phrases.push_back({});  // root
  for (const LZPair& p : pairs) {
    std::vector<std::uint8_t> phrase = phrases[p.prefix];
    phrase.push_back(p.symbol);
    phrases.push_back(std::move(phrase));
  }
  phrases.erase(phrases.begin());
  return phrases;
}

ParseOutput lz_parse(std::span<const std::uint8_t> symbols) {
  if (symbols.empty()) throw std::invalid_argument("lz_parse: empty input");
  ParseOutput out;
  LZDictionary dict;
  std::uint32_t node = 0;
  for (const std::uint8_t raw : symbols) {
    if (raw > 1) throw std::invalid_argument("lz_parse: non-binary symbol");
    const unsigned symbol = raw;
    const std::int32_t next = dict.child(node, symbol);
    if (next >= 0) {
      node = static_cast<std::uint32_t>(next);
      continue;
    }
    out.pairs.push_back(LZPair{node, static_cast<std::uint8_t>(symbol)});
    dict.add_child(node, symbol);
    node = 0;
  }
  out.tail_phrase = node;
  return out;
}

void append_elias_gamma(BitString& bits, std::uint64_t value) {
  unsigned width = 0;
  while ((value >> width) > 1) ++width;
  for (unsigned i = 0; i < width; ++i) bits.push_back(false);
  bits.append_uint(value, width + 1);
}

BitString lz_encode(std::span<const std::uint8_t> symbols) {
  const ParseOutput parsed = lz_parse(symbols);
  BitString code;
  append_elias_gamma(code, parsed.pairs.size() + 1);
  std::uint32_t entries = 1;  // root
  for (const LZPair& p : parsed.pairs) {
    code.append_uint(p.prefix, index_bit_width(entries));
    code.push_back(p.symbol != 0);
    ++entries;
  }
  code.append_uint(parsed.tail_phrase, index_bit_width(entries));
  return code;
}

CondensedBlock condense_block(std::span<const std::uint8_t> symbols) {
  CondensedBlock block;
  block.data_bits = lz_encode(symbols);
  block.blank_count =
      symbols.size() > block.data_bits.size() ? symbols.size() - block.data_bits.size() : 0;
  block.total_length = block.data_bits.size() + block.blank_count;
  return block;
}

namespace {

// Shared record-stream decoder. In strict mode every malformed condition
// throws; otherwise the caller receives nullopt.
std::optional<PrefixDecodeResult> decode_records(const BitString& code, bool strict,
                                                 bool require_full_consume) {
  auto fail = [&](const char* message) -> std::optional<PrefixDecodeResult> {
    if (strict) throw DecodeError(message);
    return std::nullopt;
  };

  BitReader reader(code);

  // Elias-gamma pair count.
  unsigned zeros = 0;
  for (;;) {
    if (reader.remaining() < 1) return fail("lz_decode: truncated header");
    if (reader.read_bit()) break;
    if (++zeros > 63) return fail("lz_decode: header count overflow");
  }
  if (reader.remaining() < zeros) return fail("lz_decode: truncated header");
  const std::uint64_t pair_count = ((std::uint64_t{1} << zeros) | reader.read_uint(zeros)) - 1;
  if (pair_count > reader.remaining()) return fail("lz_decode: truncated record");

  LZDictionary dict;
  std::vector<std::uint8_t> out;
  for (std::uint64_t t = 0; t < pair_count; ++t) {
    const unsigned width = index_bit_width(dict.phrase_count());
    if (reader.remaining() < width + 1u) return fail("lz_decode: truncated record");
    const std::uint64_t index = reader.read_uint(width);
    if (index >= dict.phrase_count()) return fail("lz_decode: reference out of range");
    const bool symbol = reader.read_bit();
    dict.append_phrase(static_cast<std::uint32_t>(index), out);
    out.push_back(symbol ? 1 : 0);
    dict.add_child(static_cast<std::uint32_t>(index), symbol ? 1u : 0u);
  }

  const unsigned tail_width = index_bit_width(dict.phrase_count());
  if (reader.remaining() < tail_width) return fail("lz_decode: truncated tail record");
  const std::uint64_t tail = reader.read_uint(tail_width);
  if (tail >= dict.phrase_count()) return fail("lz_decode: tail reference out of range");
  dict.append_phrase(static_cast<std::uint32_t>(tail), out);
  if (require_full_consume && reader.remaining() != 0) {
    return fail("lz_decode: trailing bits after tail record");
  }
  return PrefixDecodeResult{std::move(out), reader.position()};
}

}  // namespace

std::vector<std::uint8_t> lz_decode(const BitString& code) {
  return decode_records(code, /*strict=*/true, /*require_full_consume=*/true)->symbols;
}

std::optional<PrefixDecodeResult> lz_try_decode_prefix(const BitString& code) {
  return decode_records(code, /*strict=*/false, /*require_full_consume=*/false);
}

std::vector<std::uint8_t> symbols_to_bits(std::span<const std::uint8_t> symbols,
                                          unsigned alphabet_size) {
  if (alphabet_size < 2) throw std::invalid_argument("symbols_to_bits: alphabet too small");
  const unsigned width = index_bit_width(alphabet_size);
  std::vector<std::uint8_t> bits;
  bits.reserve(symbols.size() * width);
  for (const std::uint8_t s : symbols) {
    if (s >= alphabet_size) throw std::invalid_argument("symbols_to_bits: symbol out of range");
    for (unsigned i = width; i-- > 0;) bits.push_back((s >> i) & 1u);
  }
  return bits;
}

LZPermutation::LZPermutation(int n_bits) : n_bits_(n_bits) {
  if (n_bits < 1 || n_bits > 20) {
    throw std::invalid_argument("LZPermutation: block size must be in [1, 20]");
  }
  const std::uint32_t count = 1u << n_bits;

  struct Entry {
    std::uint8_t length;
    std::uint64_t code;  // MSB-first codeword value, defined for length <= 64
    std::uint32_t input;
  };
  std::vector<Entry> entries(count);
  std::vector<std::uint8_t> buffer(static_cast<std::size_t>(n_bits));
  for (std::uint32_t x = 0; x < count; ++x) {
    for (int b = 0; b < n_bits; ++b) {
      buffer[static_cast<std::size_t>(b)] = (x >> (n_bits - 1 - b)) & 1u;
    }
    const BitString code = lz_encode(buffer);
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < code.size(); ++i) value = (value << 1) | (code.bit(i) ? 1u : 0u);
    entries[x] = Entry{static_cast<std::uint8_t>(code.size()), value, x};
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.length != b.length) return a.length < b.length;
    if (a.code != b.code) return a.code < b.code;
    return a.input < b.input;
  });

  forward_.assign(count, 0);
  inverse_.assign(count, 0);
  std::vector<std::uint8_t> taken(count, 0);

  // Inputs whose codeword fits keep it as the output's leading bits; the
  // self-delimiting code makes these outputs collision-free.
  std::vector<const Entry*> overflow;
  overflow.reserve(count);
  for (const Entry& e : entries) {
    if (e.length <= n_bits) {
      const std::uint32_t y = static_cast<std::uint32_t>(e.code << (n_bits - e.length));
      forward_[e.input] = y;
      taken[y] = 1;
    } else {
      overflow.push_back(&e);
    }
  }

  // Remaining outputs by descending trailing-zero count, assigned in rank
  // order so shorter codewords still land on longer blank runs.
  std::vector<std::uint32_t> pool;
  pool.reserve(overflow.size());
  for (std::uint32_t y = 0; y < count; ++y) {
    if (!taken[y]) pool.push_back(y);
  }
  auto trailing = [n_bits](std::uint32_t y) {
    return y == 0 ? n_bits : std::min(n_bits, std::countr_zero(y));
  };
  std::sort(pool.begin(), pool.end(), [&](std::uint32_t a, std::uint32_t b) {
    const int ta = trailing(a);
    const int tb = trailing(b);
    if (ta != tb) return ta > tb;
    return a < b;
  });
  for (std::size_t i = 0; i < overflow.size(); ++i) forward_[overflow[i]->input] = pool[i];

  for (std::uint32_t x = 0; x < count; ++x) inverse_[forward_[x]] = x;
}

RateEstimate empirical_rate(const ProbabilityDistribution& mu, std::size_t n, std::size_t trials,
                            std::uint64_t seed) {
  if (n == 0 || trials == 0) throw std::invalid_argument("empirical_rate: n and trials positive");
  const auto alphabet = static_cast<unsigned>(mu.size());
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<std::uint8_t> block = sample_block(mu, n, derive_seed(seed, t));
    if (alphabet > 2) block = symbols_to_bits(block, alphabet);
    const double rate = static_cast<double>(lz_encode(block).size()) / static_cast<double>(n);
    sum += rate;
    sum_sq += rate * rate;
  }
  const double mean = sum / static_cast<double>(trials);
  double se = 0.0;
  if (trials > 1) {
    const double var =
        std::max(0.0, (sum_sq - sum * mean) / static_cast<double>(trials - 1));
    se = std::sqrt(var / static_cast<double>(trials));
  }
  return RateEstimate{mean, se, trials};
}

}  // namespace qzip
