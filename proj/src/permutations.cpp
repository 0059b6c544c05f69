#include "bft/permutations.hpp"

#include <algorithm>
#include <charconv>

namespace bft {

namespace {

std::vector<std::uint8_t> parse_bits(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw invalid_code("code must consist of 0/1 characters");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return bits;
}

std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s += static_cast<char>('0' + b);
  return s;
}

void check_bits(const std::vector<std::uint8_t>& bits) {
  for (auto b : bits) {
    if (b > 1) throw invalid_code("code entries must be 0 or 1");
  }
}

Permutation expand_block(const ButterflyCode& code, std::size_t heap_index, std::size_t levels) {
  if (levels == 0) return Permutation({1});
  Permutation left = expand_block(code, 2 * heap_index, levels - 1);
  Permutation right = expand_block(code, 2 * heap_index + 1, levels - 1);
  return code.at(heap_index) == 0 ? direct_sum(left, right) : skew_sum(left, right);
}

BinaryTree tree_block(const ButterflyCode& code, std::size_t heap_index, std::size_t levels) {
  if (levels == 0) return BinaryTree::single();
  BinaryTree left = tree_block(code, 2 * heap_index, levels - 1);
  BinaryTree right = tree_block(code, 2 * heap_index + 1, levels - 1);
  return code.at(heap_index) == 0 ? glue_plus(left, right, GlueMode::kShapeOnly)
                                  : glue_minus(left, right, GlueMode::kShapeOnly);
}

}  // namespace

Permutation::Permutation(std::vector<std::uint32_t> values) : values_(std::move(values)) {
  std::vector<std::uint8_t> seen(values_.size() + 1, 0);
  for (auto v : values_) {
    if (v == 0 || v > values_.size()) throw invalid_permutation("value out of range 1..m");
    if (seen[v]++) throw invalid_permutation("repeated value");
  }
}

Permutation Permutation::identity(std::size_t m) {
  std::vector<std::uint32_t> v(m);
  for (std::size_t i = 0; i < m; ++i) v[i] = static_cast<std::uint32_t>(i + 1);
  return Permutation(std::move(v));
}

std::string to_string(const Permutation& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p[i]);
  }
  return s;
}

Permutation parse_permutation(std::string_view text) {
  std::vector<std::uint32_t> values;
  if (text.empty()) return Permutation();
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view field = text.substr(pos, comma - pos);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    std::uint32_t v = 0;
    auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || end != field.data() + field.size()) {
      throw invalid_permutation("bad permutation entry '" + std::string(field) + "'");
    }
    values.push_back(v);
    pos = comma + 1;
  }
  if (values.empty()) throw invalid_permutation("empty permutation");
  return Permutation(std::move(values));
}

SimpleButterflyCode::SimpleButterflyCode(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  check_bits(bits_);
}

SimpleButterflyCode SimpleButterflyCode::parse(std::string_view text) {
  return SimpleButterflyCode(parse_bits(text));
}

SimpleButterflyCode SimpleButterflyCode::from_index(std::uint64_t index, std::size_t n) {
  std::vector<std::uint8_t> bits(n);
  for (std::size_t j = 0; j < n; ++j) bits[j] = static_cast<std::uint8_t>((index >> j) & 1U);
  return SimpleButterflyCode(std::move(bits));
}

std::size_t SimpleButterflyCode::ones() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

SimpleButterflyCode SimpleButterflyCode::complement() const {
  auto bits = bits_;
  for (auto& b : bits) b ^= 1U;
  return SimpleButterflyCode(std::move(bits));
}

SimpleButterflyCode SimpleButterflyCode::reversed() const {
  return SimpleButterflyCode(std::vector<std::uint8_t>(bits_.rbegin(), bits_.rend()));
}

std::string to_string(const SimpleButterflyCode& code) { return bits_to_string(code.bits()); }

ButterflyCode::ButterflyCode(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  check_bits(bits_);
  const std::size_t len = bits_.size() + 1;
  if ((len & (len - 1)) != 0) throw invalid_code("butterfly code length must be 2^n - 1");
  while ((std::size_t{1} << levels_) < len) ++levels_;
}

ButterflyCode ButterflyCode::parse(std::string_view text) { return ButterflyCode(parse_bits(text)); }

ButterflyCode ButterflyCode::from_index(std::uint64_t index, std::size_t levels) {
  if (levels > 6) throw invalid_code("from_index supports at most 6 levels");
  std::vector<std::uint8_t> bits((std::size_t{1} << levels) - 1);
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = static_cast<std::uint8_t>((index >> i) & 1U);
  return ButterflyCode(std::move(bits));
}

ButterflyCode ButterflyCode::from_simple(const SimpleButterflyCode& code) {
  const std::size_t n = code.size();
  std::vector<std::uint8_t> bits((std::size_t{1} << n) - 1);
  for (std::size_t d = 0; d < n; ++d) {
    for (std::size_t h = std::size_t{1} << d; h < (std::size_t{2} << d); ++h) bits[h - 1] = code[n - 1 - d];
  }
  return ButterflyCode(std::move(bits));
}

std::string to_string(const ButterflyCode& code) { return bits_to_string(code.bits()); }

Permutation direct_sum(const Permutation& p1, const Permutation& p2) {
  std::vector<std::uint32_t> v(p1.values());
  const auto shift = static_cast<std::uint32_t>(p1.size());
  for (auto x : p2.values()) v.push_back(x + shift);
  return Permutation(std::move(v));
}

Permutation skew_sum(const Permutation& p1, const Permutation& p2) {
  std::vector<std::uint32_t> v;
  v.reserve(p1.size() + p2.size());
  const auto shift = static_cast<std::uint32_t>(p2.size());
  for (auto x : p1.values()) v.push_back(x + shift);
  v.insert(v.end(), p2.values().begin(), p2.values().end());
  return Permutation(std::move(v));
}

Permutation kronecker(const Permutation& p1, const Permutation& p2) {
  const auto m2 = static_cast<std::uint32_t>(p2.size());
  std::vector<std::uint32_t> v;
  v.reserve(p1.size() * p2.size());
  for (auto a : p1.values()) {
    for (auto b : p2.values()) v.push_back((a - 1) * m2 + b);
  }
  return Permutation(std::move(v));
}

Permutation expand_simple(const SimpleButterflyCode& code) {
  static const Permutation kTau({2, 1});
  static const Permutation kId2({1, 2});
  Permutation result({1});
  // Building from the innermost factor outward: result <- tau^{x_j} (x) result.
  for (std::size_t j = 0; j < code.size(); ++j) result = kronecker(code[j] ? kTau : kId2, result);
  return result;
}

Permutation expand_butterfly(const ButterflyCode& code) { return expand_block(code, 1, code.levels()); }

BinaryTree tree_from_simple_code(const SimpleButterflyCode& code) {
  BinaryTree t = BinaryTree::single();
  for (std::size_t j = 0; j < code.size(); ++j) {
    t = code[j] == 0 ? glue_plus(t, t, GlueMode::kShapeOnly) : glue_minus(t, t, GlueMode::kShapeOnly);
  }
  return t;
}

BinaryTree tree_from_butterfly_code(const ButterflyCode& code) { return tree_block(code, 1, code.levels()); }

Integer simple_height_formula(const SimpleButterflyCode& code) {
  const auto w = static_cast<unsigned long>(code.ones());
  const auto n = static_cast<unsigned long>(code.size());
  return pow2(w) + pow2(n - w) - 2;
}

std::pair<Integer, Integer> lis_lds(const SimpleButterflyCode& code) {
  const auto w = static_cast<unsigned long>(code.ones());
  const auto n = static_cast<unsigned long>(code.size());
  return {pow2(n - w), pow2(w)};
}

}  // namespace bft
