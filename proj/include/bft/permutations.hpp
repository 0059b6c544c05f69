#ifndef BFT_PERMUTATIONS_HPP
#define BFT_PERMUTATIONS_HPP

// Butterfly permutations and their compressed encodings.
//
// Bit semantics everywhere: 0 selects the direct sum (glue on the right
// spine), 1 selects the skew sum (glue on the left spine).

#include "bft/core_tree.hpp"
#include "bft/numeric.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bft {

class invalid_code : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bijection of {1..m} in one-line notation.
class Permutation {
 public:
  Permutation() = default;  // the empty permutation
  explicit Permutation(std::vector<std::uint32_t> values);  // throws invalid_permutation

  static Permutation identity(std::size_t m);

  std::size_t size() const { return values_.size(); }
  std::uint32_t operator[](std::size_t i) const { return values_[i]; }
  const std::vector<std::uint32_t>& values() const { return values_; }

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::uint32_t> values_;
};

/// "3,1,4,2"
std::string to_string(const Permutation& p);
/// The empty string parses to the empty permutation.
Permutation parse_permutation(std::string_view text);

/// n bits; bits[0] is x_1, the first (innermost) gluing level.
class SimpleButterflyCode {
 public:
  SimpleButterflyCode() = default;
  explicit SimpleButterflyCode(std::vector<std::uint8_t> bits);  // entries must be 0/1

  static SimpleButterflyCode parse(std::string_view text);  // ASCII 0/1, may be empty
  static SimpleButterflyCode from_index(std::uint64_t index, std::size_t n);  // bit j-1 of index is x_j

  std::size_t size() const { return bits_.size(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::size_t ones() const;

  SimpleButterflyCode complement() const;
  SimpleButterflyCode reversed() const;

  bool operator==(const SimpleButterflyCode&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

std::string to_string(const SimpleButterflyCode& code);

/// 2^n - 1 bits in heap layout: entry 1 is the outermost merge and entries
/// 2i, 2i+1 encode the left / right sub-blocks of entry i. The left sub-block
/// is the parent operand of the merge, the right one the child.
class ButterflyCode {
 public:
  ButterflyCode() = default;  // n = 0
  explicit ButterflyCode(std::vector<std::uint8_t> bits);  // throws invalid_code

  static ButterflyCode parse(std::string_view text);
  static ButterflyCode from_index(std::uint64_t index, std::size_t levels);
  /// The code whose every level-d entry is x_{n-d}; expands to the same
  /// permutation as `code`.
  static ButterflyCode from_simple(const SimpleButterflyCode& code);

  std::size_t levels() const { return levels_; }
  std::size_t size() const { return bits_.size(); }
  /// 1-based heap index.
  std::uint8_t at(std::size_t heap_index) const { return bits_[heap_index - 1]; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  bool operator==(const ButterflyCode&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t levels_ = 0;
};

std::string to_string(const ButterflyCode& code);

Permutation direct_sum(const Permutation& p1, const Permutation& p2);
Permutation skew_sum(const Permutation& p1, const Permutation& p2);
/// result[(i-1)*m2 + j] = (p1[i]-1)*m2 + p2[j]
Permutation kronecker(const Permutation& p1, const Permutation& p2);

/// tau^{x_n} (x) ... (x) tau^{x_1}
Permutation expand_simple(const SimpleButterflyCode& code);
Permutation expand_butterfly(const ButterflyCode& code);

/// Keyless trees built by repeated gluing; node count 2^n.
BinaryTree tree_from_simple_code(const SimpleButterflyCode& code);
BinaryTree tree_from_butterfly_code(const ButterflyCode& code);

/// 2^w + 2^{n-w} - 2 with w the number of ones.
Integer simple_height_formula(const SimpleButterflyCode& code);
/// (LIS, LDS) = (2^{n-w}, 2^w).
std::pair<Integer, Integer> lis_lds(const SimpleButterflyCode& code);

}  // namespace bft

#endif  // BFT_PERMUTATIONS_HPP
