#ifndef TROJANFORGE_BITVEC_H_
#define TROJANFORGE_BITVEC_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace trojanforge {

inline constexpr unsigned kMaxWidth = 64;

/// Fixed-width bit word, 1 to 64 bits. Bit 0 is the least significant bit
/// and every position at or above `width()` is held at zero.
class BitVec {
 public:
  /// Bits above `width` are masked off. Throws Error if width is not in 1..64.
  BitVec(unsigned width, std::uint64_t bits);

  static BitVec zeros(unsigned width) { return BitVec(width, 0); }
  static BitVec ones(unsigned width) { return BitVec(width, ~std::uint64_t{0}); }

  unsigned width() const { return width_; }
  std::uint64_t bits() const { return bits_; }
  std::uint64_t mask() const { return mask_for(width_); }

  bool bit(unsigned index) const;
  BitVec with_bit(unsigned index, bool value) const;
  unsigned popcount() const;

  // Binary operators require equal widths.
  BitVec operator^(const BitVec& rhs) const;
  BitVec operator&(const BitVec& rhs) const;
  BitVec operator|(const BitVec& rhs) const;
  BitVec operator~() const { return BitVec(width_, ~bits_); }

  bool operator==(const BitVec&) const = default;

  std::string to_hex() const;

  static constexpr std::uint64_t mask_for(unsigned width) {
    return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  }

 private:
  void require_same_width(const BitVec& rhs) const;

  unsigned width_;
  std::uint64_t bits_;
};

enum class ReductionOp { kAnd, kOr, kXor, kNand, kNor, kXnor };

inline constexpr std::array<ReductionOp, 6> kAllReductionOps = {
    ReductionOp::kAnd,  ReductionOp::kOr,  ReductionOp::kXor,
    ReductionOp::kNand, ReductionOp::kNor, ReductionOp::kXnor};

/// Verilog unary reduction (&v, |v, ^v, ~&v, ~|v, ~^v) over the in-width bits.
bool reduce(ReductionOp op, const BitVec& v);

/// Lowercase mnemonic: and, or, xor, nand, nor, xnor.
std::string_view to_string(ReductionOp op);
std::optional<ReductionOp> parse_reduction_op(std::string_view name);

enum class ExtendMode { kReplicate, kZeroExtend };

/// Widens a single bit: replicate copies it into every position, zero-extend
/// places it at bit 0.
BitVec extend(bool b, unsigned width, ExtendMode mode);

std::string_view to_string(ExtendMode mode);

}  // namespace trojanforge

#endif  // TROJANFORGE_BITVEC_H_
