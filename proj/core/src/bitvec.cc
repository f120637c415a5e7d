#include "trojanforge/bitvec.h"

#include <bit>
#include <cstdio>

#include "trojanforge/error.h"

namespace trojanforge {

namespace {

void require_width(unsigned width) {
  if (width < 1 || width > kMaxWidth) {
    throw Error("bit width " + std::to_string(width) + " outside 1..64");
  }
}

}  // namespace

BitVec::BitVec(unsigned width, std::uint64_t bits) : width_(width), bits_(0) {
  require_width(width);
  bits_ = bits & mask_for(width);
}

bool BitVec::bit(unsigned index) const {
  if (index >= width_) {
    throw Error("bit index " + std::to_string(index) + " outside width " +
                std::to_string(width_));
  }
  return (bits_ >> index) & 1U;
}

BitVec BitVec::with_bit(unsigned index, bool value) const {
  if (index >= width_) {
    throw Error("bit index " + std::to_string(index) + " outside width " +
                std::to_string(width_));
  }
  const std::uint64_t m = std::uint64_t{1} << index;
  return BitVec(width_, value ? (bits_ | m) : (bits_ & ~m));
}

unsigned BitVec::popcount() const { return std::popcount(bits_); }

void BitVec::require_same_width(const BitVec& rhs) const {
  if (rhs.width_ != width_) {
    throw Error("width mismatch: " + std::to_string(width_) + " vs " +
                std::to_string(rhs.width_));
  }
}

BitVec BitVec::operator^(const BitVec& rhs) const {
  require_same_width(rhs);
  return BitVec(width_, bits_ ^ rhs.bits_);
}

BitVec BitVec::operator&(const BitVec& rhs) const {
  require_same_width(rhs);
  return BitVec(width_, bits_ & rhs.bits_);
}

BitVec BitVec::operator|(const BitVec& rhs) const {
  require_same_width(rhs);
  return BitVec(width_, bits_ | rhs.bits_);
}

std::string BitVec::to_hex() const {
  const int digits = static_cast<int>((width_ + 3) / 4);
  char buf[24];
  std::snprintf(buf, sizeof buf, "%0*llx", digits,
                static_cast<unsigned long long>(bits_));
  return buf;
}

bool reduce(ReductionOp op, const BitVec& v) {
  switch (op) {
    case ReductionOp::kAnd:
      return v.bits() == v.mask();
    case ReductionOp::kOr:
      return v.bits() != 0;
    case ReductionOp::kXor:
      return (std::popcount(v.bits()) & 1) != 0;
    case ReductionOp::kNand:
      return v.bits() != v.mask();
    case ReductionOp::kNor:
      return v.bits() == 0;
    case ReductionOp::kXnor:
      return (std::popcount(v.bits()) & 1) == 0;
  }
  return false;
}

std::string_view to_string(ReductionOp op) {
  switch (op) {
    case ReductionOp::kAnd:
      return "and";
    case ReductionOp::kOr:
      return "or";
    case ReductionOp::kXor:
      return "xor";
    case ReductionOp::kNand:
      return "nand";
    case ReductionOp::kNor:
      return "nor";
    case ReductionOp::kXnor:
      return "xnor";
  }
  return "?";
}

std::optional<ReductionOp> parse_reduction_op(std::string_view name) {
  for (ReductionOp op : kAllReductionOps) {
    if (to_string(op) == name) return op;
  }
  return std::nullopt;
}

BitVec extend(bool b, unsigned width, ExtendMode mode) {
  require_width(width);
  if (!b) return BitVec::zeros(width);
  return mode == ExtendMode::kReplicate ? BitVec::ones(width)
                                        : BitVec(width, 1);
}

std::string_view to_string(ExtendMode mode) {
  return mode == ExtendMode::kReplicate ? "replicate" : "zero";
}

}  // namespace trojanforge
