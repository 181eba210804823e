#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>

namespace munch {

/// Square boolean matrix of dimension at most kMaxDim, stored as one bitmask
/// per row. Trivially copyable so semiring values never allocate.
class BoolMatrix {
 public:
  static constexpr std::size_t kMaxDim = 16;

  BoolMatrix() = default;
  explicit BoolMatrix(std::size_t dim);

  static BoolMatrix identity(std::size_t dim);
  /// Row-major bit i*dim+j of `bits` becomes entry (i, j); needs dim*dim <= 64.
  static BoolMatrix from_bits(std::size_t dim, std::uint64_t bits);

  std::size_t dim() const { return dim_; }
  bool get(std::size_t i, std::size_t j) const {
    return (rows_[i] >> j) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool value);
  std::uint16_t row(std::size_t i) const { return rows_[i]; }

  BoolMatrix operator|(const BoolMatrix& other) const;
  BoolMatrix operator*(const BoolMatrix& other) const;
  BoolMatrix transposed() const;
  /// Reflexive-transitive closure.
  BoolMatrix closure() const;
  bool subset_of(const BoolMatrix& other) const;
  bool empty() const;

  friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;
  friend auto operator<=>(const BoolMatrix&, const BoolMatrix&) = default;

 private:
  std::uint8_t dim_ = 0;
  std::array<std::uint16_t, kMaxDim> rows_{};
};

}  // namespace munch
