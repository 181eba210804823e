#include "munch/bool_matrix.hpp"

#include <bit>

#include "munch/error.hpp"

namespace munch {

BoolMatrix::BoolMatrix(std::size_t dim) : dim_(static_cast<std::uint8_t>(dim)) {
  if (dim > kMaxDim) {
    throw PreconditionError("boolean matrix dimension " + std::to_string(dim) +
                            " exceeds " + std::to_string(kMaxDim));
  }
}

BoolMatrix BoolMatrix::identity(std::size_t dim) {
  BoolMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.set(i, i, true);
  return m;
}

BoolMatrix BoolMatrix::from_bits(std::size_t dim, std::uint64_t bits) {
  if (dim * dim > 64) {
    throw PreconditionError("from_bits needs dim*dim <= 64");
  }
  BoolMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      m.set(i, j, (bits >> (i * dim + j)) & 1u);
    }
  }
  return m;
}

void BoolMatrix::set(std::size_t i, std::size_t j, bool value) {
  const auto bit = static_cast<std::uint16_t>(1u << j);
  if (value) {
    rows_[i] |= bit;
  } else {
    rows_[i] &= static_cast<std::uint16_t>(~bit);
  }
}

BoolMatrix BoolMatrix::operator|(const BoolMatrix& other) const {
  BoolMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    r.rows_[i] = static_cast<std::uint16_t>(rows_[i] | other.rows_[i]);
  }
  return r;
}

BoolMatrix BoolMatrix::operator*(const BoolMatrix& other) const {
  BoolMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    std::uint16_t acc = 0;
    for (std::uint16_t row = rows_[i]; row != 0; row &= row - 1) {
      acc |= other.rows_[std::countr_zero(row)];
    }
    r.rows_[i] = acc;
  }
  return r;
}

BoolMatrix BoolMatrix::transposed() const {
  BoolMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (get(i, j)) r.set(j, i, true);
    }
  }
  return r;
}

BoolMatrix BoolMatrix::closure() const {
  // Warshall on the reflexive matrix.
  BoolMatrix r = *this | identity(dim_);
  for (std::size_t k = 0; k < dim_; ++k) {
    for (std::size_t i = 0; i < dim_; ++i) {
      if (r.get(i, k)) r.rows_[i] |= r.rows_[k];
    }
  }
  return r;
}

bool BoolMatrix::subset_of(const BoolMatrix& other) const {
  for (std::size_t i = 0; i < dim_; ++i) {
    if ((rows_[i] & ~other.rows_[i]) != 0) return false;
  }
  return true;
}

bool BoolMatrix::empty() const {
  for (std::size_t i = 0; i < dim_; ++i) {
    if (rows_[i] != 0) return false;
  }
  return true;
}

}  // namespace munch
