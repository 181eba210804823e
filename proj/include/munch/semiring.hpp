#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "munch/bool_matrix.hpp"

namespace munch {

/// Extended naturals, shared by the min-plus and counting instances.
using ExtNat = std::uint64_t;
inline constexpr ExtNat kInfinity = std::numeric_limits<ExtNat>::max();

enum class SemiringKind : std::uint8_t {
  boolean,
  min_plus,
  counting,
  relation,
  function_table,
};

/// A total table S^X -> S. Entry i is the index (into the base instance's
/// element list) of the output at the i-th input vector.
struct FunctionTable {
  std::vector<std::uint32_t> outputs;

  friend bool operator==(const FunctionTable&, const FunctionTable&) = default;
  friend auto operator<=>(const FunctionTable&, const FunctionTable&) = default;
};

/// An element of one concrete semiring instance. The kind tag travels with the
/// payload; instance parameters (relation dimension, table size) are checked
/// by the owning Semiring on every operation.
class Value {
 public:
  using Payload = std::variant<bool, ExtNat, BoolMatrix, FunctionTable>;

  Value() = default;
  Value(SemiringKind kind, Payload payload)
      : kind_(kind), payload_(std::move(payload)) {}

  SemiringKind kind() const { return kind_; }
  const Payload& payload() const { return payload_; }

  bool as_bool() const { return std::get<bool>(payload_); }
  ExtNat as_nat() const { return std::get<ExtNat>(payload_); }
  const BoolMatrix& as_matrix() const { return std::get<BoolMatrix>(payload_); }
  const FunctionTable& as_table() const {
    return std::get<FunctionTable>(payload_);
  }

  friend bool operator==(const Value&, const Value&) = default;
  friend auto operator<=>(const Value&, const Value&) = default;

 private:
  SemiringKind kind_ = SemiringKind::boolean;
  Payload payload_ = false;
};

/// Indexed by variable id; all entries from one instance.
using ValueVector = std::vector<Value>;

struct SemiringDescriptor {
  std::string name;
  bool idempotent = false;
  bool commutative = false;
  bool finite = false;
  std::string domain;
};

namespace detail {
class SemiringImpl;
}

/// Handle to an io-semiring instance (or the counting semiring, which is
/// ω-continuous but not idempotent). Cheap to copy; instances are immutable.
class Semiring {
 public:
  static Semiring boolean();
  static Semiring min_plus();
  /// Values above `cap` saturate to infinity.
  static Semiring counting(ExtNat cap = ExtNat{1} << 62);
  static Semiring relation(std::size_t dim = 2);
  /// Tables S^X -> S with pointwise operations; `base` must be finite.
  static Semiring function_table(const Semiring& base, std::size_t num_vars);

  const SemiringDescriptor& descriptor() const;
  const std::string& name() const { return descriptor().name; }
  SemiringKind kind() const;
  bool idempotent() const { return descriptor().idempotent; }
  bool commutative() const { return descriptor().commutative; }
  bool finite() const { return descriptor().finite; }

  Value zero() const;
  Value one() const;
  Value add(const Value& a, const Value& b) const;
  Value mul(const Value& a, const Value& b) const;
  Value star(const Value& a) const;
  /// The natural order. Idempotent instances decide a + b == b; the counting
  /// instance compares numerically.
  bool leq(const Value& a, const Value& b) const;
  bool is_zero(const Value& a) const { return a == zero(); }

  /// True iff `a` is an element of this instance.
  bool owns(const Value& a) const;
  /// All elements of a finite instance, in a fixed order. Throws for infinite
  /// instances or when the carrier is too large to list.
  std::vector<Value> elements() const;

  Value parse_literal(std::string_view text) const;
  std::string render(const Value& a) const;

  Value from_nat(ExtNat n) const;
  Value from_matrix(const BoolMatrix& m) const;
  Value from_bool(bool b) const;

  /// Relation dimension |Q|; 0 for other kinds.
  std::size_t relation_dim() const;
  ExtNat counting_cap() const;

  bool operator==(const Semiring& other) const;

 private:
  explicit Semiring(std::shared_ptr<const detail::SemiringImpl> impl)
      : impl_(std::move(impl)) {}

  std::shared_ptr<const detail::SemiringImpl> impl_;
};

// Componentwise helpers over ValueVector.
ValueVector zero_vector(const Semiring& sr, std::size_t n);
ValueVector add(const Semiring& sr, const ValueVector& a, const ValueVector& b);
bool leq(const Semiring& sr, const ValueVector& a, const ValueVector& b);
std::string render(const Semiring& sr, const ValueVector& v);

/// View of a function-table semiring that knows how to build and query tables.
/// Input vectors are numbered in mixed radix with variable 0 most significant.
class FunctionSpace {
 public:
  FunctionSpace(Semiring base, std::size_t num_vars);

  const Semiring& semiring() const { return functions_; }
  const Semiring& base() const { return base_; }
  std::size_t num_vars() const { return num_vars_; }
  std::size_t domain_size() const { return domain_size_; }

  ValueVector point(std::size_t index) const;
  std::size_t index_of(std::span<const Value> point) const;

  Value tabulate(const std::function<Value(const ValueVector&)>& fn) const;
  Value constant(const Value& c) const;
  Value projection(std::size_t var) const;
  Value at(const Value& table, std::size_t index) const;
  Value apply(const Value& table, std::span<const Value> point) const;

 private:
  Semiring base_;
  std::size_t num_vars_;
  Semiring functions_;
  std::vector<Value> elements_;
  std::size_t domain_size_;
};

}  // namespace munch
