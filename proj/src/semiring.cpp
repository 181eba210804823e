#include "munch/semiring.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include "munch/error.hpp"

namespace munch {
namespace detail {

class SemiringImpl {
 public:
  explicit SemiringImpl(SemiringDescriptor descriptor, SemiringKind kind)
      : descriptor_(std::move(descriptor)), kind_(kind) {}
  virtual ~SemiringImpl() = default;

  const SemiringDescriptor& descriptor() const { return descriptor_; }
  SemiringKind kind() const { return kind_; }

  virtual Value zero() const = 0;
  virtual Value one() const = 0;
  virtual Value add(const Value& a, const Value& b) const = 0;
  virtual Value mul(const Value& a, const Value& b) const = 0;
  virtual Value star(const Value& a) const = 0;
  virtual bool leq(const Value& a, const Value& b) const {
    return add(a, b) == b;
  }
  virtual bool owns(const Value& a) const { return a.kind() == kind_; }
  virtual std::vector<Value> elements() const {
    throw PreconditionError("semiring '" + descriptor_.name +
                            "' is not finite");
  }
  virtual Value parse(std::string_view text) const = 0;
  virtual std::string render(const Value& a) const = 0;
  virtual bool same_instance(const SemiringImpl& other) const {
    return kind_ == other.kind_;
  }
  virtual std::size_t relation_dim() const { return 0; }
  virtual ExtNat cap() const { return kInfinity; }

 private:
  SemiringDescriptor descriptor_;
  SemiringKind kind_;
};

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

ExtNat parse_ext_nat(std::string_view text, const std::string& instance) {
  text = trim(text);
  if (text == "inf") return kInfinity;
  ExtNat n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() ||
      n == kInfinity) {
    throw Error("invalid " + instance + " literal '" + std::string(text) + "'");
  }
  return n;
}

std::string render_ext_nat(ExtNat n) {
  return n == kInfinity ? "inf" : std::to_string(n);
}

class BooleanImpl final : public SemiringImpl {
 public:
  BooleanImpl()
      : SemiringImpl({"boolean", true, true, true, "{0, 1} with or/and"},
                     SemiringKind::boolean) {}

  Value zero() const override { return make(false); }
  Value one() const override { return make(true); }
  Value add(const Value& a, const Value& b) const override {
    return make(a.as_bool() || b.as_bool());
  }
  Value mul(const Value& a, const Value& b) const override {
    return make(a.as_bool() && b.as_bool());
  }
  Value star(const Value&) const override { return one(); }
  std::vector<Value> elements() const override { return {zero(), one()}; }
  Value parse(std::string_view text) const override {
    text = trim(text);
    if (text == "0") return zero();
    if (text == "1") return one();
    throw Error("invalid boolean literal '" + std::string(text) + "'");
  }
  std::string render(const Value& a) const override {
    return a.as_bool() ? "1" : "0";
  }

 private:
  static Value make(bool b) { return Value(SemiringKind::boolean, b); }
};

class MinPlusImpl final : public SemiringImpl {
 public:
  MinPlusImpl()
      : SemiringImpl({"min-plus", true, true, false,
                      "N u {inf} with min as sum and + as product"},
                     SemiringKind::min_plus) {}

  Value zero() const override { return make(kInfinity); }
  Value one() const override { return make(0); }
  Value add(const Value& a, const Value& b) const override {
    return make(std::min(a.as_nat(), b.as_nat()));
  }
  Value mul(const Value& a, const Value& b) const override {
    const ExtNat x = a.as_nat();
    const ExtNat y = b.as_nat();
    if (x == kInfinity || y == kInfinity || x > kInfinity - 1 - y) {
      return zero();
    }
    return make(x + y);
  }
  // a* = min(0, a, 2a, ...) = 0, the unit.
  Value star(const Value&) const override { return one(); }
  Value parse(std::string_view text) const override {
    return make(parse_ext_nat(text, "min-plus"));
  }
  std::string render(const Value& a) const override {
    return render_ext_nat(a.as_nat());
  }

 private:
  static Value make(ExtNat n) { return Value(SemiringKind::min_plus, n); }
};

class CountingImpl final : public SemiringImpl {
 public:
  explicit CountingImpl(ExtNat cap)
      : SemiringImpl({"counting", false, true, false,
                      "N u {inf} with + and *, saturating above " +
                          std::to_string(cap)},
                     SemiringKind::counting),
        cap_(cap) {}

  Value zero() const override { return make(0); }
  Value one() const override { return make(1); }
  Value add(const Value& a, const Value& b) const override {
    const ExtNat x = a.as_nat();
    const ExtNat y = b.as_nat();
    if (x == kInfinity || y == kInfinity || x > cap_ - std::min(y, cap_)) {
      return make(kInfinity);
    }
    return make(x + y);
  }
  Value mul(const Value& a, const Value& b) const override {
    const ExtNat x = a.as_nat();
    const ExtNat y = b.as_nat();
    if (x == 0 || y == 0) return zero();
    if (x == kInfinity || y == kInfinity || x > cap_ / y) {
      return make(kInfinity);
    }
    return make(x * y);
  }
  // Geometric sum: 1 for a = 0, divergent otherwise.
  Value star(const Value& a) const override {
    return a.as_nat() == 0 ? one() : make(kInfinity);
  }
  bool leq(const Value& a, const Value& b) const override {
    return a.as_nat() <= b.as_nat();
  }
  bool owns(const Value& a) const override {
    return a.kind() == SemiringKind::counting &&
           (a.as_nat() <= cap_ || a.as_nat() == kInfinity);
  }
  Value parse(std::string_view text) const override {
    const ExtNat n = parse_ext_nat(text, "counting");
    return make(n > cap_ ? kInfinity : n);
  }
  std::string render(const Value& a) const override {
    return render_ext_nat(a.as_nat());
  }
  bool same_instance(const SemiringImpl& other) const override {
    return other.kind() == kind() && other.cap() == cap_;
  }
  ExtNat cap() const override { return cap_; }

 private:
  static Value make(ExtNat n) { return Value(SemiringKind::counting, n); }
  ExtNat cap_;
};

class RelationImpl final : public SemiringImpl {
 public:
  explicit RelationImpl(std::size_t dim)
      : SemiringImpl({"relation", true, dim == 1, true,
                      "binary relations over a " + std::to_string(dim) +
                          "-element set (union, composition)"},
                     SemiringKind::relation),
        dim_(dim) {
    if (dim == 0 || dim > BoolMatrix::kMaxDim) {
      throw PreconditionError("relation dimension must lie in [1, " +
                              std::to_string(BoolMatrix::kMaxDim) + "]");
    }
  }

  Value zero() const override { return make(BoolMatrix(dim_)); }
  Value one() const override { return make(BoolMatrix::identity(dim_)); }
  Value add(const Value& a, const Value& b) const override {
    return make(a.as_matrix() | b.as_matrix());
  }
  Value mul(const Value& a, const Value& b) const override {
    return make(a.as_matrix() * b.as_matrix());
  }
  Value star(const Value& a) const override {
    return make(a.as_matrix().closure());
  }
  bool leq(const Value& a, const Value& b) const override {
    return a.as_matrix().subset_of(b.as_matrix());
  }
  bool owns(const Value& a) const override {
    return a.kind() == SemiringKind::relation && a.as_matrix().dim() == dim_;
  }
  std::vector<Value> elements() const override {
    if (dim_ * dim_ > 16) {
      throw PreconditionError("relation carrier too large to enumerate");
    }
    std::vector<Value> out;
    const std::uint64_t count = std::uint64_t{1} << (dim_ * dim_);
    out.reserve(count);
    for (std::uint64_t bits = 0; bits < count; ++bits) {
      out.push_back(make(BoolMatrix::from_bits(dim_, bits)));
    }
    return out;
  }
  Value parse(std::string_view text) const override;
  std::string render(const Value& a) const override {
    const BoolMatrix& m = a.as_matrix();
    std::string s = "[";
    for (std::size_t i = 0; i < m.dim(); ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < m.dim(); ++j) {
        if (j) s += ',';
        s += m.get(i, j) ? '1' : '0';
      }
      s += ']';
    }
    return s + "]";
  }
  bool same_instance(const SemiringImpl& other) const override {
    return other.kind() == kind() && other.relation_dim() == dim_;
  }
  std::size_t relation_dim() const override { return dim_; }

 private:
  static Value make(const BoolMatrix& m) {
    return Value(SemiringKind::relation, m);
  }
  std::size_t dim_;
};

Value RelationImpl::parse(std::string_view text) const {
  text = trim(text);
  const std::string original(text);
  auto fail = [&](const std::string& why) -> Error {
    return Error("invalid relation literal '" + original + "': " + why);
  };
  if (text == "0") return make(BoolMatrix(dim_));
  if (text == "1") return make(BoolMatrix::identity(dim_));
  std::vector<std::vector<bool>> rows;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  };
  auto expect = [&](char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) {
      throw fail(std::string("expected '") + c + "'");
    }
    ++pos;
  };
  expect('[');
  skip_ws();
  while (true) {
    expect('[');
    std::vector<bool> row;
    while (true) {
      skip_ws();
      if (pos >= text.size()) throw fail("unterminated row");
      if (text[pos] == '0' || text[pos] == '1') {
        row.push_back(text[pos] == '1');
        ++pos;
      } else {
        throw fail("entries must be 0 or 1");
      }
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      expect(']');
      break;
    }
    rows.push_back(std::move(row));
    skip_ws();
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    expect(']');
    break;
  }
  skip_ws();
  if (pos != text.size()) throw fail("trailing characters");
  if (rows.size() != dim_) {
    throw fail("expected " + std::to_string(dim_) + " rows");
  }
  BoolMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (rows[i].size() != dim_) {
      throw fail("row " + std::to_string(i) + " has wrong length");
    }
    for (std::size_t j = 0; j < dim_; ++j) m.set(i, j, rows[i][j]);
  }
  return make(m);
}

class FunctionTableImpl final : public SemiringImpl {
 public:
  FunctionTableImpl(Semiring base, std::size_t num_vars)
      : SemiringImpl(describe(base, num_vars), SemiringKind::function_table),
        base_(std::move(base)),
        num_vars_(num_vars),
        elements_(base_.elements()) {
    const std::size_t n = elements_.size();
    for (std::size_t i = 0; i < n; ++i) {
      index_.emplace(elements_[i], static_cast<std::uint32_t>(i));
    }
    domain_size_ = 1;
    for (std::size_t k = 0; k < num_vars_; ++k) {
      if (domain_size_ > (std::size_t{1} << 20) / n) {
        throw PreconditionError("function table domain too large");
      }
      domain_size_ *= n;
    }
    add_.resize(n * n);
    mul_.resize(n * n);
    star_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      star_[i] = index_.at(base_.star(elements_[i]));
      for (std::size_t j = 0; j < n; ++j) {
        add_[i * n + j] = index_.at(base_.add(elements_[i], elements_[j]));
        mul_[i * n + j] = index_.at(base_.mul(elements_[i], elements_[j]));
      }
    }
    zero_index_ = index_.at(base_.zero());
    one_index_ = index_.at(base_.one());
  }

  Value zero() const override { return constant(zero_index_); }
  Value one() const override { return constant(one_index_); }
  Value add(const Value& a, const Value& b) const override {
    return pointwise(a, b, add_);
  }
  Value mul(const Value& a, const Value& b) const override {
    return pointwise(a, b, mul_);
  }
  // Pointwise: (f*)(v) = f(v)* since the operations are pointwise.
  Value star(const Value& a) const override {
    FunctionTable t = a.as_table();
    for (auto& o : t.outputs) o = star_[o];
    return Value(SemiringKind::function_table, std::move(t));
  }
  bool leq(const Value& a, const Value& b) const override {
    const auto& x = a.as_table().outputs;
    const auto& y = b.as_table().outputs;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!base_.leq(elements_[x[i]], elements_[y[i]])) return false;
    }
    return true;
  }
  bool owns(const Value& a) const override {
    if (a.kind() != SemiringKind::function_table) return false;
    const auto& outs = a.as_table().outputs;
    return outs.size() == domain_size_ &&
           std::all_of(outs.begin(), outs.end(),
                       [&](std::uint32_t o) { return o < elements_.size(); });
  }
  std::vector<Value> elements() const override {
    const std::size_t n = elements_.size();
    std::size_t count = 1;
    for (std::size_t i = 0; i < domain_size_; ++i) {
      if (count > (std::size_t{1} << 16) / n) {
        throw PreconditionError("function table carrier too large to list");
      }
      count *= n;
    }
    std::vector<Value> out;
    out.reserve(count);
    for (std::size_t c = 0; c < count; ++c) {
      FunctionTable t;
      t.outputs.resize(domain_size_);
      std::size_t rest = c;
      for (std::size_t i = domain_size_; i-- > 0;) {
        t.outputs[i] = static_cast<std::uint32_t>(rest % n);
        rest /= n;
      }
      out.emplace_back(SemiringKind::function_table, std::move(t));
    }
    return out;
  }
  Value parse(std::string_view) const override {
    throw Error("function-table literals are not file-expressible");
  }
  std::string render(const Value& a) const override {
    std::string s = "<table";
    for (std::uint32_t o : a.as_table().outputs) {
      s += ' ';
      s += base_.render(elements_[o]);
    }
    return s + ">";
  }
  bool same_instance(const SemiringImpl& other) const override {
    const auto* o = dynamic_cast<const FunctionTableImpl*>(&other);
    return o != nullptr && o->num_vars_ == num_vars_ && o->base_ == base_;
  }

 private:
  static SemiringDescriptor describe(const Semiring& base,
                                     std::size_t num_vars) {
    if (!base.finite()) {
      throw PreconditionError("function semiring needs a finite base, got '" +
                              base.name() + "'");
    }
    return {"functions(" + base.name() + "," + std::to_string(num_vars) + ")",
            base.idempotent(), base.commutative(), true,
            "total tables " + base.name() + "^" + std::to_string(num_vars) +
                " -> " + base.name()};
  }

  Value constant(std::uint32_t index) const {
    FunctionTable t;
    t.outputs.assign(domain_size_, index);
    return Value(SemiringKind::function_table, std::move(t));
  }

  Value pointwise(const Value& a, const Value& b,
                  const std::vector<std::uint32_t>& table) const {
    const auto& x = a.as_table().outputs;
    const auto& y = b.as_table().outputs;
    FunctionTable t;
    t.outputs.resize(x.size());
    const std::size_t n = elements_.size();
    for (std::size_t i = 0; i < x.size(); ++i) {
      t.outputs[i] = table[x[i] * n + y[i]];
    }
    return Value(SemiringKind::function_table, std::move(t));
  }

  Semiring base_;
  std::size_t num_vars_;
  std::vector<Value> elements_;
  std::map<Value, std::uint32_t> index_;
  std::size_t domain_size_ = 1;
  std::vector<std::uint32_t> add_, mul_, star_;
  std::uint32_t zero_index_ = 0;
  std::uint32_t one_index_ = 0;
};

}  // namespace
}  // namespace detail

Semiring Semiring::boolean() {
  static const auto impl = std::make_shared<detail::BooleanImpl>();
  return Semiring(impl);
}

Semiring Semiring::min_plus() {
  static const auto impl = std::make_shared<detail::MinPlusImpl>();
  return Semiring(impl);
}

Semiring Semiring::counting(ExtNat cap) {
  if (cap == 0 || cap == kInfinity) {
    throw PreconditionError("counting cap must be positive and finite");
  }
  return Semiring(std::make_shared<detail::CountingImpl>(cap));
}

Semiring Semiring::relation(std::size_t dim) {
  return Semiring(std::make_shared<detail::RelationImpl>(dim));
}

Semiring Semiring::function_table(const Semiring& base, std::size_t num_vars) {
  return Semiring(std::make_shared<detail::FunctionTableImpl>(base, num_vars));
}

const SemiringDescriptor& Semiring::descriptor() const {
  return impl_->descriptor();
}
SemiringKind Semiring::kind() const { return impl_->kind(); }
Value Semiring::zero() const { return impl_->zero(); }
Value Semiring::one() const { return impl_->one(); }

namespace {
void check_owned(const Semiring& sr, const Value& a) {
  if (!sr.owns(a)) {
    throw InstanceMismatch("value does not belong to semiring '" + sr.name() +
                           "'");
  }
}
}  // namespace

Value Semiring::add(const Value& a, const Value& b) const {
  check_owned(*this, a);
  check_owned(*this, b);
  return impl_->add(a, b);
}

Value Semiring::mul(const Value& a, const Value& b) const {
  check_owned(*this, a);
  check_owned(*this, b);
  return impl_->mul(a, b);
}

Value Semiring::star(const Value& a) const {
  check_owned(*this, a);
  return impl_->star(a);
}

bool Semiring::leq(const Value& a, const Value& b) const {
  check_owned(*this, a);
  check_owned(*this, b);
  return impl_->leq(a, b);
}

bool Semiring::owns(const Value& a) const { return impl_->owns(a); }
std::vector<Value> Semiring::elements() const { return impl_->elements(); }

Value Semiring::parse_literal(std::string_view text) const {
  return impl_->parse(text);
}

std::string Semiring::render(const Value& a) const {
  check_owned(*this, a);
  return impl_->render(a);
}

Value Semiring::from_nat(ExtNat n) const {
  if (kind() != SemiringKind::min_plus && kind() != SemiringKind::counting) {
    throw InstanceMismatch("'" + name() + "' has no natural-number literals");
  }
  if (kind() == SemiringKind::counting && n != kInfinity && n > counting_cap()) {
    n = kInfinity;
  }
  return Value(kind(), n);
}

Value Semiring::from_matrix(const BoolMatrix& m) const {
  Value v(SemiringKind::relation, m);
  check_owned(*this, v);
  return v;
}

Value Semiring::from_bool(bool b) const {
  if (kind() != SemiringKind::boolean) {
    throw InstanceMismatch("'" + name() + "' has no boolean literals");
  }
  return Value(SemiringKind::boolean, b);
}

std::size_t Semiring::relation_dim() const { return impl_->relation_dim(); }
ExtNat Semiring::counting_cap() const { return impl_->cap(); }

bool Semiring::operator==(const Semiring& other) const {
  return impl_ == other.impl_ || impl_->same_instance(*other.impl_);
}

ValueVector zero_vector(const Semiring& sr, std::size_t n) {
  return ValueVector(n, sr.zero());
}

ValueVector add(const Semiring& sr, const ValueVector& a,
                const ValueVector& b) {
  if (a.size() != b.size()) {
    throw PreconditionError("vector length mismatch");
  }
  ValueVector out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(sr.add(a[i], b[i]));
  return out;
}

bool leq(const Semiring& sr, const ValueVector& a, const ValueVector& b) {
  if (a.size() != b.size()) {
    throw PreconditionError("vector length mismatch");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!sr.leq(a[i], b[i])) return false;
  }
  return true;
}

std::string render(const Semiring& sr, const ValueVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += sr.render(v[i]);
  }
  return s + ")";
}

FunctionSpace::FunctionSpace(Semiring base, std::size_t num_vars)
    : base_(std::move(base)),
      num_vars_(num_vars),
      functions_(Semiring::function_table(base_, num_vars)),
      elements_(base_.elements()) {
  domain_size_ = 1;
  for (std::size_t k = 0; k < num_vars_; ++k) domain_size_ *= elements_.size();
}

ValueVector FunctionSpace::point(std::size_t index) const {
  ValueVector v(num_vars_);
  for (std::size_t k = num_vars_; k-- > 0;) {
    v[k] = elements_[index % elements_.size()];
    index /= elements_.size();
  }
  return v;
}

std::size_t FunctionSpace::index_of(std::span<const Value> point) const {
  if (point.size() != num_vars_) {
    throw PreconditionError("point has wrong arity");
  }
  std::size_t index = 0;
  for (const Value& v : point) {
    auto it = std::find(elements_.begin(), elements_.end(), v);
    if (it == elements_.end()) {
      throw InstanceMismatch("point value is not in the base semiring");
    }
    index = index * elements_.size() +
            static_cast<std::size_t>(it - elements_.begin());
  }
  return index;
}

Value FunctionSpace::tabulate(
    const std::function<Value(const ValueVector&)>& fn) const {
  FunctionTable t;
  t.outputs.resize(domain_size_);
  for (std::size_t i = 0; i < domain_size_; ++i) {
    const Value out = fn(point(i));
    auto it = std::find(elements_.begin(), elements_.end(), out);
    if (it == elements_.end()) {
      throw InstanceMismatch("tabulated output is not in the base semiring");
    }
    t.outputs[i] = static_cast<std::uint32_t>(it - elements_.begin());
  }
  return Value(SemiringKind::function_table, std::move(t));
}

Value FunctionSpace::constant(const Value& c) const {
  return tabulate([&](const ValueVector&) { return c; });
}

Value FunctionSpace::projection(std::size_t var) const {
  if (var >= num_vars_) throw PreconditionError("projection out of range");
  return tabulate([&](const ValueVector& p) { return p[var]; });
}

Value FunctionSpace::at(const Value& table, std::size_t index) const {
  if (!functions_.owns(table)) {
    throw InstanceMismatch("table does not belong to this function space");
  }
  return elements_[table.as_table().outputs.at(index)];
}

Value FunctionSpace::apply(const Value& table,
                           std::span<const Value> point) const {
  return at(table, index_of(point));
}

}  // namespace munch
