#pragma once

#include "json.hpp"
#include "munch/grammar.hpp"
#include "munch/munchausen.hpp"
#include "munch/tensor.hpp"

namespace munch {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "v1";

/// Relations become nested 0/1 arrays; every other value its literal text.
Json to_json(const Semiring& sr, const Value& v);
Json to_json(const Semiring& sr, const ValueVector& v);
Json to_json(const EquationSystem& sys);

/// {nonterminals, terminals, rules}
Json to_json(const Cfg& g);
/// Nested {symbol, rule?, children}.
Json to_json(const Cfg& g, const DerivationTree& t);
/// Nonterminals carry an index field.
Json to_json(const LinearCfg& lg);
/// Stacks are given by their count of 1s relative to the lhs stack.
Json to_json(const IndexedGrammar& ig);
/// Tensor coefficients with the two-sided term that produced each.
Json to_json(const TwoSidedLinearSystem& source, const TensorLinearSystem& t);

}  // namespace munch
