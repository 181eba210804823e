#include "munch/solver.hpp"

#include <algorithm>
#include <ostream>

#include "json.hpp"

#include "munch/error.hpp"

namespace munch {

SolveOutcome kleene_solve(const EquationSystem& sys, std::size_t max_iters,
                          std::vector<ValueVector>* trace) {
  if (max_iters == 0) throw PreconditionError("max_iters must be positive");
  SolveOutcome out;
  out.value = zero_vector(sys.semiring(), sys.size());
  if (trace) trace->push_back(out.value);
  for (std::size_t i = 1; i <= max_iters; ++i) {
    ValueVector next = sys.apply(out.value);
    out.steps_used = i;
    if (next == out.value) {
      out.status = SolveStatus::stabilized;
      return out;
    }
    out.value = std::move(next);
    if (trace) trace->push_back(out.value);
  }
  return out;
}

SolveOutcome solve_linear(const LinearSystem& lin, std::size_t max_iters) {
  if (lin.rhs.size() != lin.seed.size()) {
    throw PreconditionError("linear system and seed differ in size");
  }
  for (const auto& p : lin.rhs) {
    if (!p.is_linear()) throw PreconditionError("right-hand side is not linear");
  }
  const Semiring& sr = lin.semiring;
  SolveOutcome out;
  out.value = lin.seed;
  for (std::size_t i = 1; i <= max_iters; ++i) {
    ValueVector next = add(sr, lin.seed, eval(sr, lin.rhs, out.value));
    out.steps_used = i;
    if (next == out.value) {
      out.status = SolveStatus::stabilized;
      return out;
    }
    out.value = std::move(next);
  }
  return out;
}

namespace {

ExtNat largest_finite(const Value& v) {
  if (v.kind() == SemiringKind::min_plus || v.kind() == SemiringKind::counting) {
    return v.as_nat() == kInfinity ? 0 : v.as_nat();
  }
  return 0;
}

}  // namespace

std::size_t default_linear_budget(const EquationSystem& sys) {
  ExtNat m = 64;
  for (const auto& c : sys.a()) m = std::max(m, largest_finite(c));
  for (const auto& p : sys.f()) {
    for (const auto& mono : p.monomials()) {
      for (const auto& c : mono.coefficients()) m = std::max(m, largest_finite(c));
    }
  }
  const ExtNat limit = ExtNat{1} << 40;
  return static_cast<std::size_t>(
      std::min(limit, 10 * (static_cast<ExtNat>(sys.size()) + 1) * m));
}

NewtonOutcome newton_solve(const EquationSystem& sys, std::size_t n_steps,
                           std::size_t max_linear_iters) {
  const Semiring& sr = sys.semiring();
  NewtonOutcome out;
  out.non_idempotent = !sr.idempotent();
  out.iterates.push_back(sys.apply(zero_vector(sr, sys.size())));
  for (std::size_t k = 0; k < n_steps; ++k) {
    const ValueVector& nu = out.iterates.back();
    LinearSystem lin{sr, differential_full(sr, sys.f(), nu), nu};
    SolveOutcome step = solve_linear(lin, max_linear_iters);
    if (!step.stabilized()) {
      out.status = SolveStatus::budget_exhausted;
      return out;
    }
    out.iterates.push_back(std::move(step.value));
  }
  return out;
}

void write_trace_jsonl(std::ostream& out, const Semiring& sr,
                       const std::vector<ValueVector>& iterates) {
  for (std::size_t i = 0; i < iterates.size(); ++i) {
    nlohmann::json vec = nlohmann::json::array();
    for (const auto& v : iterates[i]) vec.push_back(sr.render(v));
    out << nlohmann::json{{"step", i}, {"vector", vec}}.dump() << '\n';
  }
}

}  // namespace munch
