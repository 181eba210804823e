#include "munch/export.hpp"

#include <set>

namespace munch {

Json to_json(const Semiring& sr, const Value& v) {
  if (v.kind() == SemiringKind::relation) {
    const BoolMatrix& m = v.as_matrix();
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m.get(i, j) ? 1 : 0);
      rows.push_back(std::move(row));
    }
    return rows;
  }
  return sr.render(v);
}

Json to_json(const Semiring& sr, const ValueVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(sr, x));
  return out;
}

Json to_json(const EquationSystem& sys) {
  const auto& sr = sys.semiring();
  Json eqs = Json::object();
  for (VarId x = 0; x < sys.size(); ++x) {
    eqs[sys.vars().name(x)] = {{"f", render(sr, sys.f(x), sys.vars())},
                               {"a", to_json(sr, sys.a()[x])}};
  }
  return {{"semiring", sr.name()}, {"vars", sys.vars().names()}, {"equations", eqs}};
}

namespace {

Json symbol_json(const Cfg& g, const Symbol& s) {
  if (const auto* t = std::get_if<Terminal>(&s)) {
    return {{"terminal", to_json(g.semiring, t->value)}};
  }
  return {{"nonterminal", g.vars.name(std::get<Nonterminal>(s).var)}};
}

Json linear_symbol_json(const LinearCfg& lg, const LinearSymbol& s) {
  if (const auto* t = std::get_if<TerminalSym>(&s)) {
    return {{"terminal", to_json(lg.semiring, t->value)}};
  }
  if (const auto* y = std::get_if<VarTerminal>(&s)) {
    return {{"variable", lg.vars.name(y->var)}};
  }
  const auto& nt = std::get<NonTerm>(s);
  return {{"nonterminal", lg.vars.name(nt.var)}, {"index", nt.index}};
}

}  // namespace

Json to_json(const Cfg& g) {
  std::set<Value> seen;
  Json terminals = Json::array();
  Json rules = Json::array();
  for (const auto& r : g.rules) {
    Json rhs = Json::array();
    for (const auto& s : r.rhs) {
      if (const auto* t = std::get_if<Terminal>(&s); t && seen.insert(t->value).second) {
        terminals.push_back(to_json(g.semiring, t->value));
      }
      rhs.push_back(symbol_json(g, s));
    }
    rules.push_back({{"lhs", g.vars.name(r.lhs)}, {"rhs", rhs}});
  }
  return {{"schema", kSchemaVersion},
          {"semiring", g.semiring.name()},
          {"nonterminals", g.vars.names()},
          {"terminals", terminals},
          {"rules", rules}};
}

Json to_json(const Cfg& g, const DerivationTree& t) {
  Json out = {{"symbol", symbol_json(g, t.label)}};
  if (t.rule) out["rule"] = *t.rule;
  if (!t.children.empty()) {
    Json kids = Json::array();
    for (const auto& c : t.children) kids.push_back(to_json(g, c));
    out["children"] = kids;
  }
  return out;
}

Json to_json(const LinearCfg& lg) {
  std::set<NonTerm> nts;
  Json rules = Json::array();
  for (const auto& r : lg.rules) {
    nts.insert(r.lhs);
    Json rhs = Json::array();
    for (const auto& s : r.rhs) {
      if (const auto* nt = std::get_if<NonTerm>(&s)) nts.insert(*nt);
      rhs.push_back(linear_symbol_json(lg, s));
    }
    rules.push_back({{"lhs", linear_symbol_json(lg, r.lhs)}, {"rhs", rhs}});
  }
  Json nonterminals = Json::array();
  for (const auto& nt : nts) nonterminals.push_back(linear_symbol_json(lg, nt));
  Json starts = Json::array();
  for (VarId x = 0; x < lg.vars.size(); ++x) {
    starts.push_back(linear_symbol_json(lg, lg.start(x)));
  }
  return {{"schema", kSchemaVersion},
          {"semiring", lg.semiring.name()},
          {"level", lg.level},
          {"nonterminals", nonterminals},
          {"start", starts},
          {"rules", rules}};
}

Json to_json(const IndexedGrammar& ig) {
  auto kind_name = [](IndexedRuleKind k) {
    switch (k) {
      case IndexedRuleKind::recursion: return "recursion";
      case IndexedRuleKind::pop: return "pop";
      case IndexedRuleKind::terminal: return "terminal";
    }
    return "";
  };
  Json rules = Json::array();
  for (const auto& r : ig.rules) {
    // lhs y[1.s] for recursion and pop rules, y[0] for terminal rules.
    const bool terminal = r.kind == IndexedRuleKind::terminal;
    Json rhs = Json::array();
    for (const auto& s : r.rhs) {
      if (const auto* t = std::get_if<TerminalSym>(&s)) {
        rhs.push_back({{"terminal", to_json(ig.semiring, t->value)}});
      } else if (const auto* y = std::get_if<VarTerminal>(&s)) {
        rhs.push_back({{"variable", ig.vars.name(y->var)}});
      } else {
        const auto& nt = std::get<IndexedNonTerm>(s);
        rhs.push_back({{"nonterminal", ig.vars.name(nt.var)},
                       {"stack", nt.keeps_stack ? "1.s" : "s"},
                       {"ones", nt.keeps_stack ? 1 : 0}});
      }
    }
    rules.push_back({{"kind", kind_name(r.kind)},
                     {"lhs",
                      {{"nonterminal", ig.vars.name(r.lhs)},
                       {"stack", terminal ? "0" : "1.s"},
                       {"ones", terminal ? 0 : 1}}},
                     {"rhs", rhs}});
  }
  return {{"schema", kSchemaVersion},
          {"semiring", ig.semiring.name()},
          {"nonterminals", ig.vars.names()},
          {"rules", rules}};
}

Json to_json(const TwoSidedLinearSystem& source, const TensorLinearSystem& t) {
  const Semiring& base = t.ops.base;
  const Semiring& ts = t.ops.tensor;
  Json eqs = Json::array();
  for (std::size_t i = 0; i < t.terms.size(); ++i) {
    Json terms = Json::array();
    for (const auto& term : t.terms[i]) {
      const auto& src = source.terms[i].at(term.source);
      terms.push_back({{"var", t.vars.name(term.var)},
                       {"coefficient", to_json(ts, term.coefficient)},
                       {"source", {{"term", term.source},
                                   {"left", to_json(base, src.left)},
                                   {"right", to_json(base, src.right)}}}});
    }
    eqs.push_back({{"var", t.vars.name(static_cast<VarId>(i))},
                   {"constant", to_json(ts, t.constants[i])},
                   {"source_constant", to_json(base, source.constants[i])},
                   {"terms", terms}});
  }
  return {{"schema", kSchemaVersion},
          {"base", base.name()},
          {"tensor", ts.name()},
          {"equations", eqs}};
}

}  // namespace munch
