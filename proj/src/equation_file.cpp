#include "munch/equation_file.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "munch/error.hpp"

namespace munch {

namespace {

struct Piece {
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

Piece trim(Piece p) {
  while (!p.text.empty() && is_space(p.text.front())) {
    p.text.remove_prefix(1);
    ++p.column;
  }
  while (!p.text.empty() && is_space(p.text.back())) p.text.remove_suffix(1);
  return p;
}

// Splits on `sep` outside brackets.
std::vector<Piece> split(const Piece& p, char sep) {
  std::vector<Piece> out;
  std::size_t depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= p.text.size(); ++i) {
    if (i < p.text.size()) {
      const char c = p.text[i];
      if (c == '[' || c == '(') ++depth;
      if ((c == ']' || c == ')') && depth > 0) --depth;
      if (c != sep || depth > 0) continue;
    }
    out.push_back(trim({p.text.substr(start, i - start), p.line, p.column + start}));
    start = i + 1;
  }
  return out;
}

std::vector<Piece> statements(std::string_view text) {
  std::vector<Piece> out;
  std::size_t line = 1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(pos, end - pos);
    if (const auto hash = row.find('#'); hash != std::string_view::npos) {
      row = row.substr(0, hash);
    }
    for (const Piece& s : split({row, line, 1}, ';')) {
      if (!s.text.empty()) out.push_back(s);
    }
    ++line;
    pos = end + 1;
  }
  return out;
}

std::vector<Piece> words(const Piece& p) {
  std::vector<Piece> out;
  std::size_t i = 0;
  while (i < p.text.size()) {
    while (i < p.text.size() && is_space(p.text[i])) ++i;
    const std::size_t start = i;
    while (i < p.text.size() && !is_space(p.text[i])) ++i;
    if (i > start) out.push_back({p.text.substr(start, i - start), p.line, p.column + start});
  }
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
    return false;
  }
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) {
      return false;
    }
  }
  return true;
}

ParseError error_at(const Piece& p, const std::string& message) {
  return ParseError(p.line, p.column, message);
}

std::optional<ExtNat> parse_param(const Piece& w, std::string_view key) {
  const std::string prefix = std::string(key) + "=";
  if (w.text.substr(0, prefix.size()) != prefix) return std::nullopt;
  const std::string_view digits = w.text.substr(prefix.size());
  if (digits.empty() || digits.size() > 19) throw error_at(w, "bad value for " + prefix);
  ExtNat v = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw error_at(w, "bad value for " + prefix);
    }
    v = v * 10 + static_cast<ExtNat>(c - '0');
  }
  return v;
}

Semiring parse_header(const std::vector<Piece>& ws) {
  if (ws.size() < 2) throw error_at(ws[0], "missing semiring name");
  const std::string_view name = ws[1].text;
  try {
    if (name == "boolean" || name == "bool") {
      if (ws.size() > 2) throw error_at(ws[2], "boolean takes no parameters");
      return Semiring::boolean();
    }
    if (name == "min-plus" || name == "minplus" || name == "tropical") {
      if (ws.size() > 2) throw error_at(ws[2], "min-plus takes no parameters");
      return Semiring::min_plus();
    }
    if (name == "counting") {
      if (ws.size() > 3) throw error_at(ws[3], "unexpected parameter");
      if (ws.size() == 3) {
        const auto cap = parse_param(ws[2], "cap");
        if (!cap) throw error_at(ws[2], "expected cap=N");
        return Semiring::counting(*cap);
      }
      return Semiring::counting();
    }
    if (name == "relation") {
      if (ws.size() > 3) throw error_at(ws[3], "unexpected parameter");
      if (ws.size() == 3) {
        const auto dim = parse_param(ws[2], "dim");
        if (!dim) throw error_at(ws[2], "expected dim=q");
        return Semiring::relation(static_cast<std::size_t>(*dim));
      }
      return Semiring::relation();
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw error_at(ws[1], e.what());
  }
  throw error_at(ws[1], "unknown semiring '" + std::string(name) + "'");
}

Monomial parse_monomial(const Semiring& sr, const VarSet& vars, const Piece& p) {
  if (p.text.empty()) throw error_at(p, "empty monomial");
  std::vector<Value> coeffs;
  std::vector<VarId> vs;
  Value acc = sr.one();
  for (const Piece& f : split(p, '*')) {
    if (f.text.empty()) throw error_at(f, "empty factor");
    if (const auto id = vars.find(f.text)) {
      coeffs.push_back(acc);
      vs.push_back(*id);
      acc = sr.one();
      continue;
    }
    try {
      acc = sr.mul(acc, sr.parse_literal(f.text));
    } catch (const Error& e) {
      if (is_identifier(f.text)) {
        throw error_at(f, "undeclared variable '" + std::string(f.text) + "'");
      }
      throw error_at(f, e.what());
    }
  }
  coeffs.push_back(acc);
  return Monomial(std::move(coeffs), std::move(vs));
}

}  // namespace

EquationSystem parse_equations(std::string_view text) {
  std::optional<Semiring> sr;
  std::optional<VarSet> vars;
  std::vector<std::optional<Polynomial>> rhs;
  Piece last{text, 1, 1};
  for (const Piece& st : statements(text)) {
    last = st;
    const auto ws = words(st);
    if (ws[0].text == "semiring") {
      if (sr) throw error_at(st, "semiring declared twice");
      sr = parse_header(ws);
      continue;
    }
    if (ws[0].text == "vars") {
      if (!sr) throw error_at(st, "vars before semiring");
      if (vars) throw error_at(st, "vars declared twice");
      std::vector<std::string> names;
      for (std::size_t i = 1; i < ws.size(); ++i) {
        if (!is_identifier(ws[i].text)) {
          throw error_at(ws[i], "bad variable name '" + std::string(ws[i].text) + "'");
        }
        for (const auto& n : names) {
          if (n == ws[i].text) {
            throw error_at(ws[i], "duplicate variable '" + n + "'");
          }
        }
        names.emplace_back(ws[i].text);
      }
      vars = VarSet(std::move(names));
      rhs.assign(vars->size(), std::nullopt);
      continue;
    }
    const auto eq = st.text.find('=');
    if (eq == std::string_view::npos) throw error_at(st, "expected 'x = ...'");
    if (!vars) throw error_at(st, "equation before vars");
    const Piece lhs = trim({st.text.substr(0, eq), st.line, st.column});
    const Piece body = trim({st.text.substr(eq + 1), st.line, st.column + eq + 1});
    const auto id = vars->find(lhs.text);
    if (!id) throw error_at(lhs, "undeclared variable '" + std::string(lhs.text) + "'");
    if (rhs[*id]) throw error_at(lhs, "second equation for '" + std::string(lhs.text) + "'");
    if (body.text.empty()) throw error_at(body, "empty right-hand side");
    Polynomial p;
    for (const Piece& m : split(body, '+')) p.add(*sr, parse_monomial(*sr, *vars, m));
    rhs[*id] = std::move(p);
  }
  if (!sr) throw ParseError(1, 1, "missing semiring declaration");
  if (!vars) throw error_at(last, "missing vars declaration");
  std::vector<Polynomial> ps;
  for (VarId x = 0; x < vars->size(); ++x) {
    if (!rhs[x]) {
      throw error_at(last, "no equation for '" + vars->name(x) + "'");
    }
    ps.push_back(std::move(*rhs[x]));
  }
  return EquationSystem::from_right_hand_sides(*sr, *vars, std::move(ps));
}

std::string semiring_header(const Semiring& sr) {
  switch (sr.kind()) {
    case SemiringKind::boolean:
      return "semiring boolean";
    case SemiringKind::min_plus:
      return "semiring min-plus";
    case SemiringKind::counting:
      if (sr.counting_cap() == (ExtNat{1} << 62)) return "semiring counting";
      return "semiring counting cap=" + std::to_string(sr.counting_cap());
    case SemiringKind::relation:
      return "semiring relation dim=" + std::to_string(sr.relation_dim());
    case SemiringKind::function_table:
      break;
  }
  throw PreconditionError("'" + sr.name() + "' has no file form");
}

std::string render_equations(const EquationSystem& sys) {
  const Semiring& sr = sys.semiring();
  std::string out = semiring_header(sr) + "\nvars";
  for (const auto& n : sys.vars().names()) out += " " + n;
  out += "\n";
  for (VarId x = 0; x < sys.size(); ++x) {
    Polynomial p = sys.f(x);
    p.add(sr, Monomial(sys.a()[x]));
    out += sys.vars().name(x) + " = " + render(sr, p, sys.vars()) + "\n";
  }
  return out;
}

ValueVector parse_vector(const Semiring& sr, std::string_view text,
                         std::size_t expected_size) {
  Piece p = trim({text, 1, 1});
  if (p.text.size() < 2 || p.text.front() != '(' || p.text.back() != ')') {
    throw error_at(p, "expected '(v1, v2, ...)'");
  }
  const Piece inner = trim({p.text.substr(1, p.text.size() - 2), 1, p.column + 1});
  ValueVector out;
  if (!inner.text.empty()) {
    for (const Piece& item : split(inner, ',')) {
      try {
        out.push_back(sr.parse_literal(item.text));
      } catch (const Error& e) {
        throw error_at(item, e.what());
      }
    }
  }
  if (out.size() != expected_size) {
    throw error_at(p, "expected " + std::to_string(expected_size) + " entries");
  }
  return out;
}

}  // namespace munch
