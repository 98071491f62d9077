#include "prefopt/formula.hpp"

#include <algorithm>
#include <cctype>

#include "prefopt/errors.hpp"

namespace prefopt {

CompareOp complement(CompareOp op) {
  switch (op) {
    case CompareOp::eq: return CompareOp::ne;
    case CompareOp::ne: return CompareOp::eq;
    case CompareOp::lt: return CompareOp::ge;
    case CompareOp::le: return CompareOp::gt;
    case CompareOp::gt: return CompareOp::le;
    case CompareOp::ge: return CompareOp::lt;
  }
  return CompareOp::eq;
}

CompareOp mirror(CompareOp op) {
  switch (op) {
    case CompareOp::lt: return CompareOp::gt;
    case CompareOp::le: return CompareOp::ge;
    case CompareOp::gt: return CompareOp::lt;
    case CompareOp::ge: return CompareOp::le;
    default: return op;
  }
}

std::string to_string(CompareOp op) {
  switch (op) {
    case CompareOp::eq: return "=";
    case CompareOp::ne: return "!=";
    case CompareOp::lt: return "<";
    case CompareOp::le: return "<=";
    case CompareOp::gt: return ">";
    case CompareOp::ge: return ">=";
  }
  return "?";
}

Term Term::attr_ref(std::string var, std::string attr, std::size_t index, DomainTag tag) {
  Term t;
  t.is_attr_ = true;
  t.var_ = std::move(var);
  t.attr_ = std::move(attr);
  t.index_ = index;
  t.tag_ = tag;
  return t;
}

Term Term::constant(Value v) {
  Term t;
  t.is_attr_ = false;
  t.tag_ = v.tag();
  t.value_ = std::move(v);
  return t;
}

bool Term::operator==(const Term& o) const {
  if (is_attr_ != o.is_attr_) return false;
  if (is_attr_) return var_ == o.var_ && attr_ == o.attr_;
  return value_ == o.value_;
}

std::string Term::to_string() const {
  if (is_attr_) return var_ + "." + attr_;
  if (tag_ == DomainTag::atom) return "'" + value_.atom_value() + "'";
  return value_.number_value().to_string();
}

bool AtomicConstraint::operator==(const AtomicConstraint& o) const {
  return left == o.left && op == o.op && right == o.right;
}

std::string AtomicConstraint::to_string() const {
  return left.to_string() + " " + prefopt::to_string(op) + " " + right.to_string();
}

AtomicConstraint negate_atom(const AtomicConstraint& a) {
  return AtomicConstraint{a.left, complement(a.op), a.right};
}

namespace {

VarBindings merge_vars(const VarBindings& a, const VarBindings& b) {
  VarBindings out = a;
  for (const auto& [var, schema] : b) {
    auto it = out.find(var);
    if (it == out.end()) {
      out.emplace(var, schema);
    } else if (!same_schema(it->second, schema)) {
      throw TypeError("tuple variable " + var + " bound to two different schemas");
    }
  }
  return out;
}

VarBindings atom_vars(const AtomicConstraint& a, const VarBindings& env) {
  VarBindings out;
  for (const Term* t : {&a.left, &a.right}) {
    if (!t->is_attr()) continue;
    auto it = env.find(t->var());
    if (it == env.end()) throw TypeError("unbound tuple variable " + t->var());
    out.emplace(it->first, it->second);
  }
  return out;
}

}  // namespace

Formula Formula::truth() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::truth;
  return Formula(std::move(n));
}

Formula Formula::falsity() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::falsity;
  return Formula(std::move(n));
}

Formula Formula::atom(AtomicConstraint a, const VarBindings& vars) {
  if (a.left.tag() != a.right.tag()) {
    throw TypeError("mixed-domain comparison: " + a.to_string());
  }
  if (a.left.tag() == DomainTag::atom && a.op != CompareOp::eq && a.op != CompareOp::ne) {
    throw TypeError("order comparison on atom domain: " + a.to_string());
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::atom;
  n->vars = atom_vars(a, vars);
  n->atom = std::move(a);
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::negation;
  n->vars = f.vars();
  n->children.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::conjunction(std::vector<Formula> children) {
  if (children.empty()) throw TypeError("empty conjunction");
  auto n = std::make_shared<Node>();
  n->kind = Kind::conjunction;
  for (const Formula& c : children) n->vars = merge_vars(n->vars, c.vars());
  n->children = std::move(children);
  return Formula(std::move(n));
}

Formula Formula::disjunction(std::vector<Formula> children) {
  if (children.empty()) throw TypeError("empty disjunction");
  auto n = std::make_shared<Node>();
  n->kind = Kind::disjunction;
  for (const Formula& c : children) n->vars = merge_vars(n->vars, c.vars());
  n->children = std::move(children);
  return Formula(std::move(n));
}

Formula Formula::conjunction_simplified(std::vector<Formula> children) {
  std::vector<Formula> kept;
  for (Formula& c : children) {
    if (c.is_truth()) continue;
    if (c.is_falsity()) return falsity();
    kept.push_back(std::move(c));
  }
  if (kept.empty()) return truth();
  if (kept.size() == 1) return kept[0];
  return conjunction(std::move(kept));
}

Formula Formula::disjunction_simplified(std::vector<Formula> children) {
  std::vector<Formula> kept;
  for (Formula& c : children) {
    if (c.is_falsity()) continue;
    if (c.is_truth()) return truth();
    kept.push_back(std::move(c));
  }
  if (kept.empty()) return falsity();
  if (kept.size() == 1) return kept[0];
  return disjunction(std::move(kept));
}

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind()) return false;
  switch (kind()) {
    case Kind::truth:
    case Kind::falsity:
      return true;
    case Kind::atom:
      return atom_constraint() == o.atom_constraint();
    default: {
      auto a = children();
      auto b = o.children();
      if (a.size() != b.size()) return false;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] == b[i])) return false;
      }
      return true;
    }
  }
}

namespace {

int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::disjunction: return 1;
    case Formula::Kind::conjunction: return 2;
    default: return 3;
  }
}

void print_formula(const Formula& f, int parent_prec, std::string& out) {
  int prec = precedence(f.kind());
  switch (f.kind()) {
    case Formula::Kind::truth:
      out += "TRUE";
      return;
    case Formula::Kind::falsity:
      out += "FALSE";
      return;
    case Formula::Kind::atom:
      out += f.atom_constraint().to_string();
      return;
    case Formula::Kind::negation:
      out += "NOT ";
      print_formula(f.children()[0], 3, out);
      return;
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
      bool paren = prec <= parent_prec;
      if (paren) out += "(";
      const char* sep = f.kind() == Formula::Kind::conjunction ? " AND " : " OR ";
      auto kids = f.children();
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i > 0) out += sep;
        print_formula(kids[i], prec, out);
      }
      if (paren) out += ")";
      return;
    }
  }
}

}  // namespace

std::string Formula::to_string() const {
  std::string out;
  print_formula(*this, 0, out);
  return out;
}

Formula DnfFormula::to_formula() const {
  if (disjuncts.empty()) return Formula::falsity();
  std::vector<Formula> ds;
  for (const auto& conj : disjuncts) {
    if (conj.empty()) {
      ds.push_back(Formula::truth());
      continue;
    }
    std::vector<Formula> atoms;
    for (const auto& a : conj) atoms.push_back(Formula::atom(a, vars));
    ds.push_back(atoms.size() == 1 ? atoms[0] : Formula::conjunction(std::move(atoms)));
  }
  return ds.size() == 1 ? ds[0] : Formula::disjunction(std::move(ds));
}

std::string DnfFormula::to_string() const { return to_formula().to_string(); }

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class TokKind { ident, number, string, op, lparen, rparen, dot, end };

struct Token {
  TokKind kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

struct Lexer {
  const std::string& src;
  std::size_t pos = 0;
  std::size_t line = 1;
  std::size_t col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  void advance(char c) {
    ++pos;
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }

  Token next() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) {
      advance(src[pos]);
    }
    std::size_t l = line, c = col;
    if (pos >= src.size()) return {TokKind::end, "", l, c};
    char ch = src[pos];
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::string id;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
        id += src[pos];
        advance(src[pos]);
      }
      return {TokKind::ident, id, l, c};
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) ||
        ((ch == '-' || ch == '+') && pos + 1 < src.size() &&
         std::isdigit(static_cast<unsigned char>(src[pos + 1])))) {
      std::string num;
      num += ch;
      advance(ch);
      bool seen_dot = false, seen_slash = false;
      while (pos < src.size()) {
        char d = src[pos];
        if (std::isdigit(static_cast<unsigned char>(d))) {
          num += d;
        } else if (d == '.' && !seen_dot && !seen_slash) {
          num += d;
          seen_dot = true;
        } else if (d == '/' && !seen_slash && !seen_dot) {
          num += d;
          seen_slash = true;
        } else {
          break;
        }
        advance(d);
      }
      return {TokKind::number, num, l, c};
    }
    if (ch == '\'') {
      advance(ch);
      std::string s;
      while (pos < src.size() && src[pos] != '\'') {
        s += src[pos];
        advance(src[pos]);
      }
      if (pos >= src.size()) throw ParseError("unterminated string literal", l, c);
      advance('\'');
      return {TokKind::string, s, l, c};
    }
    if (ch == '(') {
      advance(ch);
      return {TokKind::lparen, "(", l, c};
    }
    if (ch == ')') {
      advance(ch);
      return {TokKind::rparen, ")", l, c};
    }
    if (ch == '.') {
      advance(ch);
      return {TokKind::dot, ".", l, c};
    }
    if (ch == '=' ) {
      advance(ch);
      return {TokKind::op, "=", l, c};
    }
    if (ch == '!' && pos + 1 < src.size() && src[pos + 1] == '=') {
      advance('!');
      advance('=');
      return {TokKind::op, "!=", l, c};
    }
    if (ch == '<' || ch == '>') {
      advance(ch);
      std::string op(1, ch);
      if (pos < src.size() && src[pos] == '=') {
        op += '=';
        advance('=');
      }
      return {TokKind::op, op, l, c};
    }
    throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
  }
};

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

bool is_keyword(const Token& t, const char* kw) {
  return t.kind == TokKind::ident && upper(t.text) == kw;
}

struct Parser {
  Lexer lex;
  Token cur;
  const VarBindings& env;

  Parser(const std::string& src, const VarBindings& env) : lex(src), env(env) { cur = lex.next(); }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, cur.line, cur.col); }

  void bump() { cur = lex.next(); }

  CompareOp parse_op(const std::string& text) {
    if (text == "=") return CompareOp::eq;
    if (text == "!=") return CompareOp::ne;
    if (text == "<") return CompareOp::lt;
    if (text == "<=") return CompareOp::le;
    if (text == ">") return CompareOp::gt;
    if (text == ">=") return CompareOp::ge;
    fail("expected comparison operator");
  }

  // A term with an optional context tag used to type untagged constants.
  struct RawTerm {
    bool is_attr;
    std::string var, attr;
    bool is_number = false;
    std::string text;
    std::size_t line, col;
  };

  RawTerm parse_term() {
    RawTerm t{};
    t.line = cur.line;
    t.col = cur.col;
    if (cur.kind == TokKind::ident) {
      t.is_attr = true;
      t.var = cur.text;
      bump();
      if (cur.kind != TokKind::dot) fail("expected '.' after tuple variable");
      bump();
      if (cur.kind != TokKind::ident) fail("expected attribute name");
      t.attr = cur.text;
      bump();
      return t;
    }
    if (cur.kind == TokKind::number) {
      t.is_attr = false;
      t.is_number = true;
      t.text = cur.text;
      bump();
      return t;
    }
    if (cur.kind == TokKind::string) {
      t.is_attr = false;
      t.is_number = false;
      t.text = cur.text;
      bump();
      return t;
    }
    fail("expected term");
  }

  Term resolve(const RawTerm& raw) {
    if (raw.is_attr) {
      auto it = env.find(raw.var);
      if (it == env.end()) {
        throw ParseError("unknown tuple variable " + raw.var, raw.line, raw.col);
      }
      auto idx = it->second->index_of(raw.attr);
      if (!idx) {
        throw ParseError("unknown attribute " + raw.var + "." + raw.attr + " in schema " +
                             it->second->name(),
                         raw.line, raw.col);
      }
      return Term::attr_ref(raw.var, raw.attr, *idx, it->second->attributes()[*idx].tag);
    }
    if (raw.is_number) return Term::constant(Value::number(Rational::parse(raw.text)));
    return Term::constant(Value::atom(raw.text));
  }

  Formula parse_atom_tail() {
    RawTerm lhs = parse_term();
    if (cur.kind != TokKind::op) fail("expected comparison operator");
    CompareOp op = parse_op(cur.text);
    std::size_t op_line = cur.line, op_col = cur.col;
    bump();
    RawTerm rhs = parse_term();
    Term l = resolve(lhs);
    Term r = resolve(rhs);
    try {
      return Formula::atom(AtomicConstraint{std::move(l), op, std::move(r)}, env);
    } catch (const TypeError& e) {
      throw ParseError(e.what(), op_line, op_col);
    }
  }

  Formula parse_literal() {
    if (is_keyword(cur, "NOT")) {
      bump();
      return Formula::negation(parse_literal());
    }
    if (is_keyword(cur, "TRUE")) {
      bump();
      return Formula::truth();
    }
    if (is_keyword(cur, "FALSE")) {
      bump();
      return Formula::falsity();
    }
    if (cur.kind == TokKind::lparen) {
      bump();
      Formula f = parse_disjunction();
      if (cur.kind != TokKind::rparen) fail("expected ')'");
      bump();
      return f;
    }
    return parse_atom_tail();
  }

  Formula parse_conjunction() {
    std::vector<Formula> parts;
    parts.push_back(parse_literal());
    while (is_keyword(cur, "AND")) {
      bump();
      parts.push_back(parse_literal());
    }
    return parts.size() == 1 ? parts[0] : Formula::conjunction(std::move(parts));
  }

  Formula parse_disjunction() {
    std::vector<Formula> parts;
    parts.push_back(parse_conjunction());
    while (is_keyword(cur, "OR")) {
      bump();
      parts.push_back(parse_conjunction());
    }
    return parts.size() == 1 ? parts[0] : Formula::disjunction(std::move(parts));
  }

  Formula parse_all() {
    Formula f = parse_disjunction();
    if (cur.kind != TokKind::end) fail("trailing input after formula");
    return f;
  }
};

}  // namespace

Formula parse_formula(const std::string& text, const VarBindings& env) {
  Parser p(text, env);
  return p.parse_all();
}

// ---------------------------------------------------------------------------
// NNF / DNF / substitution / evaluation

namespace {

Formula nnf_rec(const Formula& f, bool negate) {
  switch (f.kind()) {
    case Formula::Kind::truth:
      return negate ? Formula::falsity() : Formula::truth();
    case Formula::Kind::falsity:
      return negate ? Formula::truth() : Formula::falsity();
    case Formula::Kind::atom:
      return negate ? Formula::atom(negate_atom(f.atom_constraint()), f.vars()) : f;
    case Formula::Kind::negation:
      return nnf_rec(f.children()[0], !negate);
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
      bool is_and = f.kind() == Formula::Kind::conjunction;
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const Formula& c : f.children()) kids.push_back(nnf_rec(c, negate));
      if (is_and != negate) return Formula::conjunction(std::move(kids));
      return Formula::disjunction(std::move(kids));
    }
  }
  return f;
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf_rec(f, false); }

Formula negate_to_nnf(const Formula& f) { return nnf_rec(f, true); }

namespace {

// Which of {<,=,>} an operator admits; two atoms over the same term pair are
// jointly unsatisfiable when the intersection is empty.
unsigned op_mask(CompareOp op) {
  switch (op) {
    case CompareOp::lt: return 0b100;
    case CompareOp::eq: return 0b010;
    case CompareOp::gt: return 0b001;
    case CompareOp::le: return 0b110;
    case CompareOp::ge: return 0b011;
    case CompareOp::ne: return 0b101;
  }
  return 0;
}

bool eval_const_atom(const AtomicConstraint& a);

struct NormAtom {
  std::string lhs, rhs;
  unsigned mask;
};

NormAtom normalize_atom(const AtomicConstraint& a) {
  std::string l = a.left.to_string();
  std::string r = a.right.to_string();
  if (l <= r) return {l, r, op_mask(a.op)};
  return {r, l, op_mask(mirror(a.op))};
}

bool conjunct_contradictory(const std::vector<AtomicConstraint>& atoms) {
  std::vector<NormAtom> norm;
  norm.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (!a.left.is_attr() && !a.right.is_attr() && !eval_const_atom(a)) return true;
    NormAtom n = normalize_atom(a);
    if (n.lhs == n.rhs && (n.mask & 0b010) == 0) return true;
    norm.push_back(std::move(n));
  }
  for (std::size_t i = 0; i < norm.size(); ++i) {
    for (std::size_t j = i + 1; j < norm.size(); ++j) {
      if (norm[i].lhs == norm[j].lhs && norm[i].rhs == norm[j].rhs &&
          (norm[i].mask & norm[j].mask) == 0) {
        return true;
      }
    }
  }
  return false;
}

void dnf_rec(const Formula& f, std::size_t budget,
             std::vector<std::vector<AtomicConstraint>>& out) {
  switch (f.kind()) {
    case Formula::Kind::truth:
      out.push_back({});
      return;
    case Formula::Kind::falsity:
      return;
    case Formula::Kind::atom:
      out.push_back({f.atom_constraint()});
      return;
    case Formula::Kind::disjunction: {
      for (const Formula& c : f.children()) {
        std::vector<std::vector<AtomicConstraint>> part;
        dnf_rec(c, budget, part);
        if (out.size() + part.size() > budget) {
          throw BudgetError("DNF disjunct budget exceeded (" + std::to_string(budget) + ")");
        }
        for (auto& d : part) out.push_back(std::move(d));
      }
      return;
    }
    case Formula::Kind::conjunction: {
      std::vector<std::vector<AtomicConstraint>> acc;
      acc.push_back({});
      for (const Formula& c : f.children()) {
        std::vector<std::vector<AtomicConstraint>> part;
        dnf_rec(c, budget, part);
        if (!part.empty() && acc.size() > budget / part.size() &&
            acc.size() * part.size() > budget) {
          throw BudgetError("DNF disjunct budget exceeded (" + std::to_string(budget) + ")");
        }
        std::vector<std::vector<AtomicConstraint>> next;
        next.reserve(acc.size() * part.size());
        for (const auto& left : acc) {
          for (const auto& right : part) {
            std::vector<AtomicConstraint> merged = left;
            merged.insert(merged.end(), right.begin(), right.end());
            next.push_back(std::move(merged));
          }
        }
        acc = std::move(next);
        if (acc.empty()) return;
      }
      for (auto& d : acc) {
        if (!conjunct_contradictory(d)) out.push_back(std::move(d));
      }
      return;
    }
    case Formula::Kind::negation:
      // unreachable after NNF
      throw InternalError("negation survived NNF");
  }
}

}  // namespace

DnfFormula to_dnf(const Formula& f, std::size_t budget) {
  Formula nnf = to_nnf(f);
  DnfFormula out;
  out.vars = f.vars();
  dnf_rec(nnf, budget, out.disjuncts);
  return out;
}

namespace {

Term substitute_term(const Term& t, const std::map<std::string, std::string>& renaming) {
  if (!t.is_attr()) return t;
  auto it = renaming.find(t.var());
  if (it == renaming.end()) throw TypeError("substitution does not map variable " + t.var());
  return Term::attr_ref(it->second, t.attr(), t.attr_index(), t.tag());
}

}  // namespace

Formula substitute(const Formula& f, const std::map<std::string, std::string>& renaming) {
  // Target bindings: every source var must be mapped and targets mapping the
  // same name must agree on the schema.
  VarBindings target;
  for (const auto& [var, schema] : f.vars()) {
    auto it = renaming.find(var);
    if (it == renaming.end()) throw TypeError("substitution does not map variable " + var);
    auto prev = target.find(it->second);
    if (prev != target.end()) {
      if (!same_schema(prev->second, schema)) {
        throw TypeError("substitution maps differently-typed variables onto " + it->second);
      }
    } else {
      target.emplace(it->second, schema);
    }
  }
  switch (f.kind()) {
    case Formula::Kind::truth:
    case Formula::Kind::falsity:
      return f;
    case Formula::Kind::atom: {
      AtomicConstraint a = f.atom_constraint();
      a.left = substitute_term(a.left, renaming);
      a.right = substitute_term(a.right, renaming);
      return Formula::atom(std::move(a), target);
    }
    case Formula::Kind::negation:
      return Formula::negation(substitute(f.children()[0], renaming));
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const Formula& c : f.children()) kids.push_back(substitute(c, renaming));
      return f.kind() == Formula::Kind::conjunction ? Formula::conjunction(std::move(kids))
                                                    : Formula::disjunction(std::move(kids));
    }
  }
  return f;
}

void Assignment::bind(const std::string& var, const Tuple* tuple) {
  for (auto& slot : slots_) {
    if (slot.first == var) {
      slot.second = tuple;
      return;
    }
  }
  slots_.emplace_back(var, tuple);
}

const Tuple* Assignment::lookup(const std::string& var) const {
  for (const auto& slot : slots_) {
    if (slot.first == var) return slot.second;
  }
  return nullptr;
}

namespace {

const Value& term_value(const Term& t, const Assignment& a) {
  if (!t.is_attr()) return t.value();
  const Tuple* tuple = a.lookup(t.var());
  if (tuple == nullptr) throw PreconditionError("unassigned tuple variable " + t.var());
  return (*tuple)[t.attr_index()];
}

bool compare_values(const Value& l, CompareOp op, const Value& r) {
  if (l.tag() == DomainTag::atom) {
    bool eq = l.atom_value() == r.atom_value();
    return op == CompareOp::eq ? eq : !eq;
  }
  int c = l.number_value().compare(r.number_value());
  switch (op) {
    case CompareOp::eq: return c == 0;
    case CompareOp::ne: return c != 0;
    case CompareOp::lt: return c < 0;
    case CompareOp::le: return c <= 0;
    case CompareOp::gt: return c > 0;
    case CompareOp::ge: return c >= 0;
  }
  return false;
}

bool eval_const_atom(const AtomicConstraint& a) {
  return compare_values(a.left.value(), a.op, a.right.value());
}

}  // namespace

bool eval_ground(const Formula& f, const Assignment& a) {
  switch (f.kind()) {
    case Formula::Kind::truth:
      return true;
    case Formula::Kind::falsity:
      return false;
    case Formula::Kind::atom: {
      const AtomicConstraint& at = f.atom_constraint();
      return compare_values(term_value(at.left, a), at.op, term_value(at.right, a));
    }
    case Formula::Kind::negation:
      return !eval_ground(f.children()[0], a);
    case Formula::Kind::conjunction:
      for (const Formula& c : f.children()) {
        if (!eval_ground(c, a)) return false;
      }
      return true;
    case Formula::Kind::disjunction:
      for (const Formula& c : f.children()) {
        if (eval_ground(c, a)) return true;
      }
      return false;
  }
  return false;
}

bool eval_ground(const DnfFormula& f, const Assignment& a) {
  for (const auto& conj : f.disjuncts) {
    bool ok = true;
    for (const auto& atom : conj) {
      if (!compare_values(term_value(atom.left, a), atom.op, term_value(atom.right, a))) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

std::pair<std::size_t, std::size_t> width_span(const DnfFormula& f) {
  std::size_t span = 0;
  for (const auto& d : f.disjuncts) span = std::max(span, d.size());
  return {f.disjuncts.size(), span};
}

}  // namespace prefopt
