#include "prefopt/solver.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "prefopt/errors.hpp"

namespace prefopt {

Assignment Model::assignment() const {
  Assignment a;
  for (const auto& [var, tuple] : tuples) a.bind(var, &tuple);
  return a;
}

std::string Model::to_string() const {
  std::string s;
  for (const auto& [var, tuple] : tuples) {
    if (!s.empty()) s += "; ";
    s += var + " = " + tuple_to_string(tuple);
  }
  return s;
}

namespace {

// ----- term interning ------------------------------------------------------

struct TermTable {
  std::vector<Term> terms;
  std::unordered_map<std::string, std::size_t> index;

  std::size_t intern(const Term& t) {
    std::string key = t.to_string();
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    std::size_t id = terms.size();
    terms.push_back(t);
    index.emplace(std::move(key), id);
    return id;
  }
};

struct UnionFind {
  std::vector<std::size_t> parent;

  std::size_t make() {
    parent.push_back(parent.size());
    return parent.size() - 1;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void merge(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// ----- atom-domain fragment -------------------------------------------------

struct AtomFragment {
  TermTable table;
  UnionFind uf;
  std::vector<std::pair<std::size_t, std::size_t>> diseqs;

  std::size_t node(const Term& t) {
    std::size_t id = table.intern(t);
    while (uf.parent.size() <= id) uf.make();
    return id;
  }

  bool add(const AtomicConstraint& a) {
    std::size_t l = node(a.left), r = node(a.right);
    if (a.op == CompareOp::eq) {
      uf.merge(l, r);
    } else {
      diseqs.emplace_back(l, r);
    }
    return true;
  }

  bool consistent() {
    // two distinct constants merged, or a disequality inside one class
    std::unordered_map<std::size_t, std::string> rep_const;
    for (std::size_t i = 0; i < table.terms.size(); ++i) {
      if (table.terms[i].is_attr()) continue;
      std::size_t root = uf.find(i);
      auto it = rep_const.find(root);
      if (it != rep_const.end() && it->second != table.terms[i].value().atom_value()) return false;
      rep_const.emplace(root, table.terms[i].value().atom_value());
    }
    for (auto& [l, r] : diseqs) {
      if (uf.find(l) == uf.find(r)) return false;
    }
    return true;
  }
};

// ----- rational fragment ----------------------------------------------------

struct QAtomSets {
  TermTable table;
  // edge u -> v means value(u) <= value(v); strict marks <
  std::vector<std::pair<std::size_t, std::size_t>> weak_edges;
  std::vector<std::pair<std::size_t, std::size_t>> strict_edges;
  std::vector<std::pair<std::size_t, std::size_t>> diseqs;
  std::vector<std::pair<std::size_t, Rational>> constants;  // node -> value
  std::unordered_set<std::string> const_keys;

  std::size_t node(const Term& t) {
    std::size_t before = table.terms.size();
    std::size_t id = table.intern(t);
    if (id == before && !t.is_attr()) {
      const Rational& v = t.value().number_value();
      if (const_keys.insert(v.to_string()).second) constants.emplace_back(id, v);
    }
    return id;
  }

  void add(const AtomicConstraint& a) {
    std::size_t l = node(a.left), r = node(a.right);
    switch (a.op) {
      case CompareOp::eq:
        weak_edges.emplace_back(l, r);
        weak_edges.emplace_back(r, l);
        break;
      case CompareOp::ne:
        diseqs.emplace_back(l, r);
        break;
      case CompareOp::lt:
        strict_edges.emplace_back(l, r);
        break;
      case CompareOp::le:
        weak_edges.emplace_back(l, r);
        break;
      case CompareOp::gt:
        strict_edges.emplace_back(r, l);
        break;
      case CompareOp::ge:
        weak_edges.emplace_back(r, l);
        break;
    }
  }

  void add_ground_order() {
    std::vector<std::pair<std::size_t, Rational>> sorted = constants;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      strict_edges.emplace_back(sorted[i - 1].first, sorted[i].first);
    }
  }
};

// Tarjan SCC, iterative.
struct SccResult {
  std::vector<std::size_t> comp;  // node -> component id (reverse topological)
  std::size_t count = 0;
};

SccResult tarjan(std::size_t n, const std::vector<std::vector<std::size_t>>& adj) {
  SccResult res;
  res.comp.assign(n, SIZE_MAX);
  std::vector<std::size_t> low(n, 0), num(n, SIZE_MAX), stack;
  std::vector<bool> on_stack(n, false);
  std::size_t counter = 0;
  struct Frame {
    std::size_t v;
    std::size_t edge;
  };
  for (std::size_t start = 0; start < n; ++start) {
    if (num[start] != SIZE_MAX) continue;
    std::vector<Frame> frames{{start, 0}};
    num[start] = low[start] = counter++;
    stack.push_back(start);
    on_stack[start] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < adj[f.v].size()) {
        std::size_t w = adj[f.v][f.edge++];
        if (num[w] == SIZE_MAX) {
          num[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], num[w]);
        }
      } else {
        if (low[f.v] == num[f.v]) {
          for (;;) {
            std::size_t w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            res.comp[w] = res.count;
            if (w == f.v) break;
          }
          ++res.count;
        }
        std::size_t v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  return res;
}

struct Bound {
  bool present = false;
  Rational value;
  bool open = false;  // strict

  // tighter upper bound: smaller value, or same value but open
  bool tighter_upper_than(const Bound& o) const {
    if (!o.present) return true;
    int c = value.compare(o.value);
    return c < 0 || (c == 0 && open && !o.open);
  }
  // tighter lower bound: larger value, or same value but open
  bool tighter_lower_than(const Bound& o) const {
    if (!o.present) return true;
    int c = value.compare(o.value);
    return c > 0 || (c == 0 && open && !o.open);
  }
};

// Decides the rational fragment; on success and when `want_model`, fills
// `values` with one rational per node.
bool q_fragment_sat(QAtomSets& q, bool want_model, std::vector<Rational>& values) {
  q.add_ground_order();
  std::size_t n = q.table.terms.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto& [u, v] : q.weak_edges) adj[u].push_back(v);
  for (auto& [u, v] : q.strict_edges) adj[u].push_back(v);
  SccResult scc = tarjan(n, adj);
  for (auto& [u, v] : q.strict_edges) {
    if (scc.comp[u] == scc.comp[v]) return false;  // strict edge on a cycle
  }
  for (auto& [u, v] : q.diseqs) {
    if (scc.comp[u] == scc.comp[v]) return false;  // forced equal
  }
  if (!want_model) return true;

  // Orient disequalities one by one (try < first); each orientation keeps
  // satisfiability because the order is dense and total.
  for (std::size_t i = 0; i < q.diseqs.size(); ++i) {
    auto [u, v] = q.diseqs[i];
    QAtomSets probe;
    probe.table = q.table;
    probe.weak_edges = q.weak_edges;
    probe.strict_edges = q.strict_edges;
    probe.strict_edges.emplace_back(u, v);
    probe.constants = q.constants;
    std::vector<Rational> ignore;
    std::vector<std::pair<std::size_t, std::size_t>> rest(q.diseqs.begin() + i + 1,
                                                          q.diseqs.end());
    probe.diseqs = rest;
    if (q_fragment_sat(probe, false, ignore)) {
      q.strict_edges.emplace_back(u, v);
    } else {
      q.strict_edges.emplace_back(v, u);
    }
  }
  q.diseqs.clear();

  // Recompute components with the oriented edges.
  adj.assign(n, {});
  for (auto& [u, v] : q.weak_edges) adj[u].push_back(v);
  for (auto& [u, v] : q.strict_edges) adj[u].push_back(v);
  scc = tarjan(n, adj);
  std::size_t m = scc.count;

  // Condensation edges; Tarjan's component ids are already reverse
  // topological, so iterating ids ascending visits successors first.
  struct CEdge {
    std::size_t to;
    bool strict;
  };
  std::vector<std::vector<CEdge>> out(m);
  std::vector<std::vector<CEdge>> in(m);
  auto add_cedge = [&](std::size_t u, std::size_t v, bool strict) {
    if (scc.comp[u] == scc.comp[v]) return;
    out[scc.comp[u]].push_back({scc.comp[v], strict});
    in[scc.comp[v]].push_back({scc.comp[u], strict});
  };
  for (auto& [u, v] : q.weak_edges) add_cedge(u, v, false);
  for (auto& [u, v] : q.strict_edges) add_cedge(u, v, true);

  std::vector<Bound> fixed(m);  // constant value per component
  for (auto& [node, val] : q.constants) {
    fixed[scc.comp[node]] = {true, val, false};
  }

  // Upper bounds from constants, reverse topological = ascending ids.
  std::vector<Bound> cup(m);
  for (std::size_t c = 0; c < m; ++c) {
    if (fixed[c].present) {
      cup[c] = {true, fixed[c].value, false};
      continue;
    }
    for (const CEdge& e : out[c]) {
      if (!cup[e.to].present) continue;
      Bound cand{true, cup[e.to].value, cup[e.to].open || e.strict};
      if (cand.tighter_upper_than(cup[c])) cup[c] = cand;
    }
  }

  // Assign values in topological order = descending ids.
  std::vector<Rational> comp_value(m);
  std::vector<bool> assigned(m, false);
  for (std::size_t idx = m; idx > 0; --idx) {
    std::size_t c = idx - 1;
    if (fixed[c].present) {
      comp_value[c] = fixed[c].value;
      assigned[c] = true;
      continue;
    }
    Bound lower;
    for (const CEdge& e : in[c]) {
      if (!assigned[e.to]) throw InternalError("topological order violated");
      Bound cand{true, comp_value[e.to], e.strict};
      if (cand.tighter_lower_than(lower)) lower = cand;
    }
    const Bound& upper = cup[c];
    Rational v;
    if (!lower.present && !upper.present) {
      v = Rational(0);
    } else if (!upper.present) {
      v = lower.open ? lower.value + Rational(1) : lower.value;
    } else if (!lower.present) {
      v = upper.open ? upper.value - Rational(1) : upper.value;
    } else {
      int c2 = lower.value.compare(upper.value);
      if (c2 > 0) throw InternalError("inverted rational window");
      if (c2 == 0) {
        if (lower.open || upper.open) throw InternalError("empty rational window");
        v = lower.value;
      } else {
        v = lower.open ? Rational::midpoint(lower.value, upper.value) : lower.value;
      }
    }
    comp_value[c] = v;
    assigned[c] = true;
  }

  values.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) values[i] = comp_value[scc.comp[i]];
  return true;
}

// ----- model assembly -------------------------------------------------------

std::string fresh_atom(std::size_t& counter, const std::unordered_set<std::string>& used) {
  for (;;) {
    std::string name = "_a" + std::to_string(counter++);
    if (used.find(name) == used.end()) return name;
  }
}

Model build_model(const VarBindings& vars, AtomFragment& d, const QAtomSets& q,
                  const std::vector<Rational>& q_values) {
  // Class representative atoms: constants win, fresh atoms otherwise,
  // numbered in first-mention order.
  std::unordered_set<std::string> used_atoms;
  for (const Term& t : d.table.terms) {
    if (!t.is_attr()) used_atoms.insert(t.value().atom_value());
  }
  std::unordered_map<std::size_t, std::string> class_atom;
  for (std::size_t i = 0; i < d.table.terms.size(); ++i) {
    if (d.table.terms[i].is_attr()) continue;
    class_atom[d.uf.find(i)] = d.table.terms[i].value().atom_value();
  }
  std::size_t counter = 0;
  for (std::size_t i = 0; i < d.table.terms.size(); ++i) {
    std::size_t root = d.uf.find(i);
    if (class_atom.find(root) == class_atom.end()) {
      class_atom.emplace(root, fresh_atom(counter, used_atoms));
    }
  }

  Model model;
  model.vars = vars;
  for (const auto& [var, schema] : vars) {
    Tuple tuple;
    tuple.reserve(schema->arity());
    for (std::size_t i = 0; i < schema->arity(); ++i) {
      const Attribute& attr = schema->attributes()[i];
      Term ref = Term::attr_ref(var, attr.name, i, attr.tag);
      std::string key = ref.to_string();
      if (attr.tag == DomainTag::atom) {
        auto it = d.table.index.find(key);
        if (it != d.table.index.end()) {
          tuple.push_back(Value::atom(class_atom.at(d.uf.find(it->second))));
        } else {
          tuple.push_back(Value::atom(fresh_atom(counter, used_atoms)));
        }
      } else {
        auto it = q.table.index.find(key);
        if (it != q.table.index.end()) {
          tuple.push_back(Value::number(q_values[it->second]));
        } else {
          tuple.push_back(Value::number(Rational(0)));
        }
      }
    }
    model.tuples.emplace(var, std::move(tuple));
  }
  return model;
}

}  // namespace

SatResult conj_sat(std::span<const AtomicConstraint> atoms, const VarBindings& vars) {
  AtomFragment d;
  QAtomSets q;
  for (const AtomicConstraint& a : atoms) {
    if (a.tag() == DomainTag::atom) {
      d.add(a);
    } else {
      q.add(a);
    }
  }
  if (!d.consistent()) return SatResult::unsat();
  std::vector<Rational> q_values;
  if (!q_fragment_sat(q, true, q_values)) return SatResult::unsat();

  Model model = build_model(vars, d, q, q_values);

  // Soundness: the model must satisfy every input atom.
  Assignment a = model.assignment();
  for (const AtomicConstraint& atom : atoms) {
    Formula check = Formula::atom(atom, vars);
    if (!eval_ground(check, a)) {
      throw InternalError("conj_sat produced a model violating " + atom.to_string());
    }
  }
  return {true, std::move(model)};
}

namespace {

// DPLL-style case splitting over the flattened NNF tree. Conjunctive
// structure is consumed eagerly into an asserted-atom set; disjunctions
// become clauses. Equality-aware unit propagation runs to fixpoint, then
// the first unresolved clause in formula order is branched, literals left
// to right. Deterministic by construction.
struct Splitter {
  const VarBindings& vars;
  const SolverOptions& opts;
  std::uint64_t visited = 0;
  std::unordered_set<std::string> asserted_keys;
  std::vector<AtomicConstraint> asserted;

  explicit Splitter(const VarBindings& vars, const SolverOptions& opts)
      : vars(vars), opts(opts) {}

  void tick() {
    if (++visited > opts.split_budget) {
      throw BudgetError("solver split budget exceeded (" +
                        std::to_string(opts.split_budget) + ")");
    }
  }

  static std::string key_of(const AtomicConstraint& a) {
    return a.left.to_string() + to_string(a.op) + a.right.to_string();
  }

  static bool conj_plain(std::span<const AtomicConstraint> atoms) {
    AtomFragment d;
    QAtomSets q;
    for (const AtomicConstraint& a : atoms) {
      if (a.tag() == DomainTag::atom) {
        d.add(a);
      } else {
        q.add(a);
      }
    }
    if (!d.consistent()) return false;
    std::vector<Rational> ignore;
    return q_fragment_sat(q, false, ignore);
  }

  using Clause = std::vector<Formula>;

  // Cheap semantic state over the asserted equalities (both domains) used
  // to evaluate literals during propagation. Order atoms stay opaque; the
  // full theory check covers them at branch points and leaves.
  struct EqState {
    TermTable table;
    UnionFind uf;
    std::vector<std::pair<std::size_t, std::size_t>> diseqs;

    std::size_t node(const Term& t) {
      std::size_t id = table.intern(t);
      while (uf.parent.size() <= id) uf.make();
      return id;
    }

    void add(const AtomicConstraint& a) {
      if (a.op == CompareOp::eq) {
        uf.merge(node(a.left), node(a.right));
      } else if (a.op == CompareOp::ne) {
        diseqs.emplace_back(node(a.left), node(a.right));
      }
    }

    // three-valued evaluation of an equality literal; order literals are
    // unknown unless asserted syntactically
    enum class Truth { yes, no, unknown };

    Truth eval(const AtomicConstraint& a) {
      if (a.op != CompareOp::eq && a.op != CompareOp::ne) return Truth::unknown;
      auto it_l = table.index.find(a.left.to_string());
      auto it_r = table.index.find(a.right.to_string());
      bool equal_forced = false, distinct_forced = false;
      if (it_l != table.index.end() && it_r != table.index.end()) {
        std::size_t rl = uf.find(it_l->second), rr = uf.find(it_r->second);
        if (rl == rr) equal_forced = true;
        for (auto& [x, y] : diseqs) {
          std::size_t rx = uf.find(x), ry = uf.find(y);
          if ((rx == rl && ry == rr) || (rx == rr && ry == rl)) distinct_forced = true;
        }
        if (!equal_forced) {
          // distinct constants in the two classes
          const std::string* cl = class_const(rl);
          const std::string* cr = class_const(rr);
          if (cl != nullptr && cr != nullptr && *cl != *cr) distinct_forced = true;
        }
      } else if (!a.left.is_attr() && !a.right.is_attr()) {
        bool same = a.left.value() == a.right.value();
        (same ? equal_forced : distinct_forced) = true;
      }
      if (equal_forced) return a.op == CompareOp::eq ? Truth::yes : Truth::no;
      if (distinct_forced) return a.op == CompareOp::ne ? Truth::yes : Truth::no;
      return Truth::unknown;
    }

    const std::string* class_const(std::size_t root) {
      for (std::size_t i = 0; i < table.terms.size(); ++i) {
        if (!table.terms[i].is_attr() && uf.find(i) == root) {
          return &table.terms[i].value().atom_value();
        }
      }
      return nullptr;
    }
  };

  // Fails (returns false) on a syntactic or immediate conflict.
  bool assert_atom(const AtomicConstraint& a) {
    std::string key = key_of(a);
    if (asserted_keys.count(key)) return true;
    if (asserted_keys.count(key_of(negate_atom(a)))) return false;
    asserted_keys.insert(std::move(key));
    asserted.push_back(a);
    return true;
  }

  // Splices conjunctive structure into assertions and clause list.
  // Returns false on conflict.
  bool decompose(std::vector<Formula>& pending, std::vector<Clause>& clauses) {
    while (!pending.empty()) {
      Formula f = std::move(pending.back());
      pending.pop_back();
      switch (f.kind()) {
        case Formula::Kind::truth:
          break;
        case Formula::Kind::falsity:
          return false;
        case Formula::Kind::negation:
          pending.push_back(negate_to_nnf(f.children()[0]));
          break;
        case Formula::Kind::atom:
          if (!assert_atom(f.atom_constraint())) return false;
          break;
        case Formula::Kind::conjunction: {
          auto kids = f.children();
          for (std::size_t i = kids.size(); i > 0; --i) pending.push_back(kids[i - 1]);
          break;
        }
        case Formula::Kind::disjunction: {
          Clause clause;
          flatten_disjunction(f, clause);
          clauses.push_back(std::move(clause));
          break;
        }
      }
    }
    return true;
  }

  static void flatten_disjunction(const Formula& f, Clause& out) {
    for (const Formula& c : f.children()) {
      if (c.kind() == Formula::Kind::disjunction) {
        flatten_disjunction(c, out);
      } else {
        out.push_back(c);
      }
    }
  }

  std::optional<Model> solve(std::vector<Formula> pending, std::vector<Clause> clauses) {
    tick();
    std::size_t asserted_mark = asserted.size();
    auto rollback = [&]() {
      while (asserted.size() > asserted_mark) {
        asserted_keys.erase(key_of(asserted.back()));
        asserted.pop_back();
      }
    };

    if (!decompose(pending, clauses)) {
      rollback();
      return std::nullopt;
    }

    // Propagation to fixpoint: drop satisfied clauses, prune false
    // literals, assert forced units, expand forced conjunctions.
    bool changed = true;
    while (changed) {
      changed = false;
      EqState eq;
      for (const AtomicConstraint& a : asserted) eq.add(a);
      std::vector<Clause> live;
      live.reserve(clauses.size());
      for (Clause& clause : clauses) {
        Clause unknown;
        bool satisfied = false;
        for (Formula& lit : clause) {
          if (lit.kind() == Formula::Kind::atom) {
            const AtomicConstraint& a = lit.atom_constraint();
            if (asserted_keys.count(key_of(a))) {
              satisfied = true;
              break;
            }
            if (asserted_keys.count(key_of(negate_atom(a)))) continue;
            EqState::Truth t = eq.eval(a);
            if (t == EqState::Truth::yes) {
              satisfied = true;
              break;
            }
            if (t == EqState::Truth::no) continue;
            unknown.push_back(std::move(lit));
          } else if (lit.kind() == Formula::Kind::truth) {
            satisfied = true;
            break;
          } else if (lit.kind() == Formula::Kind::falsity) {
            continue;
          } else {
            unknown.push_back(std::move(lit));
          }
        }
        if (satisfied) continue;
        if (unknown.empty()) {
          rollback();
          return std::nullopt;
        }
        if (unknown.size() == 1) {
          std::vector<Formula> forced{std::move(unknown[0])};
          if (!decompose(forced, live)) {
            rollback();
            return std::nullopt;
          }
          changed = true;
        } else {
          live.push_back(std::move(unknown));
        }
      }
      clauses = std::move(live);
    }

    if (clauses.empty()) {
      SatResult leaf = conj_sat(asserted, vars);
      rollback();
      if (!leaf.sat) return std::nullopt;
      return std::move(leaf.model);
    }

    if (!conj_plain(asserted)) {
      rollback();
      return std::nullopt;
    }

    // Branch on the first unresolved clause in discovery order; the
    // conjunction is built with the most constraining part first.
    Clause branch = std::move(clauses.front());
    clauses.erase(clauses.begin());

    for (const Formula& lit : branch) {
      if (lit.kind() == Formula::Kind::atom) {
        const AtomicConstraint& a = lit.atom_constraint();
        if (!asserted_keys.count(key_of(a))) {
          asserted.push_back(a);
          bool ok = conj_plain(asserted);
          asserted.pop_back();
          if (!ok) continue;
        }
      }
      auto result = solve({lit}, clauses);
      if (result) {
        rollback();
        return result;
      }
    }
    rollback();
    return std::nullopt;
  }
};

}  // namespace

SatResult formula_sat(const Formula& f, const SolverOptions& opts) {
  Formula nnf = to_nnf(f);
  Splitter splitter(f.vars(), opts);
  auto model = splitter.solve({nnf}, {});
  if (!model) return SatResult::unsat();
  Assignment a = model->assignment();
  if (!eval_ground(f, a)) {
    throw InternalError("formula_sat produced a model violating the formula " + f.to_string());
  }
  return {true, std::move(*model)};
}

ValidityResult is_valid(const Formula& f, const SolverOptions& opts) {
  SatResult r = formula_sat(Formula::negation(f), opts);
  if (r.sat) return {false, std::move(r.model)};
  return {true, {}};
}

}  // namespace prefopt
