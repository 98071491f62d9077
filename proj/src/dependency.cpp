#include "prefopt/dependency.hpp"

#include <algorithm>
#include <unordered_map>

#include "prefopt/errors.hpp"

namespace prefopt {

namespace {

bool is_conjunction_of_atoms(const Formula& f) {
  if (f.is_truth() || f.kind() == Formula::Kind::atom) return true;
  if (f.kind() != Formula::Kind::conjunction) return false;
  for (const Formula& c : f.children()) {
    if (c.kind() != Formula::Kind::atom) return false;
  }
  return true;
}

bool is_disjunction_of_atoms(const Formula& f) {
  if (f.is_truth() || f.is_falsity() || f.kind() == Formula::Kind::atom) return true;
  if (f.kind() != Formula::Kind::disjunction) return false;
  for (const Formula& c : f.children()) {
    if (c.kind() != Formula::Kind::atom) return false;
  }
  return true;
}

std::vector<AtomicConstraint> atoms_of(const Formula& f) {
  std::vector<AtomicConstraint> out;
  if (f.kind() == Formula::Kind::atom) {
    out.push_back(f.atom_constraint());
  } else if (f.kind() == Formula::Kind::conjunction ||
             f.kind() == Formula::Kind::disjunction) {
    for (const Formula& c : f.children()) out.push_back(c.atom_constraint());
  }
  return out;
}

}  // namespace

bool Cgd::is_clausal() const {
  return is_conjunction_of_atoms(body) && is_disjunction_of_atoms(head);
}

std::string Cgd::to_string() const {
  if (!label.empty()) return label;
  std::string vars;
  for (std::size_t i = 0; i < tuple_vars.size(); ++i) {
    if (i > 0) vars += ",";
    vars += tuple_vars[i];
  }
  return "CGD " + schema->name() + "[" + vars + "]: " + body.to_string() + " => " +
         head.to_string();
}

std::string Fd::to_string() const {
  std::string s = "FD " + schema->name() + ": ";
  for (std::size_t i = 0; i < lhs.size(); ++i) s += (i ? "," : "") + lhs[i];
  s += " -> ";
  for (std::size_t i = 0; i < rhs.size(); ++i) s += (i ? "," : "") + rhs[i];
  return s;
}

Cgd fd_to_cgd(const Fd& fd) {
  VarBindings env{{"t1", fd.schema}, {"t2", fd.schema}};
  auto equality = [&](const std::string& attr) {
    auto idx = fd.schema->index_of(attr);
    if (!idx) throw TypeError("FD attribute " + attr + " not in schema " + fd.schema->name());
    DomainTag tag = fd.schema->attributes()[*idx].tag;
    return Formula::atom(AtomicConstraint{Term::attr_ref("t1", attr, *idx, tag), CompareOp::eq,
                                          Term::attr_ref("t2", attr, *idx, tag)},
                         env);
  };
  auto conj_over = [&](const std::vector<std::string>& attrs) {
    if (attrs.empty()) return Formula::truth();
    std::vector<Formula> eqs;
    eqs.reserve(attrs.size());
    for (const std::string& a : attrs) eqs.push_back(equality(a));
    return eqs.size() == 1 ? eqs[0] : Formula::conjunction(std::move(eqs));
  };
  return Cgd{fd.schema, {"t1", "t2"}, conj_over(fd.lhs), conj_over(fd.rhs), fd.to_string()};
}

Formula symmetrize(const Cgd& f, std::size_t k) {
  if (k == 0) throw PreconditionError("symmetrize requires k >= 1");
  std::size_t j = f.var_count();
  std::vector<std::size_t> choice(j, 0);
  std::vector<Formula> conjuncts;
  for (;;) {
    std::map<std::string, std::string> renaming;
    for (std::size_t i = 0; i < j; ++i) {
      renaming[f.tuple_vars[i]] = "u" + std::to_string(choice[i] + 1);
    }
    Formula body = substitute(f.body, renaming);
    Formula head = substitute(f.head, renaming);
    if (body.is_truth()) {
      conjuncts.push_back(std::move(head));
    } else {
      conjuncts.push_back(
          Formula::disjunction_simplified({negate_to_nnf(body), std::move(head)}));
    }
    // advance the counter: first variable is the most significant digit
    std::size_t pos = j;
    while (pos > 0) {
      if (++choice[pos - 1] < k) break;
      choice[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
  }
  return conjuncts.size() == 1 ? conjuncts[0] : Formula::conjunction(std::move(conjuncts));
}

namespace {

// k tuples u1..uk decoded from a model, in variable order.
Relation decode_witness(const Model& model, const SchemaRef& schema, std::size_t k) {
  Relation r;
  r.schema = schema;
  r.provenance = "derived";
  for (std::size_t i = 1; i <= k; ++i) {
    r.rows.push_back(model.tuples.at("u" + std::to_string(i)));
  }
  return r;
}

}  // namespace

EntailmentResult entails(std::span<const Cgd> F, const Cgd& f0, const SolverOptions& opts) {
  for (const Cgd& f : F) {
    if (!same_schema(f.schema, f0.schema)) {
      throw TypeError("entailment across schemas: " + f.to_string() + " vs " + f0.to_string());
    }
  }
  std::size_t k = f0.var_count();

  // not(cf_k(f0)): one disjunct per substitution, each body and negated head.
  std::size_t j = f0.var_count();
  std::vector<std::size_t> choice(j, 0);
  std::vector<Formula> violation_disjuncts;
  for (;;) {
    std::map<std::string, std::string> renaming;
    for (std::size_t i = 0; i < j; ++i) {
      renaming[f0.tuple_vars[i]] = "u" + std::to_string(choice[i] + 1);
    }
    Formula body = substitute(f0.body, renaming);
    Formula neg_head = negate_to_nnf(substitute(f0.head, renaming));
    violation_disjuncts.push_back(
        Formula::conjunction_simplified({std::move(body), std::move(neg_head)}));
    std::size_t pos = j;
    while (pos > 0) {
      if (++choice[pos - 1] < k) break;
      choice[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
  }

  std::vector<Formula> parts;
  parts.push_back(Formula::disjunction_simplified(std::move(violation_disjuncts)));
  for (const Cgd& f : F) parts.push_back(symmetrize(f, k));
  Formula query = Formula::conjunction_simplified(std::move(parts));

  if (query.is_falsity()) return {true, {}};

  // Every u1..uk must end up bound even when the formulas do not mention
  // some variable; check_on_instance needs full tuples.
  VarBindings full;
  for (std::size_t i = 1; i <= k; ++i) full.emplace("u" + std::to_string(i), f0.schema);
  SatResult sat = query.is_truth() ? conj_sat({}, full) : formula_sat(query, opts);
  if (!sat.sat) return {true, {}};

  // A model mentions only variables occurring in the query; complete it.
  for (std::size_t i = 1; i <= k; ++i) {
    std::string var = "u" + std::to_string(i);
    if (sat.model.tuples.count(var)) continue;
    VarBindings one{{var, f0.schema}};
    SatResult filler = conj_sat({}, one);
    sat.model.tuples.emplace(var, filler.model.tuples.at(var));
  }

  Relation witness = decode_witness(sat.model, f0.schema, k);
  for (const Cgd& f : F) {
    if (!check_on_instance(f, witness)) {
      throw InternalError("entailment witness violates a premise: " + f.to_string());
    }
  }
  if (check_on_instance(f0, witness)) {
    throw InternalError("entailment witness fails to violate the conclusion: " + f0.to_string());
  }
  return {false, std::move(witness)};
}

bool entails_fd_equality(std::span<const Fd> F, const Cgd& f0) {
  if (!f0.is_clausal()) {
    throw PreconditionError("fast entailment path requires a clausal dependency");
  }
  std::vector<AtomicConstraint> body_atoms = atoms_of(f0.body);
  std::vector<AtomicConstraint> head_atoms = atoms_of(f0.head);
  if (f0.head.is_falsity()) head_atoms.clear();
  for (const auto* atoms : {&body_atoms, &head_atoms}) {
    for (const AtomicConstraint& a : *atoms) {
      if (a.op != CompareOp::eq && a.op != CompareOp::ne) {
        throw PreconditionError("fast entailment path requires equality atoms, got " +
                                a.to_string());
      }
    }
  }
  std::size_t k = f0.var_count();
  std::size_t j = k;

  // Pre-resolve FD attribute indices.
  struct FdIdx {
    std::vector<std::size_t> lhs, rhs;
  };
  std::vector<FdIdx> fds;
  for (const Fd& fd : F) {
    if (!same_schema(fd.schema, f0.schema)) {
      throw TypeError("entailment across schemas: " + fd.to_string());
    }
    FdIdx idx;
    for (const std::string& a : fd.lhs) {
      auto i = fd.schema->index_of(a);
      if (!i) throw TypeError("FD attribute " + a + " not in schema");
      idx.lhs.push_back(*i);
    }
    for (const std::string& a : fd.rhs) {
      auto i = fd.schema->index_of(a);
      if (!i) throw TypeError("FD attribute " + a + " not in schema");
      idx.rhs.push_back(*i);
    }
    fds.push_back(std::move(idx));
  }

  std::size_t arity = f0.schema->arity();
  // Terms: k * arity attribute slots plus constants interned on the fly.
  auto slot = [&](std::size_t var, std::size_t attr) { return var * arity + attr; };

  std::vector<std::size_t> choice(j, 0);
  for (;;) {
    // One negated disjunct: body atoms hold, every head atom fails.
    std::vector<std::size_t> parent(k * arity);
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    std::unordered_map<std::string, std::size_t> const_node;
    std::vector<std::string> const_of_node(parent.size(), "");
    auto find = [&](std::size_t x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    };
    bool contradiction = false;
    auto merge = [&](std::size_t a, std::size_t b) {
      a = find(a);
      b = find(b);
      if (a == b) return;
      if (!const_of_node[a].empty() && !const_of_node[b].empty() &&
          const_of_node[a] != const_of_node[b]) {
        contradiction = true;
        return;
      }
      if (const_of_node[a].empty()) {
        parent[a] = b;
      } else {
        parent[b] = a;
      }
    };
    auto term_node = [&](const Term& t, const std::map<std::string, std::size_t>& var_target)
        -> std::size_t {
      if (t.is_attr()) return slot(var_target.at(t.var()), t.attr_index());
      const std::string& c = t.value().atom_value();
      auto it = const_node.find(c);
      if (it != const_node.end()) return it->second;
      std::size_t id = parent.size();
      parent.push_back(id);
      const_of_node.push_back(c);
      const_node.emplace(c, id);
      return id;
    };

    std::map<std::string, std::size_t> var_target;
    for (std::size_t i = 0; i < j; ++i) var_target[f0.tuple_vars[i]] = choice[i];

    std::vector<std::pair<std::size_t, std::size_t>> diseqs;
    auto add_literal = [&](const AtomicConstraint& a, bool positive) {
      std::size_t l = term_node(a.left, var_target);
      std::size_t r = term_node(a.right, var_target);
      bool is_eq = (a.op == CompareOp::eq) == positive;
      if (is_eq) {
        merge(l, r);
      } else {
        diseqs.emplace_back(l, r);
      }
    };
    for (const AtomicConstraint& a : body_atoms) add_literal(a, true);
    for (const AtomicConstraint& a : head_atoms) add_literal(a, false);

    // Close under the FD implications to fixpoint.
    bool changed = true;
    while (changed && !contradiction) {
      changed = false;
      for (const FdIdx& fd : fds) {
        for (std::size_t a = 0; a < k; ++a) {
          for (std::size_t b = 0; b < k; ++b) {
            if (a == b) continue;
            bool lhs_equal = true;
            for (std::size_t attr : fd.lhs) {
              if (find(slot(a, attr)) != find(slot(b, attr))) {
                lhs_equal = false;
                break;
              }
            }
            if (!lhs_equal) continue;
            for (std::size_t attr : fd.rhs) {
              if (find(slot(a, attr)) != find(slot(b, attr))) {
                merge(slot(a, attr), slot(b, attr));
                changed = true;
              }
            }
          }
        }
      }
    }
    if (!contradiction) {
      for (auto& [l, r] : diseqs) {
        if (find(l) == find(r)) {
          contradiction = true;
          break;
        }
      }
    }
    if (!contradiction) return false;  // this disjunct is satisfiable

    std::size_t pos = j;
    while (pos > 0) {
      if (++choice[pos - 1] < k) break;
      choice[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
  }
  return true;
}

bool check_on_instance(const Cgd& f, const Relation& r) {
  return !find_violation(f, r).has_value();
}

std::optional<std::vector<std::size_t>> find_violation(const Cgd& f, const Relation& r) {
  if (!same_schema(f.schema, r.schema)) {
    throw TypeError("dependency " + f.to_string() + " checked against schema " +
                    r.schema->name());
  }
  std::size_t k = f.var_count();
  if (r.empty()) return std::nullopt;
  std::vector<std::size_t> idx(k, 0);
  Assignment a;
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) a.bind(f.tuple_vars[i], &r.rows[idx[i]]);
    if (eval_ground(f.body, a) && !eval_ground(f.head, a)) return idx;
    std::size_t pos = k;
    while (pos > 0) {
      if (++idx[pos - 1] < r.size()) break;
      idx[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
  }
  return std::nullopt;
}

}  // namespace prefopt
