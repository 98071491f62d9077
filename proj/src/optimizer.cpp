#include "prefopt/optimizer.hpp"

#include <algorithm>

#include "prefopt/errors.hpp"

namespace prefopt {

std::string to_string(AlgoHint a) {
  switch (a) {
    case AlgoHint::automatic: return "auto";
    case AlgoHint::naive: return "naive";
    case AlgoHint::bnl: return "bnl";
    case AlgoHint::wwo: return "wwo";
  }
  return "?";
}

AlgoHint algo_from_string(const std::string& s) {
  if (s == "auto") return AlgoHint::automatic;
  if (s == "naive") return AlgoHint::naive;
  if (s == "bnl") return AlgoHint::bnl;
  if (s == "wwo") return AlgoHint::wwo;
  throw ParseError("unknown algorithm hint '" + s + "'", 1, 1);
}

std::unique_ptr<PlanNode> PlanNode::clone() const {
  auto n = std::make_unique<PlanNode>();
  n->kind = kind;
  n->schema = schema;
  n->table = table;
  n->cond = cond;
  n->pref = pref;
  n->algo = algo;
  n->deps = deps;
  if (input) n->input = input->clone();
  return n;
}

std::string PlanNode::to_string() const {
  switch (kind) {
    case Kind::scan:
      return "scan[" + table + "]";
    case Kind::select:
      return "select[" + cond->to_string() + "](" + input->to_string() + ")";
    case Kind::winnow:
      return "winnow[" + pref->name + "," + prefopt::to_string(algo) + "](" +
             input->to_string() + ")";
  }
  return "?";
}

namespace {

bool has_dep(const std::vector<Cgd>& deps, const Cgd& f) {
  std::string key = f.to_string();
  return std::any_of(deps.begin(), deps.end(),
                     [&](const Cgd& g) { return g.to_string() == key; });
}

Cgd selection_cgd(const Formula& cond, const SchemaRef& schema) {
  if (cond.vars().size() > 1) {
    throw TypeError("selection condition must use at most one tuple variable");
  }
  Formula head = cond;
  if (!cond.vars().empty()) {
    head = substitute(cond, {{cond.vars().begin()->first, "t1"}});
  }
  return Cgd{schema, {"t1"}, Formula::truth(), std::move(head),
             "selection " + cond.to_string()};
}

void annotate(PlanNode& node, std::span<const Cgd> base, const OptimizeOptions& opts) {
  switch (node.kind) {
    case PlanNode::Kind::scan: {
      node.deps.clear();
      for (const Cgd& f : base) {
        if (same_schema(f.schema, node.schema)) node.deps.push_back(f);
      }
      return;
    }
    case PlanNode::Kind::select: {
      annotate(*node.input, base, opts);
      node.deps = node.input->deps;
      Cgd sel = selection_cgd(*node.cond, node.schema);
      if (!has_dep(node.deps, sel)) node.deps.push_back(std::move(sel));
      return;
    }
    case PlanNode::Kind::winnow: {
      annotate(*node.input, base, opts);
      node.deps = node.input->deps;
      Cgd d1 = redundancy_cgd(*node.pref);
      if (!has_dep(node.deps, d1)) node.deps.push_back(std::move(d1));
      // Candidate promotion needs the irreflexivity hypothesis.
      if (opts.candidates.empty()) return;
      bool irreflexive = entails({}, irreflexivity_cgd(*node.pref), opts.solver).entailed;
      if (!irreflexive) return;
      for (const Cgd& f : opts.candidates) {
        if (!same_schema(f.schema, node.schema) || has_dep(node.deps, f)) continue;
        try {
          if (propagates_rel(node.input->deps, *node.pref, f, opts.solver).entailed) {
            node.deps.push_back(f);
          }
        } catch (const BudgetError&) {
          // keep the sound subset
        }
      }
      return;
    }
  }
}

}  // namespace

void propagate_deps(Plan& p, std::span<const Cgd> base, const OptimizeOptions& opts) {
  if (!p.root) throw PreconditionError("empty plan");
  annotate(*p.root, base, opts);
}

namespace {

struct RuleFiring {
  std::string rule;
  std::size_t depth;
  std::vector<std::string> obligations;
};

// Tries the rule with the given id at the node; on success mutates the
// plan in place and reports the firing.
std::optional<RuleFiring> try_rule(const std::string& rule, std::unique_ptr<PlanNode>& slot,
                                   std::size_t depth, const OptimizeOptions& opts) {
  PlanNode& node = *slot;
  if (rule == "R1" && node.kind == PlanNode::Kind::winnow &&
      node.input->kind != PlanNode::Kind::winnow) {
    // Nested winnow pairs belong to R2/R3: the inner node's no-domination
    // annotation would otherwise make any contained outer winnow look
    // redundant here and starve those rules.
    EntailmentResult r = is_redundant_rel(*node.pref, node.input->deps, opts.solver);
    if (r.entailed) {
      RuleFiring firing{rule, depth,
                        {"winnow " + node.pref->name + " is redundant relative to its input"}};
      slot = std::move(node.input);
      return firing;
    }
    return std::nullopt;
  }
  if (rule == "R2" && node.kind == PlanNode::Kind::winnow &&
      node.input->kind == PlanNode::Kind::winnow) {
    const PreferenceRelation& outer = *node.pref;
    const PreferenceRelation& inner = *node.input->pref;
    const std::vector<Cgd>& F = node.input->input->deps;
    if (!is_spo_rel(outer, F, opts.solver).holds) return std::nullopt;
    if (!is_spo_rel(inner, F, opts.solver).holds) return std::nullopt;
    if (!contains_rel(outer, inner, F, opts.solver).entailed) return std::nullopt;
    RuleFiring firing{rule, depth,
                      {outer.name + " and " + inner.name + " are strict partial orders",
                       outer.name + " is contained in " + inner.name}};
    slot = std::move(node.input);
    return firing;
  }
  if (rule == "R3" && node.kind == PlanNode::Kind::winnow &&
      node.input->kind == PlanNode::Kind::winnow) {
    const PreferenceRelation& outer = *node.pref;   // evaluated second
    const PreferenceRelation& inner = *node.input->pref;  // evaluated first
    const std::vector<Cgd>& F = node.input->input->deps;
    if (!is_wo_rel(inner, F, opts.solver).holds) return std::nullopt;
    std::vector<std::string> obligations{inner.name + " is a weak order relative to F"};
    if (opts.small_intermediate) {
      // Keep the nested pair when the composition could not run as a
      // single WWO pass anyway and the inner result is expected small.
      std::vector<Cgd> extended = F;
      extended.push_back(redundancy_cgd(inner));
      if (!is_wo_rel(outer, extended, opts.solver).holds) return std::nullopt;
      obligations.push_back(outer.name + " stays a weak order above " + inner.name);
    }
    PreferenceRelation composed = compose_prioritized(inner, outer);
    auto replacement = std::make_unique<PlanNode>();
    replacement->kind = PlanNode::Kind::winnow;
    replacement->schema = node.schema;
    replacement->pref = std::move(composed);
    replacement->algo = AlgoHint::automatic;
    replacement->input = std::move(node.input->input);
    RuleFiring firing{rule, depth, std::move(obligations)};
    slot = std::move(replacement);
    return firing;
  }
  if (rule == "R4" && node.kind == PlanNode::Kind::select &&
      node.input->kind == PlanNode::Kind::winnow) {
    const Formula& sel = *node.cond;
    const PreferenceRelation& pref = *node.input->pref;
    const std::vector<Cgd>& F = node.input->input->deps;
    if (sel.vars().empty()) return std::nullopt;  // constant condition, nothing to gain
    if (!commutes_selection_rel(sel, pref, F, opts.solver).entailed) return std::nullopt;
    RuleFiring firing{rule, depth,
                      {"selection " + sel.to_string() + " commutes with winnow " + pref.name}};
    // select(winnow(x)) -> winnow(select(x))
    std::unique_ptr<PlanNode> winnow = std::move(node.input);
    std::unique_ptr<PlanNode> below = std::move(winnow->input);
    winnow->input = std::move(slot);
    winnow->input->input = std::move(below);
    slot = std::move(winnow);
    return firing;
  }
  return std::nullopt;
}

std::optional<RuleFiring> apply_rule_anywhere(const std::string& rule,
                                              std::unique_ptr<PlanNode>& slot,
                                              std::size_t depth, const OptimizeOptions& opts) {
  auto firing = try_rule(rule, slot, depth, opts);
  if (firing) return firing;
  if (slot->input) return apply_rule_anywhere(rule, slot->input, depth + 1, opts);
  return std::nullopt;
}

}  // namespace

std::pair<Plan, RewriteTrace> rewrite(const Plan& p, std::span<const Cgd> base,
                                      const OptimizeOptions& opts) {
  Plan out = p.clone();
  RewriteTrace trace;
  const std::vector<std::string> all_rules{"R1", "R2", "R3", "R4"};
  std::vector<std::string> rules;
  for (const std::string& r : all_rules) {
    if (!opts.disabled_rules.count(r)) rules.push_back(r);
  }

  // Each firing removes a node or pushes a selection strictly deeper, so
  // a quadratic iteration cap is a safe guard against rule bugs.
  std::size_t plan_size = 0;
  for (const PlanNode* n = out.root.get(); n != nullptr; n = n->input.get()) ++plan_size;
  std::size_t max_firings = plan_size * plan_size + plan_size + 1;

  for (std::size_t round = 0; round < max_firings; ++round) {
    propagate_deps(out, base, opts);
    std::optional<RuleFiring> firing;
    std::string before = out.to_string();
    for (const std::string& rule : rules) {
      firing = apply_rule_anywhere(rule, out.root, 0, opts);
      if (firing) break;
    }
    if (!firing) {
      return {std::move(out), std::move(trace)};
    }
    trace.push_back(
        {firing->rule, firing->depth, std::move(firing->obligations), before, out.to_string()});
  }
  throw InternalError("rewrite did not reach a fixpoint");
}

void choose_algorithm(Plan& p, const OptimizeOptions& opts) {
  if (!p.root) throw PreconditionError("empty plan");
  for (PlanNode* n = p.root.get(); n != nullptr; n = n->input.get()) {
    if (n->kind != PlanNode::Kind::winnow || n->algo != AlgoHint::automatic) continue;
    n->algo = is_wo_rel(*n->pref, n->input->deps, opts.solver).holds ? AlgoHint::wwo
                                                                     : AlgoHint::bnl;
  }
}

namespace {

Relation execute_node(const PlanNode& node, const std::map<std::string, Relation>& data,
                      const ExecOptions& opts) {
  switch (node.kind) {
    case PlanNode::Kind::scan: {
      auto it = data.find(node.table);
      if (it == data.end()) throw IoError("no data for table " + node.table);
      if (!same_schema(it->second.schema, node.schema)) {
        throw TypeError("data for " + node.table + " does not match the plan schema");
      }
      return it->second;
    }
    case PlanNode::Kind::select: {
      Relation in = execute_node(*node.input, data, opts);
      return select(*node.cond, in);
    }
    case PlanNode::Kind::winnow: {
      Relation in = execute_node(*node.input, data, opts);
      AlgoHint algo = opts.algo_override.value_or(node.algo);
      Relation out;
      switch (algo) {
        case AlgoHint::naive:
          out = winnow_naive(*node.pref, in);
          break;
        case AlgoHint::bnl:
        case AlgoHint::automatic:
          out = winnow_bnl(*node.pref, in, opts.window);
          break;
        case AlgoHint::wwo:
          out = winnow_wwo(*node.pref, in);
          break;
      }
      if (opts.verify) {
        Relation reference = winnow_naive(*node.pref, in);
        if (!same_multiset(out, reference)) {
          throw VerifyError("winnow " + node.pref->name + " (" + to_string(algo) +
                            ") disagrees with the reference evaluation:\ngot:\n" + to_csv(out) +
                            "expected:\n" + to_csv(reference));
        }
      }
      return out;
    }
  }
  throw InternalError("unknown plan node kind");
}

}  // namespace

Relation execute(const Plan& p, const std::map<std::string, Relation>& data,
                 const ExecOptions& opts) {
  if (!p.root) throw PreconditionError("empty plan");
  return execute_node(*p.root, data, opts);
}

}  // namespace prefopt
