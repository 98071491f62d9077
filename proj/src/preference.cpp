#include "prefopt/preference.hpp"

#include "prefopt/errors.hpp"

namespace prefopt {

namespace {

const std::map<std::string, std::string> kSwap{{"t1", "t2"}, {"t2", "t1"}};

}  // namespace

bool PreferenceRelation::prefers(const Tuple& a, const Tuple& b) const {
  Assignment asg;
  asg.bind("t1", &a);
  asg.bind("t2", &b);
  return eval_ground(formula, asg);
}

std::string PreferenceRelation::to_string() const {
  return "PREF " + name + " ON " + schema->name() + ": " + formula.to_string();
}

PreferenceRelation false_preference(const SchemaRef& schema) {
  return PreferenceRelation{"false", schema, Formula::falsity()};
}

Formula indifference(const PreferenceRelation& c) {
  Formula not_fwd = negate_to_nnf(c.formula);
  Formula not_bwd = negate_to_nnf(substitute(c.formula, kSwap));
  return Formula::conjunction_simplified({std::move(not_fwd), std::move(not_bwd)});
}

PreferenceRelation compose_prioritized(const PreferenceRelation& c1,
                                       const PreferenceRelation& c2) {
  if (!same_schema(c1.schema, c2.schema)) {
    throw TypeError("prioritized composition across schemas: " + c1.name + " vs " + c2.name);
  }
  Formula tie_break = Formula::conjunction_simplified({indifference(c1), c2.formula});
  Formula combined = Formula::disjunction_simplified({c1.formula, std::move(tie_break)});
  return PreferenceRelation{c1.name + " |> " + c2.name, c1.schema, std::move(combined)};
}

std::string to_string(OrderAxiom axiom) {
  switch (axiom) {
    case OrderAxiom::none: return "none";
    case OrderAxiom::irreflexivity: return "irreflexivity";
    case OrderAxiom::transitivity: return "transitivity";
    case OrderAxiom::negative_transitivity: return "negative-transitivity";
  }
  return "?";
}

Cgd irreflexivity_cgd(const PreferenceRelation& c) {
  Formula diag = substitute(c.formula, {{"t1", "t1"}, {"t2", "t1"}});
  return Cgd{c.schema, {"t1"}, Formula::truth(), negate_to_nnf(diag),
             "irreflexivity of " + c.name};
}

Cgd transitivity_cgd(const PreferenceRelation& c) {
  Formula ab = c.formula;
  Formula bc = substitute(c.formula, {{"t1", "t2"}, {"t2", "t3"}});
  Formula ac = substitute(c.formula, {{"t1", "t1"}, {"t2", "t3"}});
  return Cgd{c.schema,
             {"t1", "t2", "t3"},
             Formula::conjunction_simplified({std::move(ab), std::move(bc)}),
             std::move(ac),
             "transitivity of " + c.name};
}

Cgd negative_transitivity_cgd(const PreferenceRelation& c) {
  Formula not_ab = negate_to_nnf(c.formula);
  Formula not_bc = negate_to_nnf(substitute(c.formula, {{"t1", "t2"}, {"t2", "t3"}}));
  Formula not_ac = negate_to_nnf(substitute(c.formula, {{"t1", "t1"}, {"t2", "t3"}}));
  return Cgd{c.schema,
             {"t1", "t2", "t3"},
             Formula::conjunction_simplified({std::move(not_ab), std::move(not_bc)}),
             std::move(not_ac),
             "negative transitivity of " + c.name};
}

Cgd redundancy_cgd(const PreferenceRelation& c) {
  return Cgd{c.schema, {"t1", "t2"}, Formula::truth(), negate_to_nnf(c.formula),
             "no " + c.name + "-domination"};
}

Cgd containment_cgd(const PreferenceRelation& c1, const PreferenceRelation& c2) {
  if (!same_schema(c1.schema, c2.schema)) {
    throw TypeError("containment across schemas: " + c1.name + " vs " + c2.name);
  }
  return Cgd{c1.schema, {"t1", "t2"}, c1.formula, c2.formula,
             c1.name + " contained in " + c2.name};
}

Cgd selection_commute_cgd(const Formula& selection, const PreferenceRelation& c) {
  if (selection.vars().size() != 1) {
    throw TypeError("selection condition must use exactly one tuple variable");
  }
  const std::string& var = selection.vars().begin()->first;
  if (!same_schema(selection.vars().begin()->second, c.schema)) {
    throw TypeError("selection condition over a different schema than " + c.name);
  }
  Formula sel_t2 = substitute(selection, {{var, "t2"}});
  Formula sel_t1 = substitute(selection, {{var, "t1"}});
  return Cgd{c.schema,
             {"t1", "t2"},
             Formula::conjunction_simplified({std::move(sel_t2), c.formula}),
             std::move(sel_t1),
             "selection commutes with " + c.name};
}

namespace {

OrderVerdict check_axioms(const PreferenceRelation& c, std::span<const Cgd> F,
                          const SolverOptions& opts, bool weak) {
  struct Check {
    OrderAxiom axiom;
    Cgd cgd;
  };
  std::vector<Check> checks;
  checks.push_back({OrderAxiom::irreflexivity, irreflexivity_cgd(c)});
  checks.push_back({OrderAxiom::transitivity, transitivity_cgd(c)});
  if (weak) checks.push_back({OrderAxiom::negative_transitivity, negative_transitivity_cgd(c)});
  for (Check& check : checks) {
    EntailmentResult r = entails(F, check.cgd, opts);
    if (!r.entailed) return {false, check.axiom, std::move(r.witness)};
  }
  return {true, OrderAxiom::none, {}};
}

}  // namespace

OrderVerdict is_spo_rel(const PreferenceRelation& c, std::span<const Cgd> F,
                        const SolverOptions& opts) {
  return check_axioms(c, F, opts, false);
}

OrderVerdict is_wo_rel(const PreferenceRelation& c, std::span<const Cgd> F,
                       const SolverOptions& opts) {
  return check_axioms(c, F, opts, true);
}

EntailmentResult contains_rel(const PreferenceRelation& c1, const PreferenceRelation& c2,
                              std::span<const Cgd> F, const SolverOptions& opts) {
  return entails(F, containment_cgd(c1, c2), opts);
}

EntailmentResult is_redundant_rel(const PreferenceRelation& c, std::span<const Cgd> F,
                                  const SolverOptions& opts) {
  return entails(F, redundancy_cgd(c), opts);
}

EntailmentResult commutes_selection_rel(const Formula& selection, const PreferenceRelation& c2,
                                        std::span<const Cgd> F, const SolverOptions& opts) {
  return entails(F, selection_commute_cgd(selection, c2), opts);
}

EntailmentResult propagates_rel(std::span<const Cgd> F, const PreferenceRelation& c,
                                const Cgd& f, const SolverOptions& opts) {
  EntailmentResult irr = entails({}, irreflexivity_cgd(c), opts);
  if (!irr.entailed) {
    throw PreconditionError("propagation requires an irreflexive preference relation; " +
                            c.name + " is not irreflexive");
  }
  std::vector<Cgd> extended(F.begin(), F.end());
  extended.push_back(redundancy_cgd(c));
  return entails(extended, f, opts);
}

}  // namespace prefopt
