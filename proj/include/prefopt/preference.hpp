#pragma once

#include <span>
#include <string>

#include "prefopt/dependency.hpp"

namespace prefopt {

/// A named preference relation: t1 is preferred to t2 iff the formula holds
/// with (t1, t2) bound to the two tuples. Variables are canonically named
/// t1 and t2.
struct PreferenceRelation {
  std::string name;
  SchemaRef schema;
  Formula formula = Formula::falsity();

  /// Evaluates "a is preferred to b".
  bool prefers(const Tuple& a, const Tuple& b) const;
  std::string to_string() const;
};

/// The empty preference relation (nothing is preferred to anything).
PreferenceRelation false_preference(const SchemaRef& schema);

/// Neither side preferred to the other, in NNF.
Formula indifference(const PreferenceRelation& c);

/// Prefer by c1; where c1 is indifferent, prefer by c2.
PreferenceRelation compose_prioritized(const PreferenceRelation& c1,
                                       const PreferenceRelation& c2);

enum class OrderAxiom { none, irreflexivity, transitivity, negative_transitivity };
std::string to_string(OrderAxiom axiom);

struct OrderVerdict {
  bool holds;
  OrderAxiom failed = OrderAxiom::none;
  Relation witness;  // at most 3 tuples, refutes the named axiom

  explicit operator bool() const { return holds; }
};

/// Canonical dependencies derived from a preference relation.
Cgd irreflexivity_cgd(const PreferenceRelation& c);
Cgd transitivity_cgd(const PreferenceRelation& c);
Cgd negative_transitivity_cgd(const PreferenceRelation& c);
/// "No tuple dominates another": holds in every winnow result.
Cgd redundancy_cgd(const PreferenceRelation& c);
/// "c1 preferred implies c2 preferred".
Cgd containment_cgd(const PreferenceRelation& c1, const PreferenceRelation& c2);
/// "Selecting the dominated tuple selects the dominating one too".
Cgd selection_commute_cgd(const Formula& selection, const PreferenceRelation& c);

/// Strict-partial-order axioms relative to F (absolute when F is empty).
OrderVerdict is_spo_rel(const PreferenceRelation& c, std::span<const Cgd> F,
                        const SolverOptions& opts = {});

/// Weak-order axioms relative to F: SPO plus negative transitivity.
OrderVerdict is_wo_rel(const PreferenceRelation& c, std::span<const Cgd> F,
                       const SolverOptions& opts = {});

/// Containment of c1 in c2 relative to F.
EntailmentResult contains_rel(const PreferenceRelation& c1, const PreferenceRelation& c2,
                              std::span<const Cgd> F, const SolverOptions& opts = {});

/// Winnow by c removes nothing on any instance satisfying F.
EntailmentResult is_redundant_rel(const PreferenceRelation& c, std::span<const Cgd> F,
                                  const SolverOptions& opts = {});

/// Selection commutes with winnow by c2 relative to F.
EntailmentResult commutes_selection_rel(const Formula& selection, const PreferenceRelation& c2,
                                        std::span<const Cgd> F, const SolverOptions& opts = {});

/// Does f hold in the winnow result for every input satisfying F?
/// Requires c to be irreflexive (checked).
EntailmentResult propagates_rel(std::span<const Cgd> F, const PreferenceRelation& c,
                                const Cgd& f, const SolverOptions& opts = {});

}  // namespace prefopt
