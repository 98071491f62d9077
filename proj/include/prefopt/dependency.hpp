#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prefopt/formula.hpp"
#include "prefopt/relation.hpp"
#include "prefopt/solver.hpp"

namespace prefopt {

/// Constraint-generating dependency over k tuple variables of one schema:
/// for all t1..tk in R, body(t1..tk) implies head(t1..tk).
struct Cgd {
  SchemaRef schema;
  std::vector<std::string> tuple_vars;  // t1..tk, k >= 1
  Formula body;
  Formula head;
  std::string label;

  std::size_t var_count() const { return tuple_vars.size(); }
  /// body is a conjunction of atoms (or True) and head a disjunction of
  /// atoms (or a single atom / True / False).
  bool is_clausal() const;
  std::string to_string() const;
};

/// Functional dependency X -> Y; X may be empty (constant attributes).
struct Fd {
  SchemaRef schema;
  std::vector<std::string> lhs;
  std::vector<std::string> rhs;

  std::string to_string() const;
};

/// The 2-CGD t1[X]=t2[X] => t1[Y]=t2[Y].
Cgd fd_to_cgd(const Fd& fd);

/// Conjunction over all substitutions of the dependency's tuple variables
/// into u1..uk of (body => head). A j-variable dependency yields k^j
/// conjuncts; a single conjunct is returned unwrapped.
Formula symmetrize(const Cgd& f, std::size_t k);

struct EntailmentResult {
  bool entailed;
  Relation witness;  // at most k tuples; satisfies F and violates f0

  explicit operator bool() const { return entailed; }
};

/// Decides whether every instance satisfying all of F also satisfies f0.
/// Instances of cardinality at most k = var_count(f0) suffice, so the check
/// reduces to unsatisfiability of the symmetrized conjunction. Refutations
/// carry a decoded witness instance, re-verified before being returned.
EntailmentResult entails(std::span<const Cgd> F, const Cgd& f0, const SolverOptions& opts = {});

/// PTIME fast path for FD sets against clausal equality CGDs: per negated
/// disjunct, closes the asserted equalities under equality axioms and the
/// FD implications to fixpoint and looks for a contradiction. Agrees with
/// entails() on its input class.
bool entails_fd_equality(std::span<const Fd> F, const Cgd& f0);

/// Evaluates the dependency over all var_count-tuples of r, repetitions
/// included.
bool check_on_instance(const Cgd& f, const Relation& r);

/// First violating assignment (tuple indices per variable), if any.
std::optional<std::vector<std::size_t>> find_violation(const Cgd& f, const Relation& r);

}  // namespace prefopt
