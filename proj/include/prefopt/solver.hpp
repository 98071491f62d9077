#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prefopt/formula.hpp"

namespace prefopt {

/// A concrete tuple per variable. Attributes not mentioned by the queried
/// formula are filled deterministically (fresh atoms / zero).
struct Model {
  std::map<std::string, Tuple> tuples;
  VarBindings vars;

  Assignment assignment() const;
  std::string to_string() const;
};

struct SatResult {
  bool sat;
  Model model;  // meaningful when sat

  static SatResult unsat() { return {false, {}}; }
};

struct SolverOptions {
  /// Cap on explored case-split branches; exceeding it raises BudgetError.
  std::uint64_t split_budget = 5'000'000;
};

/// PTIME satisfiability for a conjunction of atomic constraints.
/// Atom-domain atoms go through union-find; rational atoms through an
/// order graph where unsatisfiability is a cycle containing a strict edge
/// or a disequality joining nodes forced equal.
SatResult conj_sat(std::span<const AtomicConstraint> atoms, const VarBindings& vars);

/// Complete satisfiability over the two fixed domains via depth-first case
/// splitting with early conflict pruning. Every Sat model is re-checked
/// against the input formula before being returned.
SatResult formula_sat(const Formula& f, const SolverOptions& opts = {});

struct ValidityResult {
  bool valid;
  Model countermodel;  // meaningful when !valid
};

/// true iff the negation is unsatisfiable.
ValidityResult is_valid(const Formula& f, const SolverOptions& opts = {});

}  // namespace prefopt
