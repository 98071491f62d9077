#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "prefopt/engine.hpp"

namespace prefopt {

enum class AlgoHint { automatic, naive, bnl, wwo };
std::string to_string(AlgoHint a);
AlgoHint algo_from_string(const std::string& s);

/// Query-plan node: a chain of scan / select / winnow (no joins or
/// projections, so every node shares the scan schema). `deps` holds the
/// dependencies known to hold in this node's output.
struct PlanNode {
  enum class Kind { scan, select, winnow };
  Kind kind;
  SchemaRef schema;
  std::string table;                           // scan
  std::optional<Formula> cond;                 // select
  std::optional<PreferenceRelation> pref;      // winnow
  AlgoHint algo = AlgoHint::automatic;         // winnow
  std::unique_ptr<PlanNode> input;             // null for scan
  std::vector<Cgd> deps;

  std::unique_ptr<PlanNode> clone() const;
  std::string to_string() const;  // compact single-line form
};

struct Plan {
  std::unique_ptr<PlanNode> root;

  Plan() = default;
  Plan(std::unique_ptr<PlanNode> r) : root(std::move(r)) {}
  Plan clone() const { return Plan(root ? root->clone() : nullptr); }
  std::string to_string() const { return root ? root->to_string() : "(empty)"; }
};

struct RewriteStep {
  std::string rule;                      // "R1".."R4"
  std::size_t depth;                     // node position from the root
  std::vector<std::string> obligations;  // discharged entailment checks
  std::string before;                    // full plan prints
  std::string after;
};

using RewriteTrace = std::vector<RewriteStep>;

struct OptimizeOptions {
  std::set<std::string> disabled_rules;  // e.g. {"R3"}
  /// Prefer the nested winnow pair over the collapsed prioritized
  /// composition when the inner result is expected to be small and the
  /// composition would not run as a single WWO pass.
  bool small_intermediate = false;
  std::vector<Cgd> candidates;  // promoted through winnow when they propagate
  SolverOptions solver;
};

/// Recomputes every node's dependency annotation bottom-up: scans carry the
/// base dependencies, selections add their condition as a single-tuple
/// dependency, winnows add the mutual-indifference dependency plus any
/// candidate that provably propagates.
void propagate_deps(Plan& p, std::span<const Cgd> base, const OptimizeOptions& opts = {});

/// Applies the rewrite rules to fixpoint in priority order:
///   R1 drop a winnow that is redundant relative to its input deps,
///   R2 drop the outer of two nested winnows when both are strict partial
///      orders and the outer is contained in the inner,
///   R3 collapse nested winnows into one over the prioritized composition
///      when the inner preference is a weak order,
///   R4 push a selection below a winnow when they provably commute.
/// The plan is re-annotated after every firing.
std::pair<Plan, RewriteTrace> rewrite(const Plan& p, std::span<const Cgd> base,
                                      const OptimizeOptions& opts = {});

/// Resolves every automatic winnow hint: wwo when the preference is a weak
/// order relative to the node's input deps, bnl otherwise.
void choose_algorithm(Plan& p, const OptimizeOptions& opts = {});

struct ExecOptions {
  std::optional<AlgoHint> algo_override;
  bool verify = false;  // replay winnow_naive per winnow and diff
  SolverOptions solver;
  WindowConfig window;
};

/// Bottom-up evaluation over named input relations.
Relation execute(const Plan& p, const std::map<std::string, Relation>& data,
                 const ExecOptions& opts = {});

}  // namespace prefopt
