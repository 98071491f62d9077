#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prefopt/schema.hpp"

namespace prefopt {

enum class CompareOp { eq, ne, lt, le, gt, ge };

CompareOp complement(CompareOp op);  // negation: < becomes >=, = becomes !=, ...
CompareOp mirror(CompareOp op);      // swap sides: < becomes >, = stays =
std::string to_string(CompareOp op);

/// An attribute reference (var.attr, resolved to an index) or a constant.
class Term {
 public:
  static Term attr_ref(std::string var, std::string attr, std::size_t index, DomainTag tag);
  static Term constant(Value v);

  bool is_attr() const { return is_attr_; }
  const std::string& var() const { return var_; }
  const std::string& attr() const { return attr_; }
  std::size_t attr_index() const { return index_; }
  const Value& value() const { return value_; }
  DomainTag tag() const { return tag_; }

  bool operator==(const Term& o) const;
  std::string to_string() const;

 private:
  Term() : value_(Value::number(Rational())) {}
  bool is_attr_ = false;
  std::string var_;
  std::string attr_;
  std::size_t index_ = 0;
  Value value_;
  DomainTag tag_ = DomainTag::number;
};

struct AtomicConstraint {
  Term left;
  CompareOp op;
  Term right;

  DomainTag tag() const { return left.tag(); }
  bool operator==(const AtomicConstraint& o) const;
  std::string to_string() const;
};

/// Returns the complemented atom (same terms, negated operator).
AtomicConstraint negate_atom(const AtomicConstraint& a);

/// Tuple variables in scope, each bound to a schema. Deterministic order.
using VarBindings = std::map<std::string, SchemaRef>;

/// Immutable quantifier-free formula over typed tuple variables.
/// And/Or nodes are n-ary; construction type-checks variable bindings.
class Formula {
 public:
  enum class Kind { truth, falsity, atom, negation, conjunction, disjunction };

  static Formula truth();
  static Formula falsity();
  static Formula atom(AtomicConstraint a, const VarBindings& vars);
  static Formula negation(Formula f);
  static Formula conjunction(std::vector<Formula> children);
  static Formula disjunction(std::vector<Formula> children);

  /// Conjunction/disjunction with True/False folding and singleton collapse.
  static Formula conjunction_simplified(std::vector<Formula> children);
  static Formula disjunction_simplified(std::vector<Formula> children);

  Kind kind() const { return node_->kind; }
  bool is_truth() const { return kind() == Kind::truth; }
  bool is_falsity() const { return kind() == Kind::falsity; }
  const AtomicConstraint& atom_constraint() const { return node_->atom; }
  std::span<const Formula> children() const { return node_->children; }
  const VarBindings& vars() const { return node_->vars; }

  bool operator==(const Formula& o) const;
  std::string to_string() const;

 private:
  struct Node {
    Kind kind;
    AtomicConstraint atom{Term::constant(Value::number(Rational())), CompareOp::eq,
                          Term::constant(Value::number(Rational()))};
    std::vector<Formula> children;
    VarBindings vars;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Disjunction of conjunctions of atoms. An empty disjunct list denotes
/// False; a single empty conjunction denotes True.
struct DnfFormula {
  std::vector<std::vector<AtomicConstraint>> disjuncts;
  VarBindings vars;

  Formula to_formula() const;
  std::string to_string() const;
};

inline constexpr std::size_t kDefaultDnfBudget = 10000;

/// Parses the text grammar. `env` must bind every tuple variable used.
Formula parse_formula(const std::string& text, const VarBindings& env);

/// NNF of the given formula (pushes existing negations into atoms).
Formula to_nnf(const Formula& f);

/// NNF of the negation.
Formula negate_to_nnf(const Formula& f);

/// Distributes to DNF. Throws BudgetError when the disjunct count would
/// exceed `budget`. Syntactically contradictory disjuncts are dropped.
DnfFormula to_dnf(const Formula& f, std::size_t budget = kDefaultDnfBudget);

/// Simultaneous tuple-variable renaming.
Formula substitute(const Formula& f, const std::map<std::string, std::string>& renaming);

/// Ground evaluation context: tuple variable -> concrete tuple.
class Assignment {
 public:
  void bind(const std::string& var, const Tuple* tuple);
  const Tuple* lookup(const std::string& var) const;

 private:
  std::vector<std::pair<std::string, const Tuple*>> slots_;
};

bool eval_ground(const Formula& f, const Assignment& a);
bool eval_ground(const DnfFormula& f, const Assignment& a);

/// (number of disjuncts, maximum conjunct count over disjuncts).
std::pair<std::size_t, std::size_t> width_span(const DnfFormula& f);

}  // namespace prefopt
