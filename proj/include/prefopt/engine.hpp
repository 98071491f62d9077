#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "prefopt/preference.hpp"
#include "prefopt/relation.hpp"

namespace prefopt {

struct WindowConfig {
  std::size_t capacity = 64;  // tuples held in main memory
};

/// Dominance-test counters, filled when a stats sink is passed.
struct WinnowStats {
  std::uint64_t comparisons = 0;
  std::uint64_t passes = 0;
};

/// Literal implementation of the winnow definition: keep each tuple not
/// strictly dominated by any other. Quadratic; the correctness oracle for
/// every other evaluator. Preserves input order.
Relation winnow_naive(const PreferenceRelation& c, const Relation& r,
                      WinnowStats* stats = nullptr);

/// Block-nested-loops evaluation. Sound for strict partial orders. Output
/// order: window-entry time, then pass number.
Relation winnow_bnl(const PreferenceRelation& c, const Relation& r, const WindowConfig& w = {},
                    WinnowStats* stats = nullptr);

/// Single-pass evaluation keeping one top tuple and its bucket of
/// indifferent tuples. Sound only when c is a weak order on r; violations
/// are not detected here.
Relation winnow_wwo(const PreferenceRelation& c, const Relation& r,
                    WinnowStats* stats = nullptr);

/// Two-pass constant-memory variant: pass one finds a maximal tuple, pass
/// two emits the tuples indifferent to it (itself included).
Relation winnow_wwo_two_pass(const PreferenceRelation& c, const Relation& r,
                             WinnowStats* stats = nullptr);

/// Order-preserving filter; cond must use exactly one tuple variable.
Relation select(const Formula& cond, const Relation& r);

struct RankedTuple {
  Tuple tuple;
  std::size_t rank;  // 1-based
};

/// Iterated winnow: rank 1 tuples are the winnow of r, rank 2 the winnow of
/// the rest, and so on. Fails with a cycle diagnosis when an iteration
/// removes nothing (c is not a strict partial order on r). Result preserves
/// input order.
std::vector<RankedTuple> rank(const PreferenceRelation& c, const Relation& r);

struct DepCheck {
  const Cgd* dep;
  bool satisfied;
  std::vector<std::size_t> violation;  // tuple indices per variable
};

std::vector<DepCheck> check_deps(const Relation& r, std::span<const Cgd> F);

}  // namespace prefopt
