#include "prefopt/engine.hpp"

#include <algorithm>

#include "prefopt/errors.hpp"

namespace prefopt {

namespace {

void require_schema(const PreferenceRelation& c, const Relation& r) {
  if (!same_schema(c.schema, r.schema)) {
    throw TypeError("preference " + c.name + " applied to relation over schema " +
                    r.schema->name());
  }
}

struct Dominance {
  const PreferenceRelation& c;
  WinnowStats* stats;

  bool operator()(const Tuple& a, const Tuple& b) const {
    if (stats != nullptr) ++stats->comparisons;
    return c.prefers(a, b);
  }
};

}  // namespace

Relation winnow_naive(const PreferenceRelation& c, const Relation& r, WinnowStats* stats) {
  require_schema(c, r);
  Dominance dominates{c, stats};
  Relation out;
  out.schema = r.schema;
  out.provenance = "derived";
  for (std::size_t i = 0; i < r.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < r.size() && !dominated; ++j) {
      if (dominates(r.rows[j], r.rows[i])) dominated = true;
    }
    if (!dominated) out.rows.push_back(r.rows[i]);
  }
  return out;
}

Relation winnow_bnl(const PreferenceRelation& c, const Relation& r, const WindowConfig& w,
                    WinnowStats* stats) {
  require_schema(c, r);
  if (w.capacity < 1) throw PreconditionError("window capacity must be at least 1");
  Dominance dominates{c, stats};

  struct WindowEntry {
    Tuple tuple;
    std::uint64_t entry_seq;
  };
  std::vector<WindowEntry> window;
  std::vector<Tuple> input = r.rows;
  std::vector<Tuple> temp;
  std::uint64_t seq = 0;

  Relation out;
  out.schema = r.schema;
  out.provenance = "derived";

  while (!input.empty() || !window.empty()) {
    if (stats != nullptr) ++stats->passes;
    // Entries inserted before the first spill of this pass have been
    // compared against every tuple that reaches the temporary table.
    std::uint64_t first_spill_seq = UINT64_MAX;
    for (Tuple& t : input) {
      bool dominated = false;
      for (const WindowEntry& entry : window) {
        if (dominates(entry.tuple, t)) {
          dominated = true;
          break;
        }
      }
      if (dominated) continue;
      std::size_t kept = 0;
      for (std::size_t i = 0; i < window.size(); ++i) {
        if (!dominates(t, window[i].tuple)) {
          if (kept != i) window[kept] = std::move(window[i]);
          ++kept;
        }
      }
      bool eliminated_some = kept != window.size();
      window.resize(kept);
      if (eliminated_some || window.size() < w.capacity) {
        window.push_back({std::move(t), seq++});
      } else {
        if (first_spill_seq == UINT64_MAX) first_spill_seq = seq;
        temp.push_back(std::move(t));
      }
    }
    // Output (and drop) confirmed window tuples; the window stays in
    // entry order throughout, so this emits oldest first.
    std::size_t kept = 0;
    for (std::size_t i = 0; i < window.size(); ++i) {
      if (window[i].entry_seq < first_spill_seq) {
        out.rows.push_back(std::move(window[i].tuple));
      } else {
        if (kept != i) window[kept] = std::move(window[i]);
        ++kept;
      }
    }
    window.resize(kept);
    input = std::move(temp);
    temp.clear();
  }
  return out;
}

Relation winnow_wwo(const PreferenceRelation& c, const Relation& r, WinnowStats* stats) {
  require_schema(c, r);
  Dominance dominates{c, stats};
  Relation out;
  out.schema = r.schema;
  out.provenance = "derived";
  if (r.empty()) return out;

  Tuple top = r.rows[0];
  std::vector<Tuple> bucket{top};
  for (std::size_t i = 1; i < r.size(); ++i) {
    const Tuple& t = r.rows[i];
    if (dominates(top, t)) continue;
    if (dominates(t, top)) {
      top = t;
      bucket.clear();
      bucket.push_back(t);
    } else {
      bucket.push_back(t);
    }
  }
  out.rows = std::move(bucket);
  return out;
}

Relation winnow_wwo_two_pass(const PreferenceRelation& c, const Relation& r,
                             WinnowStats* stats) {
  require_schema(c, r);
  Dominance dominates{c, stats};
  Relation out;
  out.schema = r.schema;
  out.provenance = "derived";
  if (r.empty()) return out;

  std::size_t top = 0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (dominates(r.rows[i], r.rows[top])) top = i;
  }
  for (const Tuple& t : r.rows) {
    if (!dominates(r.rows[top], t) && !dominates(t, r.rows[top])) out.rows.push_back(t);
  }
  return out;
}

Relation select(const Formula& cond, const Relation& r) {
  if (cond.vars().size() > 1) {
    throw TypeError("selection condition must use at most one tuple variable");
  }
  std::string var = cond.vars().empty() ? "t" : cond.vars().begin()->first;
  if (!cond.vars().empty() && !same_schema(cond.vars().begin()->second, r.schema)) {
    throw TypeError("selection condition over schema " +
                    cond.vars().begin()->second->name() + " applied to " + r.schema->name());
  }
  Relation out;
  out.schema = r.schema;
  out.provenance = "derived";
  Assignment a;
  for (const Tuple& t : r.rows) {
    a.bind(var, &t);
    if (eval_ground(cond, a)) out.rows.push_back(t);
  }
  return out;
}

std::vector<RankedTuple> rank(const PreferenceRelation& c, const Relation& r) {
  require_schema(c, r);
  std::vector<std::size_t> ranks(r.size(), 0);
  std::vector<std::size_t> residue(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) residue[i] = i;

  std::size_t current = 0;
  while (!residue.empty()) {
    ++current;
    std::vector<std::size_t> best;
    for (std::size_t i : residue) {
      bool dominated = false;
      for (std::size_t j : residue) {
        if (c.prefers(r.rows[j], r.rows[i])) {
          dominated = true;
          break;
        }
      }
      if (!dominated) best.push_back(i);
    }
    if (best.empty()) {
      throw PreconditionError(
          "ranking by " + c.name + " made no progress at rank " + std::to_string(current) +
          ": every remaining tuple is dominated, so the preference cycles on this input");
    }
    for (std::size_t i : best) ranks[i] = current;
    std::vector<std::size_t> next;
    next.reserve(residue.size() - best.size());
    std::size_t b = 0;
    for (std::size_t i : residue) {
      if (b < best.size() && best[b] == i) {
        ++b;
      } else {
        next.push_back(i);
      }
    }
    residue = std::move(next);
  }

  std::vector<RankedTuple> out;
  out.reserve(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out.push_back({r.rows[i], ranks[i]});
  return out;
}

std::vector<DepCheck> check_deps(const Relation& r, std::span<const Cgd> F) {
  std::vector<DepCheck> out;
  out.reserve(F.size());
  for (const Cgd& f : F) {
    auto violation = find_violation(f, r);
    out.push_back({&f, !violation.has_value(), violation.value_or(std::vector<std::size_t>{})});
  }
  return out;
}

}  // namespace prefopt
