#pragma once

// Shared test helpers: deterministic random generators for formulas,
// preferences and relations, plus the brute-force oracles the solver and
// entailment checkers are validated against. Everything here is
// independent of the solver / entailment implementation paths it checks.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "prefopt/engine.hpp"
#include "prefopt/optimizer.hpp"

namespace testkit {

using namespace prefopt;

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(eng() % n); }
  bool flip() { return below(2) == 0; }
  int small_int(int lo, int hi) { return lo + static_cast<int>(below(hi - lo + 1)); }
};

// Book(isbn: D, vendor: D, price: Q) and the running examples over it.
SchemaRef book_schema();
Relation figure1_book();              // the five-row example instance
PreferenceRelation lower_price_same_isbn();  // C1: same isbn, lower price
Cgd isbn_determines_price();          // FD isbn -> price
Cgd constant_isbn();                  // FD {} -> isbn

// Item(grp: D, x: Q, y: Q) for randomized engine tests.
SchemaRef item_schema();

// Random strict-partial-order preference over Item; `weak_only` restricts
// to weak orders (score and lexicographic families).
PreferenceRelation random_spo_preference(Rng& rng, bool weak_only);

// Random Item relation; values collide often so indifference is exercised.
Relation random_item_relation(Rng& rng, std::size_t max_rows);

// Random Book relation; when `satisfy_fd` is set every isbn maps to one
// price, so isbn -> price holds by construction.
Relation random_book_relation(Rng& rng, std::size_t max_rows, bool satisfy_fd,
                              bool single_isbn = false);

// ---------------------------------------------------------------------------
// Brute-force oracles

// Equality fragment: enumerates all instances of at most `k` tuples over a
// canonical atom domain (restricted-growth assignments over the cells plus
// any constants mentioned) and reports whether every instance satisfying F
// also satisfies f0.
bool brute_force_entails_equality(const std::vector<Cgd>& F, const Cgd& f0);

// Grid oracle for pure rational-order conjunctions: true when some
// assignment over {0, 1/2, 1, ..., n} satisfies all atoms.
bool grid_satisfiable(const std::vector<AtomicConstraint>& atoms, const VarBindings& vars,
                      int n);

// Winnow invariants (mutual indifference and no-domination) checked on an
// evaluator output; throws on violation. Returns the number of checks run.
std::size_t assert_winnow_invariants(const PreferenceRelation& c, const Relation& output);

// T(a: D, b: D, c: D) plus random dependencies over it, for entailment
// cross-validation.
SchemaRef abc_schema();
Cgd random_equality_cgd(Rng& rng, std::size_t max_vars);
Fd random_fd(Rng& rng);

}  // namespace testkit
