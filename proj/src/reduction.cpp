#include "prefopt/reduction.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "prefopt/errors.hpp"

namespace prefopt {

namespace {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(eng() % n); }
};

std::array<std::size_t, 3> distinct_triple(Rng& rng, std::size_t n) {
  std::array<std::size_t, 3> t{};
  t[0] = rng.below(n);
  do {
    t[1] = rng.below(n);
  } while (t[1] == t[0]);
  do {
    t[2] = rng.below(n);
  } while (t[2] == t[0] || t[2] == t[1]);
  return t;
}

}  // namespace

Catalog ReductionBundle::catalog() const {
  Catalog cat;
  parse_schema_text(cat, schema_text, kind + " schema");
  parse_preference_text(cat, preference_text, kind + " preference");
  return cat;
}

std::vector<Cgd> ReductionBundle::dependencies(const Catalog& cat) const {
  return parse_dependency_text(cat, deps_text, kind + " deps");
}

bool m3sat_satisfiable(std::size_t variables,
                       const std::vector<std::array<std::size_t, 3>>& positive,
                       const std::vector<std::array<std::size_t, 3>>& negative) {
  for (std::size_t mask = 0; mask < (std::size_t{1} << variables); ++mask) {
    bool ok = true;
    for (const auto& c : positive) {
      if (!((mask >> c[0]) & 1) && !((mask >> c[1]) & 1) && !((mask >> c[2]) & 1)) {
        ok = false;
        break;
      }
    }
    for (const auto& c : negative) {
      if (!ok) break;
      if (((mask >> c[0]) & 1) && ((mask >> c[1]) & 1) && ((mask >> c[2]) & 1)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

ReductionBundle gen_m3sat(std::size_t variables, std::uint64_t seed) {
  if (variables < 3 || variables > kMaxM3SatVariables) {
    throw PreconditionError("m3sat size must be between 3 and " +
                            std::to_string(kMaxM3SatVariables));
  }
  Rng rng(seed);
  std::size_t n = variables;
  std::vector<std::array<std::size_t, 3>> positive, negative;
  // Sparse random monotone formulas are almost always satisfiable; a dense
  // mode seeds all triples over five variables with both polarities, which
  // forces at most two true and at most two false among them.
  bool dense = n >= 5 && rng.below(3) == 0;
  if (dense) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    for (std::size_t i = 0; i < 5; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
    for (std::size_t a = 0; a < 5; ++a) {
      for (std::size_t b = a + 1; b < 5; ++b) {
        for (std::size_t c = b + 1; c < 5; ++c) {
          positive.push_back({pool[a], pool[b], pool[c]});
          negative.push_back({pool[a], pool[b], pool[c]});
        }
      }
    }
    // the construction is clause-critical: removing any one clause makes it
    // satisfiable again, which is a useful near-threshold case
    if (rng.below(4) == 0) {
      std::size_t victim = rng.below(positive.size() + negative.size());
      if (victim < positive.size()) {
        positive.erase(positive.begin() + static_cast<std::ptrdiff_t>(victim));
      } else {
        negative.erase(negative.begin() +
                       static_cast<std::ptrdiff_t>(victim - positive.size()));
      }
    }
    std::size_t extra = rng.below(n);
    for (std::size_t i = 0; i < extra; ++i) positive.push_back(distinct_triple(rng, n));
  } else {
    std::size_t positive_count = 1 + rng.below(2 * n);
    std::size_t negative_count = 1 + rng.below(n);
    for (std::size_t i = 0; i < positive_count; ++i) positive.push_back(distinct_triple(rng, n));
    for (std::size_t i = 0; i < negative_count; ++i) negative.push_back(distinct_triple(rng, n));
  }

  std::size_t k = negative.size();
  std::size_t arity = n + k + 1;
  auto attr = [](std::size_t i) { return "a" + std::to_string(i + 1); };

  ReductionBundle b;
  b.kind = "m3sat";
  b.seed = seed;
  {
    std::string s = "SCHEMA R(";
    for (std::size_t i = 0; i < arity; ++i) s += (i ? ", " : "") + attr(i) + ": Q";
    b.schema_text = s + ")\n";
  }
  b.preference_text = "PREF C ON R: t1." + attr(arity - 1) + " > t2." + attr(arity - 1) + "\n";
  {
    std::string s;
    // positive clause p_i | p_j | p_m: distinct on i and j forces equal on m
    for (const auto& c : positive) {
      s += "CGD R[t1,t2]: t1." + attr(c[0]) + " != t2." + attr(c[0]) + " AND t1." + attr(c[1]) +
           " != t2." + attr(c[1]) + " => t1." + attr(c[2]) + " = t2." + attr(c[2]) + "\n";
    }
    // negative clause h introduces a helper attribute a_{n+h}
    for (std::size_t h = 0; h < negative.size(); ++h) {
      const auto& c = negative[h];
      s += "FD R: " + attr(c[0]) + "," + attr(n + h) + " -> " + attr(arity - 1) + "\n";
      s += "FD R: " + attr(c[1]) + "," + attr(c[2]) + " -> " + attr(n + h) + "\n";
    }
    b.deps_text = s;
  }
  b.check_property = "redundant";
  bool sat = m3sat_satisfiable(n, positive, negative);
  b.expected_holds = !sat;  // unsatisfiable formula <=> redundancy entailed
  b.description = std::to_string(n) + " variables, " + std::to_string(positive.size()) +
                  " positive and " + std::to_string(negative.size()) +
                  " negative clauses; formula " + (sat ? "satisfiable" : "unsatisfiable");
  return b;
}

bool graph_3colorable(std::size_t vertices,
                      const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> color(vertices, 0);
  std::size_t total = 1;
  for (std::size_t i = 0; i < vertices; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < vertices; ++i) {
      color[i] = c % 3;
      c /= 3;
    }
    bool ok = true;
    for (const auto& [u, v] : edges) {
      if (color[u] == color[v]) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

ReductionBundle gen_3color_graph(std::size_t vertices,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                 const std::string& description) {
  if (vertices < 3 || vertices > kMax3ColorVertices) {
    throw PreconditionError("3color size must be between 3 and " +
                            std::to_string(kMax3ColorVertices));
  }
  std::size_t n = vertices;
  auto vattr = [](std::size_t i) { return "c" + std::to_string(i + 1); };
  const std::string col = "col";
  const std::string delta =
      "t1.col != t2.col AND t1.col != t3.col AND t2.col != t3.col";

  ReductionBundle b;
  b.kind = "3color";
  {
    std::string s = "SCHEMA R(";
    for (std::size_t i = 0; i < n; ++i) s += vattr(i) + ": D, ";
    b.schema_text = s + col + ": D)\n";
  }
  b.preference_text = "PREF C ON R: t1.col = '1' AND t2.col = '2'\n";
  {
    std::string s = "CGD R[t1]: TRUE => t1.col = '1' OR t1.col = '2' OR t1.col = '3'\n";
    for (std::size_t i = 0; i < n; ++i) {
      s += "CGD R[t1]: TRUE => t1." + vattr(i) + " = '0' OR t1." + vattr(i) + " = '1'\n";
    }
    for (std::size_t i = 0; i < n; ++i) {
      // exactly one of the three color rows marks vertex i, as clauses
      s += "CGD R[t1,t2,t3]: " + delta + " => t1." + vattr(i) + " = '1' OR t2." + vattr(i) +
           " = '1' OR t3." + vattr(i) + " = '1'\n";
      const char* pairs[3][2] = {{"t1", "t2"}, {"t1", "t3"}, {"t2", "t3"}};
      for (auto& p : pairs) {
        s += std::string("CGD R[t1,t2,t3]: ") + delta + " => " + p[0] + "." + vattr(i) +
             " != '1' OR " + p[1] + "." + vattr(i) + " != '1'\n";
      }
    }
    for (const auto& [u, v] : edges) {
      s += "CGD R[t1,t2,t3]: " + delta + " => t1." + vattr(u) + " != t1." + vattr(v) +
           " OR t2." + vattr(u) + " != t2." + vattr(v) + " OR t3." + vattr(u) + " != t3." +
           vattr(v) + "\n";
    }
    b.deps_text = s;
  }
  b.check_property = "wo";
  bool colorable = graph_3colorable(vertices, edges);
  b.expected_holds = !colorable;  // colorable <=> weak order refuted
  b.description = description + "; " + std::to_string(edges.size()) + " edges; " +
                  (colorable ? "3-colorable" : "not 3-colorable");
  return b;
}

ReductionBundle gen_3color(std::size_t vertices, std::uint64_t seed) {
  if (vertices < 3 || vertices > kMax3ColorVertices) {
    throw PreconditionError("3color size must be between 3 and " +
                            std::to_string(kMax3ColorVertices));
  }
  Rng rng(seed);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < vertices; ++i) {
    for (std::size_t j = i + 1; j < vertices; ++j) {
      if (rng.below(2) == 0) edges.emplace_back(i, j);
    }
  }
  ReductionBundle b = gen_3color_graph(vertices, edges,
                                       std::to_string(vertices) + " vertices, random graph");
  b.seed = seed;
  return b;
}

}  // namespace prefopt
