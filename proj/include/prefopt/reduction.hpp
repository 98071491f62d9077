#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "prefopt/catalog.hpp"

namespace prefopt {

/// A generated stress-test instance: the dependency set plus a preference
/// whose semantic-property verdict is known from a brute-force oracle run
/// before emission.
struct ReductionBundle {
  std::string kind;  // "m3sat" | "3color"
  std::uint64_t seed = 0;
  std::string description;

  std::string schema_text;
  std::string preference_text;  // defines preference "C"
  std::string deps_text;

  std::string check_property;  // "redundant" | "wo"
  bool expected_holds;         // entailed / weak order, per the oracle

  /// Parses the rendered texts back into live objects.
  Catalog catalog() const;
  std::vector<Cgd> dependencies(const Catalog& cat) const;
};

inline constexpr std::size_t kMaxM3SatVariables = 12;
inline constexpr std::size_t kMax3ColorVertices = 8;

/// Monotone 3-SAT instance mapped to a winnow-redundancy check: the formula
/// is unsatisfiable exactly when the redundancy dependency is entailed.
ReductionBundle gen_m3sat(std::size_t variables, std::uint64_t seed);

/// 3-colorability instance mapped to a relative weak-order check: the graph
/// is 3-colorable exactly when the weak-order property is refuted.
ReductionBundle gen_3color(std::size_t vertices, std::uint64_t seed);

/// Same reduction over an explicit edge list (presets: triangle, K4).
ReductionBundle gen_3color_graph(std::size_t vertices,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                 const std::string& description);

/// Brute-force oracles (exposed for cross-validation in tests).
bool m3sat_satisfiable(std::size_t variables,
                       const std::vector<std::array<std::size_t, 3>>& positive,
                       const std::vector<std::array<std::size_t, 3>>& negative);
bool graph_3colorable(std::size_t vertices,
                      const std::vector<std::pair<std::size_t, std::size_t>>& edges);

}  // namespace prefopt
