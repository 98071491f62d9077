#pragma once

#include <map>
#include <string>
#include <vector>

#include "prefopt/optimizer.hpp"

namespace prefopt {

/// Named schemas, preferences and dependencies loaded from flat files.
///
/// Schema file, one per line:   SCHEMA Book(isbn: D, vendor: D, price: Q)
/// Preference file:             PREF C1 ON Book: t1.isbn = t2.isbn AND ...
/// Dependency file:             FD Book: isbn -> price
///                              FD Book: -> isbn            (empty lhs)
///                              CGD Book[t1,t2]: <formula> => <formula>
/// '#' starts a comment; keywords are case-insensitive.
struct Catalog {
  std::map<std::string, SchemaRef> schemas;
  std::vector<std::string> preference_order;
  std::map<std::string, PreferenceRelation> preferences;

  const SchemaRef& schema(const std::string& name) const;
  const PreferenceRelation& preference(const std::string& name) const;
};

void load_schema_file(Catalog& cat, const std::string& path);
void load_preference_file(Catalog& cat, const std::string& path);
std::vector<Cgd> load_dependency_file(const Catalog& cat, const std::string& path);

/// Single dependency line ("FD ..." or "CGD ...").
Cgd parse_dependency_line(const Catalog& cat, const std::string& line);

void parse_schema_text(Catalog& cat, const std::string& text, const std::string& origin);
void parse_preference_text(Catalog& cat, const std::string& text, const std::string& origin);
std::vector<Cgd> parse_dependency_text(const Catalog& cat, const std::string& text,
                                       const std::string& origin);

/// Plan files are JSON trees:
///   {"op":"winnow","pref":"C1","algo":"auto","input":
///     {"op":"select","cond":"t.price < 15","input":
///       {"op":"scan","table":"Book"}}}
/// Winnow nodes may carry an inline "formula" instead of a catalog name;
/// serialized plans always include it so rewritten preferences round-trip.
Plan load_plan_file(const Catalog& cat, const std::string& path);
Plan parse_plan_json(const Catalog& cat, const std::string& json_text);
std::string plan_to_json(const Plan& p, bool include_deps = false);
std::string trace_to_json(const RewriteTrace& trace);

}  // namespace prefopt
