#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "prefopt/schema.hpp"

namespace prefopt {

/// An in-memory relation instance: a schema plus an ordered multiset of
/// typed tuples.
struct Relation {
  SchemaRef schema;
  std::vector<Tuple> rows;
  std::string provenance;  // source path or "derived"

  std::size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }
};

/// CSV with a header row; header names must match the schema attribute
/// names in order. Q cells parse as exact rationals ("13.50" or "27/2"),
/// D cells as atoms (surrounding double quotes optional).
Relation load_csv(const SchemaRef& schema, const std::string& path);
Relation parse_csv(const SchemaRef& schema, std::istream& in, const std::string& origin);

void write_csv(const Relation& r, std::ostream& out);
std::string to_csv(const Relation& r);

/// Multiset equality of rows (schema-compatible inputs assumed).
bool same_multiset(const Relation& a, const Relation& b);

}  // namespace prefopt
