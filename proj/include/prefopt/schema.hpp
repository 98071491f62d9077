#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prefopt/rational.hpp"

namespace prefopt {

/// The two value domains: uninterpreted atoms (equality only) and exact
/// rationals (dense linear order).
enum class DomainTag { atom, number };

std::string to_string(DomainTag tag);  // "D" / "Q"

struct Attribute {
  std::string name;
  DomainTag tag;
  bool operator==(const Attribute& o) const { return name == o.name && tag == o.tag; }
};

class Schema {
 public:
  Schema(std::string name, std::vector<Attribute> attrs);

  const std::string& name() const { return name_; }
  const std::vector<Attribute>& attributes() const { return attrs_; }
  std::size_t arity() const { return attrs_.size(); }
  std::optional<std::size_t> index_of(const std::string& attr) const;

  bool operator==(const Schema& o) const { return name_ == o.name_ && attrs_ == o.attrs_; }

  std::string to_string() const;

 private:
  std::string name_;
  std::vector<Attribute> attrs_;
};

using SchemaRef = std::shared_ptr<const Schema>;

inline bool same_schema(const SchemaRef& a, const SchemaRef& b) {
  return a == b || (a && b && *a == *b);
}

/// A single cell value, tagged by domain.
class Value {
 public:
  static Value atom(std::string a) { return Value(DomainTag::atom, std::move(a), Rational()); }
  static Value number(Rational q) { return Value(DomainTag::number, std::string(), std::move(q)); }

  DomainTag tag() const { return tag_; }
  const std::string& atom_value() const { return atom_; }
  const Rational& number_value() const { return num_; }

  bool operator==(const Value& o) const;
  bool operator!=(const Value& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  Value(DomainTag tag, std::string a, Rational q)
      : tag_(tag), atom_(std::move(a)), num_(std::move(q)) {}
  DomainTag tag_;
  std::string atom_;
  Rational num_;
};

using Tuple = std::vector<Value>;

std::string tuple_to_string(const Tuple& t);

}  // namespace prefopt
