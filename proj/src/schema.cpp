#include "prefopt/schema.hpp"

#include "prefopt/errors.hpp"

namespace prefopt {

std::string to_string(DomainTag tag) { return tag == DomainTag::atom ? "D" : "Q"; }

Schema::Schema(std::string name, std::vector<Attribute> attrs)
    : name_(std::move(name)), attrs_(std::move(attrs)) {
  if (attrs_.empty()) throw TypeError("schema " + name_ + " has no attributes");
  for (std::size_t i = 0; i < attrs_.size(); ++i) {
    for (std::size_t j = i + 1; j < attrs_.size(); ++j) {
      if (attrs_[i].name == attrs_[j].name) {
        throw TypeError("schema " + name_ + ": duplicate attribute " + attrs_[i].name);
      }
    }
  }
}

std::optional<std::size_t> Schema::index_of(const std::string& attr) const {
  for (std::size_t i = 0; i < attrs_.size(); ++i) {
    if (attrs_[i].name == attr) return i;
  }
  return std::nullopt;
}

std::string Schema::to_string() const {
  std::string s = name_ + "(";
  for (std::size_t i = 0; i < attrs_.size(); ++i) {
    if (i > 0) s += ", ";
    s += attrs_[i].name + ": " + prefopt::to_string(attrs_[i].tag);
  }
  return s + ")";
}

bool Value::operator==(const Value& o) const {
  if (tag_ != o.tag_) return false;
  return tag_ == DomainTag::atom ? atom_ == o.atom_ : num_ == o.num_;
}

std::string Value::to_string() const {
  return tag_ == DomainTag::atom ? atom_ : num_.to_string();
}

std::string tuple_to_string(const Tuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0) s += ", ";
    s += t[i].to_string();
  }
  return s + ")";
}

}  // namespace prefopt
