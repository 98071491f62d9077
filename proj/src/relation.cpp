#include "prefopt/relation.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "prefopt/errors.hpp"

namespace prefopt {

namespace {

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool needs_quoting(const std::string& cell) {
  return cell.find(',') != std::string::npos || cell.find('"') != std::string::npos ||
         cell.find('\n') != std::string::npos;
}

std::string quote_cell(const std::string& cell) {
  if (!needs_quoting(cell)) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Relation parse_csv(const SchemaRef& schema, std::istream& in, const std::string& origin) {
  Relation r;
  r.schema = schema;
  r.provenance = origin;
  std::string line;
  if (!std::getline(in, line)) throw IoError(origin + ": missing header row");
  std::vector<std::string> header = split_cells(line);
  if (header.size() != schema->arity()) {
    throw IoError(origin + ": header has " + std::to_string(header.size()) +
                  " columns, schema " + schema->name() + " has " +
                  std::to_string(schema->arity()));
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (trim(header[i]) != schema->attributes()[i].name) {
      throw IoError(origin + ": header column " + std::to_string(i + 1) + " is '" +
                    trim(header[i]) + "', expected '" + schema->attributes()[i].name + "'");
    }
  }
  std::size_t row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
    std::vector<std::string> cells = split_cells(line);
    if (cells.size() != schema->arity()) {
      throw IoError(origin + ": row " + std::to_string(row_no) + " has " +
                    std::to_string(cells.size()) + " cells, expected " +
                    std::to_string(schema->arity()));
    }
    Tuple tuple;
    tuple.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      std::string cell = trim(cells[i]);
      if (schema->attributes()[i].tag == DomainTag::atom) {
        tuple.push_back(Value::atom(cell));
      } else {
        try {
          tuple.push_back(Value::number(Rational::parse(cell)));
        } catch (const std::exception&) {
          throw IoError(origin + ": row " + std::to_string(row_no) + ", column " +
                        std::to_string(i + 1) + ": bad rational '" + cell + "'");
        }
      }
    }
    r.rows.push_back(std::move(tuple));
  }
  return r;
}

Relation load_csv(const SchemaRef& schema, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse_csv(schema, in, path);
}

void write_csv(const Relation& r, std::ostream& out) {
  const auto& attrs = r.schema->attributes();
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    if (i > 0) out << ",";
    out << attrs[i].name;
  }
  out << "\n";
  for (const Tuple& t : r.rows) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i > 0) out << ",";
      out << quote_cell(t[i].to_string());
    }
    out << "\n";
  }
}

std::string to_csv(const Relation& r) {
  std::ostringstream os;
  write_csv(r, os);
  return os.str();
}

bool same_multiset(const Relation& a, const Relation& b) {
  if (a.size() != b.size()) return false;
  auto key = [](const Tuple& t) { return tuple_to_string(t); };
  std::map<std::string, int> counts;
  for (const Tuple& t : a.rows) ++counts[key(t)];
  for (const Tuple& t : b.rows) {
    if (--counts[key(t)] < 0) return false;
  }
  return true;
}

}  // namespace prefopt
