#include "prefopt/catalog.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "prefopt/errors.hpp"

namespace prefopt {

namespace {

using Json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '\'') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

[[noreturn]] void line_error(const std::string& origin, std::size_t line_no,
                             const std::string& msg) {
  throw ParseError(origin + ": " + msg, line_no, 1);
}

}  // namespace

const SchemaRef& Catalog::schema(const std::string& name) const {
  auto it = schemas.find(name);
  if (it == schemas.end()) throw IoError("unknown schema " + name);
  return it->second;
}

const PreferenceRelation& Catalog::preference(const std::string& name) const {
  auto it = preferences.find(name);
  if (it == preferences.end()) throw IoError("unknown preference " + name);
  return it->second;
}

void parse_schema_text(Catalog& cat, const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    // SCHEMA Name(attr: D, attr: Q, ...)
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (upper(kw) != "SCHEMA") line_error(origin, line_no, "expected SCHEMA");
    std::string rest;
    std::getline(ls, rest);
    rest = trim(rest);
    std::size_t open = rest.find('(');
    if (open == std::string::npos || rest.back() != ')') {
      line_error(origin, line_no, "expected SCHEMA Name(attr: D, ...)");
    }
    std::string name = trim(rest.substr(0, open));
    std::string attr_list = rest.substr(open + 1, rest.size() - open - 2);
    std::vector<Attribute> attrs;
    for (const std::string& item : split(attr_list, ',')) {
      std::vector<std::string> parts = split(item, ':');
      if (parts.size() != 2 || parts[0].empty()) {
        line_error(origin, line_no, "bad attribute declaration '" + item + "'");
      }
      std::string tag = upper(parts[1]);
      if (tag != "D" && tag != "Q") {
        line_error(origin, line_no, "attribute domain must be D or Q, got '" + parts[1] + "'");
      }
      attrs.push_back({parts[0], tag == "D" ? DomainTag::atom : DomainTag::number});
    }
    if (cat.schemas.count(name)) line_error(origin, line_no, "duplicate schema " + name);
    cat.schemas.emplace(name, std::make_shared<Schema>(name, std::move(attrs)));
  }
}

void parse_preference_text(Catalog& cat, const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    // PREF name ON schema: formula
    std::istringstream ls(line);
    std::string kw, name, on, schema_name;
    ls >> kw >> name >> on;
    if (upper(kw) != "PREF" || upper(on) != "ON") {
      line_error(origin, line_no, "expected PREF <name> ON <schema>: <formula>");
    }
    std::string rest;
    std::getline(ls, rest);
    std::size_t colon = rest.find(':');
    if (colon == std::string::npos) line_error(origin, line_no, "missing ':'");
    schema_name = trim(rest.substr(0, colon));
    std::string formula_text = trim(rest.substr(colon + 1));
    const SchemaRef& schema = cat.schema(schema_name);
    VarBindings env{{"t1", schema}, {"t2", schema}};
    Formula f = parse_formula(formula_text, env);
    if (cat.preferences.count(name)) line_error(origin, line_no, "duplicate preference " + name);
    cat.preferences.emplace(name, PreferenceRelation{name, schema, std::move(f)});
    cat.preference_order.push_back(name);
  }
}

Cgd parse_dependency_line(const Catalog& cat, const std::string& line) {
  std::istringstream ls(line);
  std::string kw;
  ls >> kw;
  std::string rest;
  std::getline(ls, rest);
  rest = trim(rest);
  if (upper(kw) == "FD") {
    // <schema>: A,B -> C  (lhs may be empty)
    std::size_t colon = rest.find(':');
    if (colon == std::string::npos) throw Error("FD line missing ':'");
    std::string schema_name = trim(rest.substr(0, colon));
    std::string body = trim(rest.substr(colon + 1));
    std::size_t arrow = body.find("->");
    if (arrow == std::string::npos) throw Error("FD line missing '->'");
    std::string lhs_text = trim(body.substr(0, arrow));
    std::string rhs_text = trim(body.substr(arrow + 2));
    Fd fd;
    fd.schema = cat.schema(schema_name);
    if (!lhs_text.empty()) fd.lhs = split(lhs_text, ',');
    if (!rhs_text.empty()) fd.rhs = split(rhs_text, ',');
    return fd_to_cgd(fd);
  }
  if (upper(kw) == "CGD") {
    // <schema>[t1,t2,...]: <formula> => <formula>
    std::size_t open = rest.find('[');
    std::size_t close = rest.find(']');
    if (open == std::string::npos || close == std::string::npos || close < open) {
      throw Error("CGD line missing [vars]");
    }
    std::string schema_name = trim(rest.substr(0, open));
    std::vector<std::string> vars = split(rest.substr(open + 1, close - open - 1), ',');
    std::size_t colon = rest.find(':', close);
    if (colon == std::string::npos) throw Error("CGD line missing ':'");
    std::string formulas = rest.substr(colon + 1);
    std::size_t arrow = formulas.find("=>");
    if (arrow == std::string::npos) throw Error("CGD line missing '=>'");
    const SchemaRef& schema = cat.schema(schema_name);
    if (vars.empty() || (vars.size() == 1 && vars[0].empty())) {
      throw Error("CGD needs at least one tuple variable");
    }
    VarBindings env;
    for (const std::string& v : vars) env.emplace(v, schema);
    Formula body = parse_formula(trim(formulas.substr(0, arrow)), env);
    Formula head = parse_formula(trim(formulas.substr(arrow + 2)), env);
    return Cgd{schema, vars, std::move(body), std::move(head), trim(line)};
  }
  throw Error("expected FD or CGD, got '" + kw + "'");
}

std::vector<Cgd> parse_dependency_text(const Catalog& cat, const std::string& text,
                                       const std::string& origin) {
  std::vector<Cgd> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    try {
      out.push_back(parse_dependency_line(cat, line));
    } catch (const Error& e) {
      line_error(origin, line_no, e.what());
    }
  }
  return out;
}

void load_schema_file(Catalog& cat, const std::string& path) {
  parse_schema_text(cat, read_file(path), path);
}

void load_preference_file(Catalog& cat, const std::string& path) {
  parse_preference_text(cat, read_file(path), path);
}

std::vector<Cgd> load_dependency_file(const Catalog& cat, const std::string& path) {
  return parse_dependency_text(cat, read_file(path), path);
}

namespace {

std::unique_ptr<PlanNode> plan_node_from_json(const Catalog& cat, const Json& j) {
  if (!j.is_object() || !j.contains("op")) throw Error("plan node must be {\"op\": ...}");
  std::string op = j.at("op").get<std::string>();
  auto node = std::make_unique<PlanNode>();
  if (op == "scan") {
    node->kind = PlanNode::Kind::scan;
    node->table = j.at("table").get<std::string>();
    node->schema = cat.schema(node->table);
    return node;
  }
  node->input = plan_node_from_json(cat, j.at("input"));
  node->schema = node->input->schema;
  if (op == "select") {
    node->kind = PlanNode::Kind::select;
    VarBindings env{{"t", node->schema}};
    node->cond = parse_formula(j.at("cond").get<std::string>(), env);
    return node;
  }
  if (op == "winnow") {
    node->kind = PlanNode::Kind::winnow;
    std::string name = j.at("pref").get<std::string>();
    if (j.contains("formula")) {
      VarBindings env{{"t1", node->schema}, {"t2", node->schema}};
      Formula f = parse_formula(j.at("formula").get<std::string>(), env);
      node->pref = PreferenceRelation{name, node->schema, std::move(f)};
    } else {
      const PreferenceRelation& p = cat.preference(name);
      if (!same_schema(p.schema, node->schema)) {
        throw TypeError("preference " + name + " is over schema " + p.schema->name() +
                        ", plan input is " + node->schema->name());
      }
      node->pref = p;
    }
    node->algo = j.contains("algo") ? algo_from_string(j.at("algo").get<std::string>())
                                    : AlgoHint::automatic;
    return node;
  }
  throw Error("unknown plan op '" + op + "'");
}

Json plan_node_to_json(const PlanNode& node, bool include_deps) {
  Json j;
  switch (node.kind) {
    case PlanNode::Kind::scan:
      j["op"] = "scan";
      j["table"] = node.table;
      break;
    case PlanNode::Kind::select:
      j["op"] = "select";
      j["cond"] = node.cond->to_string();
      break;
    case PlanNode::Kind::winnow:
      j["op"] = "winnow";
      j["pref"] = node.pref->name;
      j["formula"] = node.pref->formula.to_string();
      j["algo"] = to_string(node.algo);
      break;
  }
  if (include_deps) {
    Json deps = Json::array();
    for (const Cgd& f : node.deps) deps.push_back(f.to_string());
    j["deps"] = std::move(deps);
  }
  if (node.input) j["input"] = plan_node_to_json(*node.input, include_deps);
  return j;
}

}  // namespace

Plan parse_plan_json(const Catalog& cat, const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad plan JSON: ") + e.what(), 1, 1);
  }
  try {
    return Plan(plan_node_from_json(cat, j));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad plan JSON: ") + e.what(), 1, 1);
  }
}

Plan load_plan_file(const Catalog& cat, const std::string& path) {
  return parse_plan_json(cat, read_file(path));
}

std::string plan_to_json(const Plan& p, bool include_deps) {
  if (!p.root) throw PreconditionError("empty plan");
  return plan_node_to_json(*p.root, include_deps).dump(2);
}

std::string trace_to_json(const RewriteTrace& trace) {
  Json arr = Json::array();
  for (const RewriteStep& step : trace) {
    Json j;
    j["rule"] = step.rule;
    j["depth"] = step.depth;
    j["obligations"] = step.obligations;
    j["before"] = step.before;
    j["after"] = step.after;
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

}  // namespace prefopt
