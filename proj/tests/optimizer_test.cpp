#include "prefopt/optimizer.hpp"

#include <doctest.h>

#include "prefopt/errors.hpp"
#include "support/testkit.hpp"

using namespace prefopt;
using testkit::book_schema;

namespace {

VarBindings book_env() { return {{"t1", book_schema()}, {"t2", book_schema()}}; }

PreferenceRelation make_pref(const std::string& name, const std::string& text) {
  return PreferenceRelation{name, book_schema(), parse_formula(text, book_env())};
}

std::unique_ptr<PlanNode> scan_node() {
  auto n = std::make_unique<PlanNode>();
  n->kind = PlanNode::Kind::scan;
  n->schema = book_schema();
  n->table = "Book";
  return n;
}

std::unique_ptr<PlanNode> winnow_node(PreferenceRelation pref, std::unique_ptr<PlanNode> input) {
  auto n = std::make_unique<PlanNode>();
  n->kind = PlanNode::Kind::winnow;
  n->schema = input->schema;
  n->pref = std::move(pref);
  n->input = std::move(input);
  return n;
}

std::unique_ptr<PlanNode> select_node(const std::string& cond, std::unique_ptr<PlanNode> input) {
  auto n = std::make_unique<PlanNode>();
  n->kind = PlanNode::Kind::select;
  n->schema = input->schema;
  VarBindings env{{"t", n->schema}};
  n->cond = parse_formula(cond, env);
  n->input = std::move(input);
  return n;
}

std::map<std::string, Relation> book_data(Relation r) {
  std::map<std::string, Relation> data;
  data.emplace("Book", std::move(r));
  return data;
}

}  // namespace

TEST_CASE("dependency propagation annotates each node") {
  PreferenceRelation c1 = testkit::lower_price_same_isbn();

  SUBCASE("scans carry the base dependencies") {
    Plan p(scan_node());
    std::vector<Cgd> base{testkit::isbn_determines_price()};
    propagate_deps(p, base);
    REQUIRE(p.root->deps.size() == 1);
    CHECK(p.root->deps[0].to_string() == base[0].to_string());
  }
  SUBCASE("selections add their condition as a single-tuple dependency") {
    Plan p(select_node("t.isbn = 'x'", scan_node()));
    propagate_deps(p, {});
    REQUIRE(p.root->deps.size() == 1);
    CHECK(p.root->deps[0].var_count() == 1);
    // the fixed-isbn condition makes the constant-isbn dependency hold
    CHECK(entails(p.root->deps, testkit::constant_isbn()).entailed);
  }
  SUBCASE("winnow adds no-domination and promotes candidates") {
    Plan p(winnow_node(c1, scan_node()));
    OptimizeOptions opts;
    opts.candidates.push_back(testkit::isbn_determines_price());
    propagate_deps(p, {}, opts);
    REQUIRE(p.root->deps.size() == 2);
    CHECK(p.root->deps[0].to_string() == redundancy_cgd(c1).to_string());
    CHECK(p.root->deps[1].to_string() == testkit::isbn_determines_price().to_string());
    CHECK(p.root->input->deps.empty());
  }
  SUBCASE("candidates that do not propagate are left out") {
    Plan p(winnow_node(c1, scan_node()));
    OptimizeOptions opts;
    opts.candidates.push_back(testkit::constant_isbn());
    propagate_deps(p, {}, opts);
    CHECK(p.root->deps.size() == 1);
  }
}

TEST_CASE("R1 removes a redundant winnow") {
  PreferenceRelation c1 = testkit::lower_price_same_isbn();
  Plan p(winnow_node(c1, scan_node()));
  std::vector<Cgd> base{testkit::isbn_determines_price()};

  auto [optimized, trace] = rewrite(p, base);
  CHECK(optimized.root->kind == PlanNode::Kind::scan);
  REQUIRE(trace.size() == 1);
  CHECK(trace[0].rule == "R1");
  CHECK(trace[0].before == "winnow[C1,auto](scan[Book])");
  CHECK(trace[0].after == "scan[Book]");

  SUBCASE("not fired without the dependency") {
    auto [unopt, no_trace] = rewrite(p, {});
    CHECK(no_trace.empty());
    CHECK(unopt.root->kind == PlanNode::Kind::winnow);
  }
  SUBCASE("rule can be disabled") {
    OptimizeOptions opts;
    opts.disabled_rules.insert("R1");
    auto [unopt, no_trace] = rewrite(p, base, opts);
    CHECK(no_trace.empty());
    CHECK(unopt.root->kind == PlanNode::Kind::winnow);
  }
}

TEST_CASE("R2 absorbs a contained outer winnow") {
  // lower price overall is contained in lower price within an isbn once
  // the isbn is constant
  PreferenceRelation low = make_pref("low", "t1.price < t2.price");
  PreferenceRelation c1 = testkit::lower_price_same_isbn();
  std::vector<Cgd> base{testkit::constant_isbn()};

  Plan p(winnow_node(low, winnow_node(c1, scan_node())));
  auto [optimized, trace] = rewrite(p, base);
  REQUIRE_FALSE(trace.empty());
  CHECK(trace[0].rule == "R2");
  CHECK(optimized.root->kind == PlanNode::Kind::winnow);
  CHECK(optimized.root->pref->name == "C1");
  CHECK(optimized.root->input->kind == PlanNode::Kind::scan);

  SUBCASE("identical winnows collapse even without dependencies") {
    Plan twice(winnow_node(c1, winnow_node(c1, scan_node())));
    auto [collapsed, t2] = rewrite(twice, {});
    REQUIRE_FALSE(t2.empty());
    CHECK(t2[0].rule == "R2");
    CHECK(collapsed.root->input->kind == PlanNode::Kind::scan);
  }
}

TEST_CASE("R3 collapses nested winnows over a weak-order inner preference") {
  // two layers below and above the price threshold: a weak order that does
  // not contain the grouped preference, so R2 stays out of the way
  PreferenceRelation thresh = make_pref("thresh", "t1.price < 10 AND t2.price >= 10");
  PreferenceRelation grouped =
      make_pref("grouped", "t1.vendor = t2.vendor AND t1.price < t2.price");

  Plan p(winnow_node(grouped, winnow_node(thresh, scan_node())));
  auto [optimized, trace] = rewrite(p, {});
  REQUIRE(trace.size() == 1);
  CHECK(trace[0].rule == "R3");
  REQUIRE(optimized.root->kind == PlanNode::Kind::winnow);
  CHECK(optimized.root->pref->name == "thresh |> grouped");
  CHECK(optimized.root->input->kind == PlanNode::Kind::scan);

  SUBCASE("kept nested under the small-intermediate hint") {
    OptimizeOptions opts;
    opts.small_intermediate = true;
    auto [kept, t] = rewrite(p, {}, opts);
    CHECK(t.empty());  // grouped is not a weak order above thresh, so keep the pair
    CHECK(kept.root->input->kind == PlanNode::Kind::winnow);
  }
  SUBCASE("small-intermediate hint still collapses two weak orders") {
    PreferenceRelation low2 = make_pref("low2", "t1.price > t2.price");
    Plan weak_pair(winnow_node(low2, winnow_node(thresh, scan_node())));
    OptimizeOptions opts;
    opts.small_intermediate = true;
    auto [collapsed, t] = rewrite(weak_pair, {}, opts);
    REQUIRE(t.size() == 1);
    CHECK(t[0].rule == "R3");
  }
  SUBCASE("no collapse when the inner preference is not a weak order") {
    PreferenceRelation low = make_pref("low", "t1.price < t2.price");
    Plan p2(winnow_node(low, winnow_node(grouped, scan_node())));
    auto [kept, t] = rewrite(p2, {});
    CHECK(t.empty());
  }
}

TEST_CASE("R4 pushes a selection below a winnow") {
  PreferenceRelation c1 = testkit::lower_price_same_isbn();

  Plan p(select_node("t.price < 15", winnow_node(c1, scan_node())));
  auto [optimized, trace] = rewrite(p, {});
  REQUIRE(trace.size() == 1);
  CHECK(trace[0].rule == "R4");
  CHECK(optimized.root->kind == PlanNode::Kind::winnow);
  CHECK(optimized.root->input->kind == PlanNode::Kind::select);
  CHECK(optimized.root->input->input->kind == PlanNode::Kind::scan);

  SUBCASE("a non-commuting selection stays put") {
    Plan p2(select_node("t.price > 15", winnow_node(c1, scan_node())));
    auto [kept, t] = rewrite(p2, {});
    CHECK(t.empty());
    CHECK(kept.root->kind == PlanNode::Kind::select);
  }
}

TEST_CASE("algorithm choice follows the weak-order certificate") {
  PreferenceRelation c1 = testkit::lower_price_same_isbn();

  SUBCASE("constant isbn below makes WWO safe") {
    Plan p(winnow_node(c1, select_node("t.isbn = '0679726691'", scan_node())));
    propagate_deps(p, {});
    choose_algorithm(p);
    CHECK(p.root->algo == AlgoHint::wwo);
  }
  SUBCASE("without the dependency BNL is chosen") {
    Plan p(winnow_node(c1, scan_node()));
    propagate_deps(p, {});
    choose_algorithm(p);
    CHECK(p.root->algo == AlgoHint::bnl);
  }
  SUBCASE("explicit hints are left alone") {
    Plan p(winnow_node(c1, scan_node()));
    p.root->algo = AlgoHint::naive;
    propagate_deps(p, {});
    choose_algorithm(p);
    CHECK(p.root->algo == AlgoHint::naive);
  }
}

TEST_CASE("the empty preference is dropped by R1, or runs as WWO when R1 is off") {
  Plan p(winnow_node(false_preference(book_schema()), scan_node()));
  auto [dropped, trace] = rewrite(p, {});
  REQUIRE(trace.size() == 1);
  CHECK(trace[0].rule == "R1");
  CHECK(dropped.root->kind == PlanNode::Kind::scan);

  OptimizeOptions opts;
  opts.disabled_rules = {"R1"};
  auto [kept, no_trace] = rewrite(p, {}, opts);
  CHECK(no_trace.empty());
  propagate_deps(kept, {}, opts);
  choose_algorithm(kept, opts);
  CHECK(kept.root->algo == AlgoHint::wwo);  // vacuously a weak order
}

TEST_CASE("node annotations hold on materialized outputs") {
  // every dependency annotated on a node must hold in that node's output
  // whenever the input satisfies the declared base dependencies
  testkit::Rng rng(97);
  PreferenceRelation c1 = testkit::lower_price_same_isbn();
  std::vector<Cgd> base{testkit::isbn_determines_price()};
  OptimizeOptions opts;
  opts.candidates.push_back(testkit::constant_isbn());

  for (int round = 0; round < 25; ++round) {
    Plan p(winnow_node(c1, select_node("t.isbn = 'i1'", scan_node())));
    propagate_deps(p, base, opts);
    Relation data = testkit::random_book_relation(rng, 30, true);
    std::map<std::string, Relation> tables;
    tables.emplace("Book", data);
    for (const PlanNode* n = p.root.get(); n != nullptr; n = n->input.get()) {
      Plan sub(n->clone());
      Relation out = execute(sub, tables);
      for (const Cgd& f : n->deps) {
        CHECK(check_on_instance(f, out));
      }
    }
  }
}

TEST_CASE("execution dispatches by hint and verifies on demand") {
  PreferenceRelation c1 = testkit::lower_price_same_isbn();
  Relation fig1 = testkit::figure1_book();

  SUBCASE("winnow over the example instance") {
    Plan p(winnow_node(c1, scan_node()));
    propagate_deps(p, {});
    choose_algorithm(p);
    Relation result = execute(p, book_data(fig1));
    CHECK(result.size() == 3);
  }
  SUBCASE("missing table") {
    Plan p(scan_node());
    CHECK_THROWS_AS(execute(p, {}), IoError);
  }
  SUBCASE("verify catches a wrong forced algorithm") {
    // reordered rows make the single-pass evaluator drop a survivor
    Relation reordered;
    reordered.schema = book_schema();
    reordered.rows = {fig1.rows[2], fig1.rows[3], fig1.rows[1]};
    Plan p(winnow_node(c1, scan_node()));
    ExecOptions opts;
    opts.algo_override = AlgoHint::wwo;
    opts.verify = true;
    CHECK_THROWS_AS(execute(p, book_data(reordered), opts), VerifyError);
    opts.algo_override = AlgoHint::bnl;
    CHECK_NOTHROW(execute(p, book_data(reordered), opts));
  }
}

TEST_CASE("rewrites preserve results on instances satisfying the base dependencies") {
  testkit::Rng rng(89);
  PreferenceRelation c1 = testkit::lower_price_same_isbn();
  PreferenceRelation low = make_pref("low", "t1.price < t2.price");
  PreferenceRelation grouped =
      make_pref("grouped", "t1.vendor = t2.vendor AND t1.price < t2.price");

  int fired[4] = {0, 0, 0, 0};
  for (int round = 0; round < 60; ++round) {
    std::vector<Cgd> base;
    Plan p;
    Relation data;
    switch (round % 4) {
      case 0:  // R1
        base.push_back(testkit::isbn_determines_price());
        p = Plan(winnow_node(c1, scan_node()));
        data = testkit::random_book_relation(rng, 40, true);
        break;
      case 1:  // R2
        base.push_back(testkit::constant_isbn());
        p = Plan(winnow_node(low, winnow_node(c1, scan_node())));
        data = testkit::random_book_relation(rng, 40, rng.flip(), true);
        break;
      case 2: {  // R3
        PreferenceRelation thresh = make_pref("thresh", "t1.price < 10 AND t2.price >= 10");
        p = Plan(winnow_node(grouped, winnow_node(thresh, scan_node())));
        data = testkit::random_book_relation(rng, 40, false);
        break;
      }
      default:  // R4
        p = Plan(select_node("t.price < 15", winnow_node(c1, scan_node())));
        data = testkit::random_book_relation(rng, 40, false);
        break;
    }
    auto [optimized, trace] = rewrite(p, base);
    REQUIRE_FALSE(trace.empty());
    ++fired[round % 4];
    propagate_deps(optimized, base);
    choose_algorithm(optimized);

    ExecOptions naive_opts;
    naive_opts.algo_override = AlgoHint::naive;
    Relation expected = execute(p, book_data(data), naive_opts);
    Relation got = execute(optimized, book_data(data));
    CHECK(same_multiset(got, expected));
  }
  for (int i = 0; i < 4; ++i) CHECK(fired[i] == 15);
}

TEST_CASE("rewriting is deterministic and steps chain") {
  PreferenceRelation c1 = testkit::lower_price_same_isbn();
  PreferenceRelation low = make_pref("low", "t1.price < t2.price");
  Plan p(select_node("t.price < 15", winnow_node(low, winnow_node(c1, scan_node()))));
  std::vector<Cgd> base{testkit::isbn_determines_price()};

  auto [first, trace1] = rewrite(p, base);
  auto [second, trace2] = rewrite(p, base);
  REQUIRE(trace1.size() == trace2.size());
  for (std::size_t i = 0; i < trace1.size(); ++i) {
    CHECK(trace1[i].rule == trace2[i].rule);
    CHECK(trace1[i].before == trace2[i].before);
    CHECK(trace1[i].after == trace2[i].after);
  }
  CHECK(first.to_string() == second.to_string());
  for (std::size_t i = 1; i < trace1.size(); ++i) {
    CHECK(trace1[i].before == trace1[i - 1].after);
  }
  REQUIRE_FALSE(trace1.empty());
  CHECK(trace1.back().after == first.to_string());
}
