#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <string>

#include "selfnest/approx.hpp"
#include "selfnest/oracle.hpp"
#include "selfnest/random_tree.hpp"

using namespace selfnest;

namespace {

ScalarProfile scalar(std::vector<std::vector<std::int64_t>> rows) { return ScalarProfile::from_rows(std::move(rows)); }

// 14 nodes. The two height-2 subtrees disagree in both columns, but only one
// of them still has leaf spares, so whether deficit propagation keeps running
// after a component hits zero is visible in the result size.
const char* kGuardProbe = "(((())()()()()())((())(())))";

// 14 nodes. Shortening the second height-3 subtree's extra height-1 child
// hinges on which finalized row the carry test reads: the shortened height's
// row (a chain) or the row just below the current one (not a chain).
const char* kCarryProbe = "((((())())())(((())())(())))";

}  // namespace

TEST_CASE("rational reduces and compares exactly") {
  CHECK(Rational(24, 30) == Rational(4, 5));
  CHECK(Rational(24, 30).to_string() == "4/5");
  CHECK(Rational(23, 30).to_string() == "23/30");
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(3, -6).to_string() == "-1/2");
  CHECK(Rational(0, 7).to_string() == "0/1");
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-5, 2) < Rational(0, 1));
  CHECK(Rational(7, 7) <= Rational(1, 1));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("insertion transform on the 6-node example") {
  Tree t = parse_tree("((())(()()))");
  ApproxResult r = nest(t);
  CHECK(r.profile == scalar({{2}, {0, 2}}));
  CHECK(serialize_canonical(r.tree) == "((()())(()()))");
  CHECK(r.tree.size() == 7);
  CHECK(r.distance == 1);
  CHECK(r.delta == Rational(5, 6));
}

TEST_CASE("insertion transform on the 9-node example drives an entry negative") {
  Tree t = parse_tree("(((()))((())(())))");
  ApproxResult r = nest(t);
  CHECK(r.profile == scalar({{1}, {0, 2}, {0, 0, 2}}));
  CHECK(r.tree.size() == 11);
  CHECK(serialize_canonical(r.tree) == "(((())(()))((())(())))");
  CHECK(r.distance == 2);
}

TEST_CASE("deletion transform on the 6-node example") {
  Tree t = parse_tree("((())(()()))");
  ApproxResult r = nest_embedded(t);
  CHECK(r.profile == scalar({{1}, {0, 2}}));
  CHECK(serialize_canonical(r.tree) == "((())(()))");
  CHECK(r.tree.size() == 5);
  CHECK(r.distance == 1);
  CHECK(r.delta == Rational(5, 6));
}

TEST_CASE("deletion transform on the 9-node example carries through the chain row") {
  Tree t = parse_tree("(((()))((())(())))");
  ApproxResult r = nest_embedded(t);
  CHECK(r.profile == scalar({{1}, {0, 1}, {0, 0, 2}}));
  CHECK(serialize_canonical(r.tree) == "(((()))((())))");
  CHECK(r.tree.size() == 7);
  CHECK(r.distance == 2);
}

TEST_CASE("self-nested trees are fixed points with delta one") {
  for (const char* form : {"()", "(())", "((()())(()()))", "(((())())((())())((())()))"}) {
    Tree t = parse_tree(form);
    ApproxResult up = nest(t);
    ApproxResult down = nest_embedded(t);
    CHECK(up.distance == 0);
    CHECK(down.distance == 0);
    CHECK(up.delta == Rational(1, 1));
    CHECK(down.delta == Rational(1, 1));
    CHECK(serialize_canonical(up.tree) == serialize_canonical(t));
    CHECK(serialize_canonical(down.tree) == serialize_canonical(t));
  }
}

TEST_CASE("deficit propagation keeps running after a component reaches zero") {
  Tree t = parse_tree(kGuardProbe);
  REQUIRE(t.size() == 14);
  HeightProfile p = compute_profile(t);

  ScalarizedResult shipped = nest_scalar(p);
  CHECK(shipped.profile == scalar({{1}, {4, 2}, {0, 0, 2}}));
  CHECK(sn_node_count(shipped.profile) == 19);

  ScalarizedResult literal = nest_scalar(p, NestGuard::AllNonzero);
  CHECK(literal.profile == scalar({{1}, {5, 2}, {0, 0, 2}}));
  CHECK(sn_node_count(literal.profile) == 21);

  // The exhaustive search certifies the shipped reading.
  Tree truth = brute_nest(t, sn_node_count(shipped.profile));
  CHECK(truth.size() == 19);
  CHECK(serialize_canonical(truth) == serialize_canonical(sn_tree_from_profile(shipped.profile)));
}

TEST_CASE("the carry test reads the shortened height's row") {
  Tree t = parse_tree(kCarryProbe);
  REQUIRE(t.size() == 14);
  HeightProfile p = compute_profile(t);

  ScalarizedResult shipped = nest_embedded_scalar(p);
  CHECK(shipped.profile == scalar({{1}, {1, 1}, {1, 0, 1}, {0, 0, 0, 2}}));
  CHECK(sn_node_count(shipped.profile) == 13);

  ScalarizedResult alternative = nest_embedded_scalar(p, CarryRow::RowBelowCurrent);
  CHECK(sn_node_count(alternative.profile) == 11);

  // The deletion closure certifies the shipped reading.
  Tree truth = brute_nest_embedded(t);
  CHECK(truth.size() == 13);
  CHECK(serialize_canonical(truth) == serialize_canonical(sn_tree_from_profile(shipped.profile)));
  CHECK(serialize_canonical(truth) == "((((())())())(((())())()))");
}

TEST_CASE("both transforms are idempotent on the worked examples") {
  for (const char* form : {"((())(()()))", "(((()))((())(())))", kGuardProbe, kCarryProbe}) {
    Tree t = parse_tree(form);
    ApproxResult up = nest(t);
    CHECK(nest(up.tree).distance == 0);
    ApproxResult down = nest_embedded(t);
    CHECK(nest_embedded(down.tree).distance == 0);
  }
}

TEST_CASE("metric formulas on published node counts") {
  CHECK(delta_nest_from_counts(30, 37) == Rational(23, 30));
  CHECK(delta_nest_embedded_from_counts(30, 24) == Rational(24, 30));
  CHECK(delta_nest_embedded_from_counts(30, 24) == Rational(4, 5));
  CHECK(delta_nest_from_counts(30, 37).to_string() == "23/30");
  CHECK(delta_nest_embedded_from_counts(30, 24).to_string() == "4/5");
  CHECK_THROWS_AS(delta_nest_from_counts(0, 1), std::invalid_argument);
}

TEST_CASE("delta helpers agree with the full results") {
  Tree t = parse_tree("((())(()()))");
  CHECK(delta_nest(t) == nest(t).delta);
  CHECK(delta_nest_embedded(t) == nest_embedded(t).delta);
}

TEST_CASE("random trees respect the sandwich and keep their height") {
  for (std::uint64_t k = 0; k < 200; ++k) {
    std::uint64_t n = 2 + splitmix64_mix(k * 977 + 5) % 59;
    Tree t = random_tree({n, derive_seed(4242, k)});
    HeightProfile p = compute_profile(t);
    std::uint64_t n_up = sn_node_count(nest_scalar(p).profile);
    std::uint64_t n_down = sn_node_count(nest_embedded_scalar(p).profile);
    REQUIRE(n_down <= t.size());
    REQUIRE(t.size() <= n_up);
    ApproxResult down = nest_embedded(t);
    REQUIRE(down.tree.height() == t.height());
    REQUIRE(is_self_nested(compute_profile(down.tree)));
    if (n_up <= 100000) {
      ApproxResult up = nest(t);
      REQUIRE(up.tree.height() == t.height());
      REQUIRE(is_self_nested(compute_profile(up.tree)));
      REQUIRE(nest(up.tree).distance == 0);
      REQUIRE(nest_embedded(down.tree).distance == 0);
    }
  }
}

TEST_CASE("internal probes throw when the env switch is set") {
  setenv("SELFNEST_DEBUG_ASSERT", "1", 1);
  CHECK_NOTHROW(detail::probe(true, "fine"));
  CHECK_THROWS_AS(detail::probe(false, "boom"), internal_assertion_error);
}
