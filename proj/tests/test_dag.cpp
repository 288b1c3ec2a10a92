#include <catch2/catch_amalgamated.hpp>

#include "selfnest/dag.hpp"
#include "selfnest/height_profile.hpp"
#include "selfnest/tree.hpp"

using namespace selfnest;

TEST_CASE("reduce groups isomorphic subtrees") {
  DagReduction d = reduce(parse_tree("(()(()()))"));
  REQUIRE(d.class_count() == 3);
  CHECK(d.at(0).height == 0);
  CHECK(d.at(1).height == 1);
  CHECK(d.at(2).height == 2);
  CHECK(d.root_class() == 2);
  CHECK(d.at(1).edges == std::vector<std::pair<std::size_t, std::uint64_t>>{{0, 2}});
  CHECK(d.at(2).edges == std::vector<std::pair<std::size_t, std::uint64_t>>{{0, 1}, {1, 1}});
}

TEST_CASE("reduce of a single node") {
  DagReduction d = reduce(parse_tree("()"));
  CHECK(d.class_count() == 1);
  CHECK(d.at(0).edges.empty());
  CHECK(is_linear(d));
  CHECK(node_count(d) == 1);
}

TEST_CASE("is_linear detects one class per height") {
  CHECK(is_linear(reduce(parse_tree("((())(()))"))));
  CHECK_FALSE(is_linear(reduce(parse_tree("(((()))((()())))"))));
  CHECK_FALSE(is_linear(reduce(parse_tree("((())(()()))"))));
  CHECK(is_linear(reduce(parse_tree("(((())())((())())((())()))"))));
}

TEST_CASE("node_count inverts the reduction") {
  for (const char* s : {"(()(()()))", "((())(()()))", "(((()))((())(())))", "()", "((((()))))"}) {
    Tree t = parse_tree(s);
    CHECK(node_count(reduce(t)) == t.size());
  }
}

TEST_CASE("node_count on a linear reduction with multiplicities two") {
  ScalarProfile s = ScalarProfile::from_rows({{2}, {0, 2}, {0, 0, 2}});
  DagReduction d = reduce(sn_tree_from_profile(s));
  CHECK(is_linear(d));
  CHECK(node_count(d) == 15);
}

TEST_CASE("expand rebuilds a tree isomorphic to the input") {
  for (const char* s : {"(()(()()))", "((())(()()))", "(((()))((())(())))", "(((())())((())())((())()))"}) {
    Tree t = parse_tree(s);
    Tree back = expand(reduce(t));
    CHECK(is_isomorphic(t, back));
  }
}

TEST_CASE("class count equals height+1 exactly for constant profiles") {
  for (const char* s : {"()", "(())", "(()())", "((())(()()))", "(((())())((())())((())()))", "(()(()()))"}) {
    Tree t = parse_tree(s);
    bool linear = is_linear(reduce(t));
    bool sn = is_self_nested(compute_profile(t));
    CHECK(linear == sn);
    CHECK(linear == (reduce(t).class_count() == static_cast<std::size_t>(t.height()) + 1));
  }
}

TEST_CASE("dot export is stable") {
  CHECK(to_dot(reduce(parse_tree("(()(()()))"))) ==
        "digraph dag {\n"
        "  c0 [label=\"h=0,n=1\"];\n"
        "  c1 [label=\"h=1,n=3\"];\n"
        "  c2 [label=\"h=2,n=5\"];\n"
        "  c1 -> c0 [label=\"2\"];\n"
        "  c2 -> c0 [label=\"1\"];\n"
        "  c2 -> c1 [label=\"1\"];\n"
        "}\n");
}
