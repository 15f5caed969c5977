#include <algorithm>
#include <cmath>
#include <set>

#include "balcut/errors.hpp"
#include "balcut/generators.hpp"
#include "balcut/oracle.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace balcut;
using testutil::make;

TEST_CASE("enumerate_cuts sizes and uniqueness") {
  CHECK(enumerate_cuts(3).size() == 3);
  CHECK(enumerate_cuts(4).size() == 7);
  CHECK(enumerate_cuts(1).size() == 0);
  CHECK(enumerate_cuts(1).begin() == enumerate_cuts(1).end());
  std::set<std::vector<Vertex>> seen;
  for (const CutSet& s : enumerate_cuts(5)) {
    CHECK(s.is_proper());
    auto m = s.members();
    auto c = s.complement().members();
    CHECK(seen.insert(std::min(m, c)).second);
  }
  CHECK(seen.size() == 15);
  CHECK_THROWS_AS(enumerate_cuts(27), BudgetError);
}

TEST_CASE("lexicographic order on vertex sets") {
  CHECK(lex_less(0b0011, 0b0101));  // {0,1} < {0,2}
  CHECK(lex_less(0b0001, 0b0011));  // {0} < {0,1}
  CHECK_FALSE(lex_less(0b0011, 0b0001));
  CHECK(lex_less(0b0010, 0b0100));  // {1} < {2}
  CHECK(lex_less(0b0110, 0b0100));  // {1,2} < {2}
}

TEST_CASE("exact_graph_balance") {
  CHECK(exact_graph_balance(testutil::complete_bidirected(5)) == 1.0);
  CHECK(exact_graph_balance(make(2, {{0, 1, 2}, {1, 0, 1}})) == 2.0);
  CHECK(std::isinf(exact_graph_balance(make(3, {{0, 1, 1}, {1, 2, 1}}))));
  // Fractional weights take the direct-evaluation path.
  CHECK(exact_graph_balance(make(3, {{0, 1, 0.5}, {1, 0, 1.5}, {1, 2, 1}, {2, 1, 1}})) ==
        doctest::Approx(3.0));
  SUBCASE("reversal invariance and agreement with per-cut evaluation") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const DiGraph g = gen_skewed(8, 12, 3.0, seed);
      const double b = exact_graph_balance(g);
      CHECK(b == exact_graph_balance(g.reversed()));
      double direct = 1.0;
      for (const CutSet& s : enumerate_cuts(8)) direct = std::max(direct, cut_balance(g, s));
      CHECK(b == direct);
      CHECK(b <= 3.0);
    }
  }
}

TEST_CASE("exact_conductance") {
  const auto k4 = exact_conductance(testutil::complete_bidirected(4));
  // Brute force by hand: S of size 1 gives 6/6, size 2 gives 8/12.
  CHECK(k4.value == doctest::Approx(2.0 / 3.0));
  CHECK(k4.value >= 1.0 / 3.0);
  const DiGraph two_triangles = testutil::bidirected(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {2, 3}});
  const auto tt = exact_conductance(two_triangles);
  CHECK(tt.cut.members() == std::vector<Vertex>{0, 1, 2});
  CHECK(tt.value == doctest::Approx(2.0 / 14.0));
  CHECK(exact_conductance(make(2, {{0, 1, 1}})).value == 1.0);
  CHECK_THROWS_AS(exact_conductance(DiGraph(3)), ArgumentError);
}

TEST_CASE("find_sparse_cut_exact") {
  const DiGraph star = testutil::bidirected(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  const auto leaf = find_sparse_cut_exact(star, 2.0);
  REQUIRE(leaf.has_value());
  // Every cut of the star has ratio 2; the tie goes to the lexicographically least side.
  CHECK(leaf->members() == std::vector<Vertex>{0, 1, 2});
  const auto pendant = find_sparse_cut_exact(testutil::bidirected(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}, {2, 4}}), 1.0);
  CHECK_FALSE(pendant.has_value());

  CHECK_FALSE(find_sparse_cut_exact(testutil::complete_bidirected(6), 2.0).has_value());

  const DiGraph path = testutil::bidirected(3, {{0, 1}, {1, 2}});
  const auto end = find_sparse_cut_exact(path, 2.0);
  REQUIRE(end.has_value());
  CHECK(end->members() == std::vector<Vertex>{0});

  SUBCASE("returned cut satisfies the density test when recounted") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const DiGraph g = gen_random_digraph(9, 25, 1, seed);
      const double lambda = 1.0 + static_cast<double>(seed % 4);
      const auto s = find_sparse_cut_exact(g, lambda);
      if (!s) continue;
      std::size_t crossing = 0;
      for (const Edge& e : g.edges()) crossing += s->contains(e.tail) != s->contains(e.head) ? 1 : 0;
      const std::size_t small = std::min(s->size(), 9 - s->size());
      CHECK(static_cast<double>(crossing) <= lambda * static_cast<double>(small));
    }
  }
}

TEST_CASE("brute_strength") {
  const DiGraph tri = testutil::bidirected(3, {{0, 1}, {1, 2}, {2, 0}});
  // Bidirected unit triangle: each undirected pair carries weight 2.
  CHECK(brute_strength(tri, 0) == 4.0);
  const DiGraph tri1 = make(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
  for (EdgeId e = 0; e < 3; ++e) CHECK(brute_strength(tri1, e) == 2.0);
  const DiGraph tree = make(5, {{0, 1, 1}, {1, 2, 1}, {1, 3, 1}, {3, 4, 1}});
  for (EdgeId e = 0; e < 4; ++e) CHECK(brute_strength(tree, e) == 1.0);
  const DiGraph k4 = make(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}});
  for (EdgeId e = 0; e < 6; ++e) CHECK(brute_strength(k4, e) == 3.0);
  CHECK_THROWS_AS(brute_strength(make(11, {{0, 1, 1}}), 0), BudgetError);

  SUBCASE("monotone under edge addition") {
    DiGraph g = gen_random_digraph(7, 10, 3, 5);
    auto before = brute_strengths(g);
    g.add_edge(0, 6, 2.0);
    auto after = brute_strengths(g);
    for (std::size_t e = 0; e < before.size(); ++e) CHECK(after[e] >= before[e]);
  }
}

TEST_CASE("exact_max_flow") {
  const DiGraph path = make(3, {{0, 1, 3}, {1, 2, 2}});
  const auto r = exact_max_flow(path, 0, 2);
  CHECK(r.value == 2.0);
  CHECK(r.flow == std::vector<double>{2.0, 2.0});
  CHECK(exact_max_flow(make(4, {{0, 1, 1}, {2, 3, 1}}), 0, 3).value == 0.0);
  CHECK_THROWS_AS(exact_max_flow(path, 1, 1), ArgumentError);
  SUBCASE("random instances match the enumerated min cut") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const DiGraph g = gen_random_digraph(12, 40, 6, seed);
      const auto f = exact_max_flow(g, 0, 11);
      CHECK(f.value == doctest::Approx(brute_min_st_cut(g, 0, 11)));
      // Conservation and capacity.
      std::vector<double> net(12, 0.0);
      for (EdgeId e = 0; e < g.num_edges(); ++e) {
        CHECK(f.flow[e] >= -1e-9);
        CHECK(f.flow[e] <= g.edge(e).weight + 1e-9);
        net[g.edge(e).tail] -= f.flow[e];
        net[g.edge(e).head] += f.flow[e];
      }
      for (Vertex v = 1; v < 11; ++v) CHECK(net[v] == doctest::Approx(0.0));
      CHECK(net[11] == doctest::Approx(f.value));
    }
  }
}

TEST_CASE("verify_for_all") {
  const DiGraph g = gen_eulerian(8, 30, 2);
  CHECK(verify_for_all(g, g, 0.01).ok);
  const double eps = 0.1;
  DiGraph scaled(8);
  for (const Edge& e : g.edges()) scaled.add_edge(e.tail, e.head, e.weight * (1 + 2 * eps));
  const ForAllReport rep = verify_for_all(g, scaled, eps);
  CHECK_FALSE(rep.ok);
  CHECK(rep.worst_ratio == doctest::Approx(1 + 2 * eps));
  CHECK(rep.cuts_checked == 2 * 127);
  SUBCASE("per-cut tolerance") {
    const ForAllReport loose = verify_for_all(g, scaled, [](double) { return 0.25; });
    CHECK(loose.ok);
  }
  SUBCASE("missing crossing edge is an infinite violation") {
    const DiGraph h(8);
    const ForAllReport r = verify_for_all(g, h, 0.5);
    CHECK_FALSE(r.ok);
    CHECK(r.worst_ratio == 0.0);
  }
}
