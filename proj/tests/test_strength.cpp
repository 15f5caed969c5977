#include <algorithm>
#include <random>

#include "balcut/errors.hpp"
#include "balcut/generators.hpp"
#include "balcut/oracle.hpp"
#include "balcut/strength.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace balcut;
using testutil::make;

TEST_CASE("global_min_cut") {
  const DiGraph tri = make(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
  CHECK(global_min_cut(tri).value == 2.0);
  const DiGraph path = make(3, {{0, 1, 1}, {1, 2, 1}});
  CHECK(global_min_cut(path).value == 1.0);
  const MinCutResult split = global_min_cut(make(4, {{0, 1, 1}, {2, 3, 1}}));
  CHECK(split.value == 0.0);
  CHECK(split.side.is_proper());
  CHECK(cut_weight(make(4, {{0, 1, 1}, {2, 3, 1}}), split.side, Direction::kOut) == 0.0);
  SUBCASE("random graphs match enumeration") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const DiGraph g = gen_random_digraph(10, 25, 4, seed);
      const MinCutResult r = global_min_cut(g);
      CHECK(r.value == brute_global_min_cut(g));
      const double side_value = cut_weight(g, r.side, Direction::kOut) + cut_weight(g, r.side, Direction::kIn);
      CHECK(side_value == r.value);
    }
  }
}

TEST_CASE("compute_strengths examples") {
  const DiGraph tree = make(5, {{0, 1, 1}, {1, 2, 1}, {1, 3, 1}, {3, 4, 1}});
  for (double k : compute_strengths(tree).k) CHECK(k == 1.0);
  CHECK(strength_sum_check(tree, compute_strengths(tree)) == 4.0);

  DiGraph two_k4(8);
  for (Vertex base : {0U, 4U})
    for (Vertex a = 0; a < 4; ++a)
      for (Vertex b = a + 1; b < 4; ++b) two_k4.add_edge(base + a, base + b, 1.0);
  const EdgeId bridge = two_k4.add_edge(3, 4, 1.0);
  const StrengthMap sm = compute_strengths(two_k4);
  for (EdgeId e = 0; e < two_k4.num_edges(); ++e) CHECK(sm.k[e] == (e == bridge ? 1.0 : 3.0));

  const DiGraph tri = make(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
  CHECK(strength_sum_check(tri, compute_strengths(tri)) == doctest::Approx(1.5));
  const DiGraph k4 = make(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}});
  CHECK(strength_sum_check(k4, compute_strengths(k4)) == doctest::Approx(2.0));
  CHECK_THROWS_AS(strength_sum_check(k4, StrengthMap{}), ArgumentError);
}

TEST_CASE("strengths equal the brute-force definition") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = 2 + rng() % 7;
    const std::size_t m = rng() % (n * (n - 1));
    const DiGraph g = gen_random_digraph(n, m, 5, rng());
    const StrengthMap sm = compute_strengths(g);
    const std::vector<double> brute = brute_strengths(g);
    for (EdgeId e = 0; e < g.num_edges(); ++e) CHECK(sm.k[e] == brute[e]);
    CHECK(strength_sum_check(g, sm) <= static_cast<double>(n - 1) + 1e-9);
  }
}

TEST_CASE("decomposition invariants") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DiGraph g = gen_random_digraph(14, 40, 3, seed);
    const StrengthMap sm = compute_strengths(g);
    CHECK(sm.pieces.size() <= 13);
    // Laminar: any two pieces are disjoint or nested.
    for (std::size_t i = 0; i < sm.pieces.size(); ++i) {
      for (std::size_t j = i + 1; j < sm.pieces.size(); ++j) {
        std::vector<Vertex> common;
        std::set_intersection(sm.pieces[i].begin(), sm.pieces[i].end(), sm.pieces[j].begin(),
                              sm.pieces[j].end(), std::back_inserter(common));
        const bool ok = common.empty() || common.size() == sm.pieces[i].size() ||
                        common.size() == sm.pieces[j].size();
        CHECK(ok);
      }
    }
    // Strength dominates the min cut of the edge's connected component.
    const MinCutResult whole = global_min_cut(g);
    for (double k : sm.k) CHECK(k >= whole.value);
  }
}
