#include <cmath>

#include "balcut/errors.hpp"
#include "balcut/generators.hpp"
#include "balcut/oracle.hpp"
#include "doctest.h"

using namespace balcut;

TEST_CASE("eulerian generator") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const DiGraph g = gen_eulerian(9, 30, seed);
    CHECK(g.num_edges() == 30);
    CHECK(is_strongly_connected(g));
    CHECK(exact_graph_balance(g) == 1.0);
    CHECK(gen_eulerian(9, 30, seed) == g);
  }
  CHECK(gen_eulerian(2, 4, 0).num_edges() == 4);
  CHECK_THROWS_AS(gen_eulerian(2, 3, 0), ArgumentError);
  CHECK_THROWS_AS(gen_eulerian(5, 4, 0), ArgumentError);
}

TEST_CASE("skewed generator") {
  const DiGraph g = gen_skewed(10, 15, 4.0, 2);
  CHECK(g.num_edges() == 30);
  CHECK(is_strongly_connected(g));
  CHECK(exact_graph_balance(g) <= 4.0);
  for (const Edge& e : g.edges()) CHECK((e.weight == 1.0 || e.weight == 4.0));
}

TEST_CASE("spread generator") {
  const DiGraph g = gen_spread(12, 6, 3, 1);
  CHECK(g.num_edges() == 36 * 4);
  CHECK(is_strongly_connected(g));
  CHECK(exact_graph_balance(g) <= 3.0);
  CHECK(weight_classes(g).size() <= 4);
  CHECK_THROWS_AS(gen_spread(12, 6, 0, 1), ArgumentError);
}

TEST_CASE("matching family") {
  int balanced = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 8;
    const DiGraph g = gen_matching_family(n, seed);
    CHECK(g.num_vertices() == 2 * n);
    std::size_t lr = 0;
    for (const Edge& e : g.edges()) {
      if (e.tail < n) {
        ++lr;
        CHECK(e.head == e.tail + n);
      } else {
        CHECK(e.head < n);
      }
    }
    CHECK(lr == n);
    balanced += exact_graph_balance(g) <= 8.0 * n ? 1 : 0;
  }
  CHECK(balanced >= 9);
  CHECK_THROWS_AS(gen_matching_family(7, 0), ArgumentError);
}

TEST_CASE("forall lower-bound chain") {
  const DiGraph g = gen_forall_lb_chain(16, 2.0, 0.5, 3);
  CHECK(is_strongly_connected(g));
  CHECK(exact_graph_balance(g) <= 16.0);
  const std::size_t k = 4, t = 4;
  CHECK(g.num_edges() <= t * (k + k * k));
  std::size_t heavy = 0;
  for (const Edge& e : g.edges()) {
    if (e.weight == 2.0) {
      ++heavy;
      CHECK(e.head / k == e.tail / k + 1);
    }
  }
  CHECK(heavy == k * (t - 1));
  CHECK_THROWS_AS(gen_forall_lb_chain(10, 2.0, 0.5, 0), ArgumentError);
  CHECK_THROWS_AS(gen_forall_lb_chain(16, 2.0, 0.3, 0), ArgumentError);
}

TEST_CASE("foreach lower-bound encoding decodes exactly") {
  const std::size_t n = 12;
  const double beta = 1.6, eps = 0.1;  // k = 4, t = 3
  const std::vector<bool> bits = random_bits(32, 5);
  const EncodedGraph enc = gen_foreach_lb(n, beta, eps, bits, 9);
  CHECK(enc.k == 4);
  CHECK(enc.clusters == 3);
  REQUIRE(enc.queries.size() == bits.size());
  for (const DecodeQuery& q : enc.queries) {
    const double value = cut_weight(enc.graph, q.cut, Direction::kOut);
    CHECK(decode_bit(q, value) == bits[q.bit]);
    CHECK(value - q.baseline == doctest::Approx(bits[q.bit] ? 2.0 : 1.0));
  }
  CHECK(exact_graph_balance(enc.graph) <= 3 * beta);
  CHECK_THROWS_AS(gen_foreach_lb(n, beta, eps, random_bits(31, 0), 0), ArgumentError);
  CHECK_THROWS_AS(gen_foreach_lb(n, 2.0, eps, bits, 0), ArgumentError);
}

TEST_CASE("simple encoding") {
  const std::vector<bool> bits = random_bits(16, 1);
  const EncodedGraph enc = gen_foreach_lb_simple(8, bits, 4);
  for (const DecodeQuery& q : enc.queries) {
    const double value = cut_weight(enc.graph, q.cut, Direction::kOut);
    CHECK(value - q.baseline == (bits[q.bit] ? 2.0 : 1.0));
    CHECK(decode_bit(q, value) == bits[q.bit]);
  }
  CHECK_THROWS_AS(gen_foreach_lb_simple(8, random_bits(15, 0), 0), ArgumentError);
}

TEST_CASE("gamma counterexample") {
  const std::size_t n = 12, h = n / 2;
  const DiGraph g = gen_gamma_counterexample(n);
  CHECK(g.num_edges() == h + h * h);
  const std::vector<double> gamma = directed_connectivities(g);
  double inv_sum = 0.0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (g.edge(e).tail < h) {
      CHECK(gamma[e] == 1.0);
    } else {
      CHECK(gamma[e] >= static_cast<double>(h) - 1);
    }
    inv_sum += 1.0 / gamma[e];
  }
  CHECK(inv_sum <= 2.0 * static_cast<double>(n));
  const GammaTrial tr = gamma_sampling_trial(g, gamma, 1.0, 3);
  CHECK(tr.witness >= h);
  CHECK(tr.cut.contains(tr.witness));
  CHECK(tr.w_g == doctest::Approx(cut_weight(g, tr.cut, Direction::kOut)));
  CHECK_THROWS_AS(gen_gamma_counterexample(9), ArgumentError);
}

TEST_CASE("random bits are seeded") {
  CHECK(random_bits(100, 3) == random_bits(100, 3));
  CHECK(random_bits(100, 3) != random_bits(100, 4));
}

TEST_CASE("encoding balance at beta 2.5") {
  // k = 5, two clusters, 25 bits.
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const EncodedGraph enc = gen_foreach_lb(10, 2.5, 0.1, random_bits(25, seed), seed);
    CHECK(exact_graph_balance(enc.graph) <= 7.5);
  }
}

TEST_CASE("simple encoding cycle crosses each query cut at most three times") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const std::vector<bool> bits = random_bits(36, seed);
    const EncodedGraph enc = gen_foreach_lb_simple(12, bits, seed);
    for (const DecodeQuery& q : enc.queries) {
      CHECK(q.baseline >= 1.0);
      CHECK(q.baseline <= 3.0);
    }
  }
}

TEST_CASE("matching family in-degrees concentrate") {
  const std::size_t n = 400;
  std::size_t inside = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const DiGraph g = gen_matching_family(n, seed);
    std::vector<std::size_t> indeg(n, 0);
    for (const Edge& e : g.edges())
      if (e.head < n) ++indeg[e.head];
    for (std::size_t d : indeg) {
      inside += 8 * d >= 3 * n && 8 * d <= 5 * n ? 1 : 0;
      ++total;
    }
  }
  CHECK(inside == total);
}
