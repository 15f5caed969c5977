#include "balcut/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "balcut/errors.hpp"
#include "balcut/oracle.hpp"
#include "balcut/rng.hpp"

namespace balcut {

namespace {

constexpr int kGadgetAttempts = 10'000;

std::size_t uniform_below(std::mt19937_64& rng, std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

std::vector<Vertex> permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), Vertex{0});
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Integer k with k*k == x (or k == x), to floating tolerance.
std::size_t exact_integer(double x, const char* what) {
  const double r = std::round(x);
  if (!(r >= 1.0) || std::abs(x - r) > 1e-9 * r) {
    throw ArgumentError(std::string(what) + " must be a positive integer, got " + std::to_string(x));
  }
  return static_cast<std::size_t>(r);
}

// Matching family gadget between `left` and `right` (equal sizes).
void add_gadget(DiGraph& g, const std::vector<Vertex>& left, const std::vector<Vertex>& right,
                double matching_weight, std::mt19937_64& rng) {
  for (std::size_t i = 0; i < left.size(); ++i) g.add_edge(left[i], right[i], matching_weight);
  std::bernoulli_distribution coin(0.5);
  for (Vertex r : right)
    for (Vertex l : left)
      if (coin(rng)) g.add_edge(r, l, 1.0);
}

}  // namespace

DiGraph gen_eulerian(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 2) throw ArgumentError("gen_eulerian needs n >= 2");
  if (m < n) throw ArgumentError("gen_eulerian needs m >= n");
  if (n == 2 && m % 2 != 0) throw ArgumentError("gen_eulerian with n = 2 needs even m");
  std::mt19937_64 rng(seed);
  std::vector<Vertex> walk = permutation(n, rng);
  while (walk.size() < m) {
    const bool last = walk.size() + 1 == m;
    Vertex v;
    do {
      v = static_cast<Vertex>(uniform_below(rng, n));
    } while (v == walk.back() || (last && v == walk.front()));
    walk.push_back(v);
  }
  DiGraph g(n);
  for (std::size_t i = 0; i < m; ++i) g.add_edge(walk[i], walk[(i + 1) % m], 1.0);
  return g;
}

DiGraph gen_skewed(std::size_t n, std::size_t m, double beta, std::uint64_t seed) {
  if (n < 2) throw ArgumentError("gen_skewed needs n >= 2");
  if (m < n - 1) throw ArgumentError("gen_skewed needs m >= n - 1 for connectivity");
  if (!(beta >= 1.0)) throw ArgumentError("beta must be >= 1");
  std::mt19937_64 rng(seed);
  const std::vector<Vertex> p = permutation(n, rng);
  std::vector<std::pair<Vertex, Vertex>> und;
  for (std::size_t i = 1; i < n; ++i) und.emplace_back(p[i], p[uniform_below(rng, i)]);
  while (und.size() < m) {
    const auto a = static_cast<Vertex>(uniform_below(rng, n));
    const auto b = static_cast<Vertex>(uniform_below(rng, n));
    if (a != b) und.emplace_back(a, b);
  }
  DiGraph g(n);
  std::bernoulli_distribution coin(0.5);
  for (auto [a, b] : und) {
    if (coin(rng)) std::swap(a, b);
    g.add_edge(a, b, beta);
    g.add_edge(b, a, 1.0);
  }
  return g;
}

DiGraph gen_random_digraph(std::size_t n, std::size_t m, int max_weight, std::uint64_t seed) {
  if (n < 2) throw ArgumentError("gen_random_digraph needs n >= 2");
  if (max_weight < 1) throw ArgumentError("max_weight must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> wd(1, max_weight);
  DiGraph g(n);
  while (g.num_edges() < m) {
    const auto a = static_cast<Vertex>(uniform_below(rng, n));
    const auto b = static_cast<Vertex>(uniform_below(rng, n));
    if (a != b) g.add_edge(a, b, wd(rng));
  }
  return g;
}

DiGraph gen_spread(std::size_t n, std::size_t degree, int beta, std::uint64_t seed) {
  if (n < 3) throw ArgumentError("gen_spread needs n >= 3");
  if (degree < 2) throw ArgumentError("gen_spread needs degree >= 2");
  if (beta < 1) throw ArgumentError("beta must be a positive integer");
  std::mt19937_64 rng(seed);
  const int classes = static_cast<int>(std::ceil(std::log2(static_cast<double>(n))));
  const std::vector<Vertex> ring = permutation(n, rng);
  DiGraph g(n);
  auto add = [&](Vertex u, Vertex v) {
    const double w = std::ldexp(1.0, static_cast<int>(uniform_below(rng, static_cast<std::size_t>(classes))));
    if (rng() & 1U) std::swap(u, v);
    for (int i = 0; i < beta; ++i) g.add_edge(u, v, w);
    g.add_edge(v, u, w);
  };
  const std::size_t total = n * degree / 2;
  for (std::size_t i = 0; i < n; ++i) add(ring[i], ring[(i + 1) % n]);
  for (std::size_t i = n; i < total; ++i) {
    const auto u = static_cast<Vertex>(uniform_below(rng, n));
    auto v = static_cast<Vertex>(uniform_below(rng, n - 1));
    if (v >= u) ++v;
    add(u, v);
  }
  return g;
}

DiGraph gen_random_undirected(std::size_t n, std::size_t m, int max_capacity, std::uint64_t seed) {
  return gen_random_digraph(n, m, max_capacity, seed);
}

DiGraph gen_matching_family(std::size_t n, std::uint64_t seed) {
  if (n < 8) throw ArgumentError("gen_matching_family needs n >= 8");
  std::mt19937_64 rng(seed);
  std::vector<Vertex> left(n), right(n);
  std::iota(left.begin(), left.end(), Vertex{0});
  std::iota(right.begin(), right.end(), static_cast<Vertex>(n));
  DiGraph g(2 * n);
  add_gadget(g, left, right, 1.0, rng);
  return g;
}

DiGraph gen_forall_lb_chain(std::size_t n, double beta, double eps, std::uint64_t seed) {
  if (!(beta >= 1.0)) throw ArgumentError("beta must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw ArgumentError("eps must lie in (0, 1)");
  const std::size_t k = exact_integer(beta / eps, "k = beta / eps");
  if (n % k != 0) throw ArgumentError("n must be a multiple of k = " + std::to_string(k));
  if (n < 2 * k) throw ArgumentError("n must be at least 2k = " + std::to_string(2 * k));
  const std::size_t t = n / k;
  std::mt19937_64 rng(seed);
  DiGraph g(n);
  for (std::size_t i = 0; i + 1 < t; ++i) {
    std::vector<Vertex> left(k), right(k);
    std::iota(left.begin(), left.end(), static_cast<Vertex>(i * k));
    std::iota(right.begin(), right.end(), static_cast<Vertex>((i + 1) * k));
    // The gadget on local ids 0..2k-1, accepted once it qualifies.
    std::vector<Vertex> ll(k), lr(k);
    std::iota(ll.begin(), ll.end(), Vertex{0});
    std::iota(lr.begin(), lr.end(), static_cast<Vertex>(k));
    DiGraph gadget;
    for (int attempt = 0;; ++attempt) {
      if (attempt == kGadgetAttempts) throw ArgumentError("could not sample a balanced gadget");
      gadget = DiGraph(2 * k);
      add_gadget(gadget, ll, lr, 1.0 / eps, rng);
      if (!is_strongly_connected(gadget)) continue;
      if (2 * k <= 20 && exact_graph_balance(gadget) > 8.0 * beta) continue;
      break;
    }
    for (const Edge& e : gadget.edges()) {
      const Vertex a = e.tail < k ? left[e.tail] : right[e.tail - k];
      const Vertex b = e.head < k ? left[e.head] : right[e.head - k];
      g.add_edge(a, b, e.weight);
    }
  }
  return g;
}

EncodedGraph gen_foreach_lb(std::size_t n, double beta, double eps, const std::vector<bool>& bits,
                            std::uint64_t seed) {
  if (!(beta >= 1.0)) throw ArgumentError("beta must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw ArgumentError("eps must lie in (0, 1)");
  const std::size_t k = exact_integer(std::sqrt(beta / eps), "k = sqrt(beta / eps)");
  if (n % k != 0) throw ArgumentError("n must be a multiple of k = " + std::to_string(k));
  if (n < 2 * k) throw ArgumentError("n must be at least 2k = " + std::to_string(2 * k));
  const std::size_t t = n / k;
  if (bits.size() != k * k * (t - 1)) {
    throw ArgumentError("need exactly k^2 (t - 1) = " + std::to_string(k * k * (t - 1)) + " bits");
  }
  std::mt19937_64 rng(seed);
  const std::vector<Vertex> perm = permutation(n, rng);
  auto cluster = [&](std::size_t i) {
    return std::vector<Vertex>(perm.begin() + static_cast<std::ptrdiff_t>(i * k),
                               perm.begin() + static_cast<std::ptrdiff_t>((i + 1) * k));
  };
  EncodedGraph out;
  out.k = k;
  out.clusters = t;
  out.graph = DiGraph(n);
  DiGraph cycles(n);
  for (std::size_t i = 0; i + 1 < t; ++i) {
    const auto a = cluster(i), b = cluster(i + 1);
    for (std::size_t x = 0; x < k; ++x)
      for (std::size_t y = 0; y < k; ++y)
        out.graph.add_edge(a[x], b[y], bits[i * k * k + x * k + y] ? 2.0 : 1.0);
    // One cycle through V_i then V_{i+1}, leaving each exactly once.
    std::vector<Vertex> ring = a;
    ring.insert(ring.end(), b.begin(), b.end());
    for (std::size_t j = 0; j < ring.size(); ++j) {
      out.graph.add_edge(ring[j], ring[(j + 1) % ring.size()], 1.0 / eps);
      cycles.add_edge(ring[j], ring[(j + 1) % ring.size()], 1.0 / eps);
    }
  }
  for (std::size_t i = 0; i + 1 < t; ++i) {
    const auto a = cluster(i), b = cluster(i + 1);
    for (std::size_t x = 0; x < k; ++x) {
      for (std::size_t y = 0; y < k; ++y) {
        DecodeQuery q;
        q.bit = i * k * k + x * k + y;
        q.u = a[x];
        q.v = b[y];
        q.cut = CutSet(n);
        q.cut.insert(a[x]);
        for (Vertex w : b)
          if (w != b[y]) q.cut.insert(w);
        for (std::size_t j = i + 2; j < t; ++j)
          for (Vertex w : cluster(j)) q.cut.insert(w);
        q.baseline = cut_weight(cycles, q.cut, Direction::kOut);
        out.queries.push_back(std::move(q));
      }
    }
  }
  return out;
}

EncodedGraph gen_foreach_lb_simple(std::size_t n, const std::vector<bool>& bits, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0) throw ArgumentError("gen_foreach_lb_simple needs even n >= 4");
  const std::size_t h = n / 2;
  if (bits.size() != h * h) throw ArgumentError("need exactly (n/2)^2 = " + std::to_string(h * h) + " bits");
  std::mt19937_64 rng(seed);
  const std::vector<Vertex> perm = permutation(n, rng);
  const std::vector<Vertex> left(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(h));
  const std::vector<Vertex> right(perm.begin() + static_cast<std::ptrdiff_t>(h), perm.end());
  EncodedGraph out;
  out.k = h;
  out.clusters = 2;
  out.graph = DiGraph(n);
  DiGraph cycle(n);
  for (std::size_t x = 0; x < h; ++x)
    for (std::size_t y = 0; y < h; ++y) out.graph.add_edge(left[x], right[y], bits[x * h + y] ? 2.0 : 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    out.graph.add_edge(perm[j], perm[(j + 1) % n], 1.0);
    cycle.add_edge(perm[j], perm[(j + 1) % n], 1.0);
  }
  for (std::size_t x = 0; x < h; ++x) {
    for (std::size_t y = 0; y < h; ++y) {
      DecodeQuery q;
      q.bit = x * h + y;
      q.u = left[x];
      q.v = right[y];
      q.cut = CutSet(n);
      q.cut.insert(left[x]);
      for (Vertex w : right)
        if (w != right[y]) q.cut.insert(w);
      q.baseline = cut_weight(cycle, q.cut, Direction::kOut);
      out.queries.push_back(std::move(q));
    }
  }
  return out;
}

bool decode_bit(const DecodeQuery& q, double value) { return value - q.baseline >= 1.5; }

DiGraph gen_gamma_counterexample(std::size_t n) {
  if (n < 8 || n % 2 != 0) throw ArgumentError("gen_gamma_counterexample needs even n >= 8");
  const std::size_t h = n / 2;
  DiGraph g(n);
  for (std::size_t i = 0; i < h; ++i) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(h + i), 1.0);
  for (std::size_t r = h; r < n; ++r)
    for (std::size_t l = 0; l < h; ++l) g.add_edge(static_cast<Vertex>(r), static_cast<Vertex>(l), 1.0);
  return g;
}

std::vector<double> directed_connectivities(const DiGraph& g) {
  std::vector<double> out;
  out.reserve(g.num_edges());
  for (const Edge& e : g.edges()) out.push_back(exact_max_flow(g, e.tail, e.head).value);
  return out;
}

GammaTrial gamma_sampling_trial(const DiGraph& g, const std::vector<double>& gamma, double rho,
                                std::uint64_t seed) {
  if (gamma.size() != g.num_edges()) throw ArgumentError("need one connectivity per edge");
  const std::size_t n = g.num_vertices();
  GammaTrial tr;
  tr.h = DiGraph(n);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!(gamma[e] > 0.0)) continue;
    const double p = std::min(1.0, rho / gamma[e]);
    if (p >= 1.0 || keyed_uniform(seed, {e}) < p) {
      tr.h.add_edge(g.edge(e).tail, g.edge(e).head, g.edge(e).weight / p);
    }
  }
  std::vector<std::size_t> outdeg(n, 0);
  for (const Edge& e : tr.h.edges()) ++outdeg[e.tail];
  tr.witness = static_cast<Vertex>(n / 2);
  for (Vertex v = static_cast<Vertex>(n / 2); v < n; ++v)
    if (outdeg[v] < outdeg[tr.witness]) tr.witness = v;
  tr.cut = CutSet(n);
  tr.cut.insert(tr.witness);
  for (const Edge& e : tr.h.edges())
    if (e.tail == tr.witness) tr.cut.insert(e.head);
  tr.w_g = cut_weight(g, tr.cut, Direction::kOut);
  tr.w_h = cut_weight(tr.h, tr.cut, Direction::kOut);
  tr.deviation = balance_ratio(tr.w_g, tr.w_h);
  return tr;
}

std::vector<bool> random_bits(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<bool> bits(count);
  for (std::size_t i = 0; i < count; ++i) bits[i] = (rng() >> 63) != 0;
  return bits;
}

}  // namespace balcut
