#include "balcut/maxflow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>

#include "balcut/errors.hpp"
#include "balcut/forall.hpp"
#include "balcut/oracle.hpp"
#include "balcut/strength.hpp"

namespace balcut {

namespace {

constexpr std::size_t kMaxRounds = 1'000'000;

class Network {
 public:
  Network(const DiGraph& g, Vertex s, Vertex t) : g_(g), s_(s), t_(t), flow_(g.num_edges(), 0.0) {
    for (const Edge& e : g.edges()) scale_ = std::max(scale_, e.weight);
    tol_ = scale_ * 1e-12;
  }

  double residual(std::size_t arc) const {
    const double u = g_.edge(arc / 2).weight;
    const double x = flow_[arc / 2];
    return arc % 2 == 0 ? u - x : u + x;
  }
  Vertex from(std::size_t arc) const {
    const Edge& e = g_.edge(arc / 2);
    return arc % 2 == 0 ? e.tail : e.head;
  }
  Vertex to(std::size_t arc) const {
    const Edge& e = g_.edge(arc / 2);
    return arc % 2 == 0 ? e.head : e.tail;
  }

  // Shortest augmenting path over the allowed arcs (adjacency given per vertex).
  bool augment_once(const std::vector<std::vector<std::size_t>>& adj) {
    std::vector<std::size_t> via(g_.num_vertices(), SIZE_MAX);
    std::vector<char> seen(g_.num_vertices(), 0);
    std::queue<Vertex> q;
    q.push(s_);
    seen[s_] = 1;
    while (!q.empty() && !seen[t_]) {
      const Vertex v = q.front();
      q.pop();
      for (std::size_t a : adj[v]) {
        const Vertex w = to(a);
        if (!seen[w] && residual(a) > tol_) {
          seen[w] = 1;
          via[w] = a;
          q.push(w);
        }
      }
    }
    if (!seen[t_]) return false;
    double push = std::numeric_limits<double>::infinity();
    for (Vertex v = t_; v != s_; v = from(via[v])) push = std::min(push, residual(via[v]));
    for (Vertex v = t_; v != s_; v = from(via[v])) {
      const std::size_t a = via[v];
      flow_[a / 2] += a % 2 == 0 ? push : -push;
    }
    value_ += push;
    return true;
  }

  std::vector<std::vector<std::size_t>> adjacency(const std::vector<std::size_t>& arcs) const {
    std::vector<std::vector<std::size_t>> adj(g_.num_vertices());
    for (std::size_t a : arcs) adj[from(a)].push_back(a);
    return adj;
  }

  FlowState state() const { return {&g_, s_, t_, flow_, value_}; }
  const std::vector<double>& flow() const { return flow_; }
  double value() const { return value_; }

 private:
  const DiGraph& g_;
  Vertex s_, t_;
  std::vector<double> flow_;
  double value_ = 0.0;
  double scale_ = 0.0;
  double tol_ = 0.0;
};

void check_terminals(const DiGraph& g, Vertex s, Vertex t) {
  if (s >= g.num_vertices() || t >= g.num_vertices()) throw ArgumentError("terminal out of range");
  if (s == t) throw ArgumentError("source equals sink");
}

}  // namespace

DiGraph FlowState::residual() const {
  DiGraph r(graph->num_vertices());
  for (EdgeId e = 0; e < graph->num_edges(); ++e) {
    const Edge& ed = graph->edge(e);
    r.add_edge(ed.tail, ed.head, std::max(0.0, ed.weight - flow[e]));
    r.add_edge(ed.head, ed.tail, std::max(0.0, ed.weight + flow[e]));
  }
  return r;
}

KargerLevineResult karger_levine(const DiGraph& g, Vertex s, Vertex t, std::uint64_t seed,
                                 const FlowObserver& observer) {
  check_terminals(g, s, t);
  const std::size_t n = g.num_vertices();
  const std::size_t m = g.num_edges();
  const StrengthMap sm = compute_strengths(g);
  Network net(g, s, t);
  std::mt19937_64 rng(seed);
  KargerLevineResult res;
  double alpha = 1.0;
  std::vector<double> cumulative(2 * m);
  for (std::size_t round = 0; alpha * static_cast<double>(n) < static_cast<double>(m); ++round) {
    if (round >= kMaxRounds) throw std::logic_error("karger_levine exceeded its iteration guard");
    // Draw alpha n arcs with probability proportional to r_a / k_e.
    double total = 0.0;
    for (std::size_t a = 0; a < 2 * m; ++a) {
      const double k = sm.k[a / 2];
      total += k > 0.0 ? net.residual(a) / k : 0.0;
      cumulative[a] = total;
    }
    KargerLevineStep step;
    step.alpha = alpha;
    step.requested = static_cast<std::size_t>(alpha * static_cast<double>(n));
    std::vector<std::size_t> arcs;
    if (total > 0.0) {
      std::uniform_real_distribution<double> unif(0.0, total);
      for (std::size_t i = 0; i < step.requested; ++i) {
        const double x = unif(rng);
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
        if (it == cumulative.end()) --it;
        arcs.push_back(static_cast<std::size_t>(it - cumulative.begin()));
      }
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    step.distinct = arcs.size();
    const auto adj = net.adjacency(arcs);
    while (net.augment_once(adj)) {
      ++step.augmentations;
      if (observer) observer(net.state());
    }
    step.found_path = step.augmentations > 0;
    res.trace.push_back(step);
    if (!step.found_path) alpha *= 2.0;
  }
  res.used_full_residual = true;
  std::vector<std::size_t> all(2 * m);
  for (std::size_t a = 0; a < 2 * m; ++a) all[a] = a;
  const auto adj = net.adjacency(all);
  while (net.augment_once(adj)) {
    ++res.full_augmentations;
    if (observer) observer(net.state());
  }
  res.value = net.value();
  res.flow = net.flow();
  return res;
}

double undirected_max_flow(const DiGraph& g, Vertex s, Vertex t) {
  check_terminals(g, s, t);
  DiGraph both(g.num_vertices());
  for (const Edge& e : g.edges()) {
    both.add_edge(e.tail, e.head, e.weight);
    both.add_edge(e.head, e.tail, e.weight);
  }
  return exact_max_flow(both, s, t).value;
}

ResidualBalanceReport residual_balance_bound(const FlowState& fs, double gamma) {
  if (!(gamma > 0.0)) throw ArgumentError("gamma must be positive");
  const DiGraph& g = *fs.graph;
  const std::size_t n = g.num_vertices();
  if (n > kMaxStCutVertices) {
    throw BudgetError("residual_balance_bound: n = " + std::to_string(n) + " exceeds cap " +
                      std::to_string(kMaxStCutVertices));
  }
  check_terminals(g, fs.s, fs.t);
  const DiGraph r = fs.residual();
  std::vector<Vertex> free;
  for (Vertex v = 0; v < n; ++v)
    if (v != fs.s && v != fs.t) free.push_back(v);
  ResidualBalanceReport rep;
  rep.bound = 2.0 / gamma;
  const std::uint64_t count = std::uint64_t{1} << free.size();
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    std::uint64_t mask = std::uint64_t{1} << fs.s;
    for (std::size_t i = 0; i < free.size(); ++i)
      if ((bits >> i) & 1U) mask |= std::uint64_t{1} << free[i];
    double out = 0.0, in = 0.0;
    for (const Edge& e : r.edges()) {
      const bool a = (mask >> e.tail) & 1U;
      const bool b = (mask >> e.head) & 1U;
      if (a && !b) out += e.weight;
      if (!a && b) in += e.weight;
    }
    rep.max_balance = std::max(rep.max_balance, balance_ratio(out, in));
    ++rep.cuts;
  }
  // Relative slack for rounding in the residual sums.
  rep.ok = rep.max_balance <= rep.bound * (1.0 + 1e-9);
  return rep;
}

DiGraph sample_residual(const FlowState& fs, double gamma, std::uint64_t seed, double eps, double d) {
  if (!(gamma > 0.0)) throw ArgumentError("gamma must be positive");
  SparsifyParams p;
  p.beta = std::max(1.0, 2.0 / gamma);
  p.eps = eps;
  p.d = d;
  p.seed = seed;
  return sparsify(fs.residual(), p).h;
}

bool has_path(const DiGraph& g, Vertex s, Vertex t) {
  std::vector<std::vector<Vertex>> adj(g.num_vertices());
  for (const Edge& e : g.edges())
    if (e.weight > 0.0) adj[e.tail].push_back(e.head);
  std::vector<char> seen(g.num_vertices(), 0);
  std::vector<Vertex> stack{s};
  seen[s] = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    if (v == t) return true;
    for (Vertex w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return false;
}

}  // namespace balcut
