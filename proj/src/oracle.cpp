#include "balcut/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

#include "balcut/errors.hpp"

namespace balcut {

namespace {

void require_enumerable(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap) {
    throw BudgetError(std::string(what) + ": n = " + std::to_string(n) + " exceeds cap " +
                      std::to_string(cap));
  }
}

// Aggregated adjacency matrix of a small graph. Parallel edges are summed in
// edge-id order.
struct Dense {
  std::size_t n = 0;
  std::vector<double> w;  // w[a * n + b] = total weight a -> b
  std::vector<std::pair<Vertex, Vertex>> pairs;  // ordered pairs with w > 0
  bool integral = true;

  double at(Vertex a, Vertex b) const { return w[a * n + b]; }
};

Dense make_dense(const DiGraph& g, bool counts) {
  Dense d;
  d.n = g.num_vertices();
  d.w.assign(d.n * d.n, 0.0);
  double total = 0.0;
  for (const Edge& e : g.edges()) {
    const double x = counts ? 1.0 : e.weight;
    d.w[e.tail * d.n + e.head] += x;
    total += x;
    if (x != std::floor(x)) d.integral = false;
  }
  if (total > 0x1.0p50) d.integral = false;
  for (Vertex a = 0; a < d.n; ++a)
    for (Vertex b = 0; b < d.n; ++b)
      if (d.at(a, b) > 0.0) d.pairs.emplace_back(a, b);
  return d;
}

struct CutValue {
  double out = 0.0;
  double in = 0.0;
  double vol = 0.0;  // undirected volume of S
};

CutValue direct_value(const Dense& d, std::uint64_t mask) {
  CutValue v;
  for (auto [a, b] : d.pairs) {
    const bool ia = (mask >> a) & 1U;
    const bool ib = (mask >> b) & 1U;
    const double x = d.at(a, b);
    if (ia && !ib) v.out += x;
    if (!ia && ib) v.in += x;
    if (ia) v.vol += x;
    if (ib) v.vol += x;
  }
  return v;
}

// Visits base | T for every subset T of `free` (Gray-code order), skipping
// the bare base unless include_base. Integral weights are tracked
// incrementally in int64; otherwise each mask is evaluated directly.
template <typename F>
void gray_walk(const Dense& d, std::uint64_t base, const std::vector<Vertex>& free,
               bool include_base, F&& f) {
  const std::size_t k = free.size();
  const std::uint64_t count = std::uint64_t{1} << k;
  std::uint64_t mask = base;
  if (!d.integral) {
    if (include_base) f(mask, direct_value(d, mask));
    for (std::uint64_t i = 1; i < count; ++i) {
      mask ^= std::uint64_t{1} << free[static_cast<std::size_t>(std::countr_zero(i))];
      f(mask, direct_value(d, mask));
    }
    return;
  }
  const std::size_t n = d.n;
  std::vector<std::int64_t> wi(n * n);
  for (std::size_t i = 0; i < n * n; ++i) wi[i] = static_cast<std::int64_t>(d.w[i]);
  std::vector<std::vector<Vertex>> nbr(n);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b)
      if (a != b && (wi[a * n + b] != 0 || wi[b * n + a] != 0)) nbr[a].push_back(b);

  const CutValue start = direct_value(d, mask);
  auto out = static_cast<std::int64_t>(start.out);
  auto in = static_cast<std::int64_t>(start.in);
  auto vol = static_cast<std::int64_t>(start.vol);
  if (include_base) f(mask, start);
  for (std::uint64_t i = 1; i < count; ++i) {
    const Vertex v = free[static_cast<std::size_t>(std::countr_zero(i))];
    const std::uint64_t rest = mask & ~(std::uint64_t{1} << v);
    std::int64_t a = 0, b = 0, c = 0, e = 0, dv = 0;
    for (Vertex u : nbr[v]) {
      const std::int64_t vu = wi[v * n + u];
      const std::int64_t uv = wi[u * n + v];
      dv += vu + uv;
      if ((rest >> u) & 1U) {
        b += uv;
        e += vu;
      } else {
        a += vu;
        c += uv;
      }
    }
    if ((mask >> v) & 1U) {  // v leaves
      out -= a - b;
      in -= c - e;
      vol -= dv;
    } else {
      out += a - b;
      in += c - e;
      vol += dv;
    }
    mask ^= std::uint64_t{1} << v;
    f(mask, CutValue{static_cast<double>(out), static_cast<double>(in), static_cast<double>(vol)});
  }
}

std::vector<Vertex> range_vertices(Vertex lo, Vertex hi) {
  std::vector<Vertex> v;
  for (Vertex x = lo; x < hi; ++x) v.push_back(x);
  return v;
}

std::uint64_t full_mask(std::size_t n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// Smaller side of the cut, lexicographically least on equal sizes.
std::uint64_t canonical_side(std::uint64_t mask, std::size_t n) {
  const std::uint64_t comp = full_mask(n) & ~mask;
  const int a = std::popcount(mask);
  const int b = std::popcount(comp);
  if (a != b) return a < b ? mask : comp;
  return lex_less(mask, comp) ? mask : comp;
}

}  // namespace

CutRange::CutRange(std::size_t n) : n_(n) {
  require_enumerable(n, kMaxEnumerationVertices, "enumerate_cuts");
  end_ = n <= 1 ? 1 : (std::uint64_t{1} << (n - 1));
}

CutRange enumerate_cuts(std::size_t n) { return CutRange(n); }

bool lex_less(std::uint64_t a, std::uint64_t b) {
  if (a == b) return false;
  const int d = std::countr_zero(a ^ b);
  const std::uint64_t above = ~std::uint64_t{0} << d;  // bits >= d
  if ((a >> d) & 1U) {
    // a continues with d; b continues with something larger or stops.
    return (b & above) != 0;
  }
  return (a & above) == 0;
}

double exact_graph_balance(const DiGraph& g) {
  const std::size_t n = g.num_vertices();
  require_enumerable(n, kMaxEnumerationVertices, "exact_graph_balance");
  if (n <= 1) return 1.0;
  const Dense d = make_dense(g, false);
  double best = 1.0;
  gray_walk(d, 0, range_vertices(0, static_cast<Vertex>(n - 1)), false,
            [&](std::uint64_t, const CutValue& v) { best = std::max(best, balance_ratio(v.out, v.in)); });
  return best;
}

ConductanceResult exact_conductance(const DiGraph& g) {
  const std::size_t n = g.num_vertices();
  require_enumerable(n, kMaxEnumerationVertices, "exact_conductance");
  if (g.num_edges() == 0 || g.total_weight() <= 0.0) {
    throw ArgumentError("conductance is undefined on an edgeless graph");
  }
  const Dense d = make_dense(g, false);
  const double total_vol = 2.0 * g.total_weight();
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t best_side = 0;
  gray_walk(d, 0, range_vertices(0, static_cast<Vertex>(n - 1)), false,
            [&](std::uint64_t mask, const CutValue& v) {
              const double denom = std::min(v.vol, total_vol - v.vol);
              const double phi = denom <= 0.0 ? 0.0 : (v.out + v.in) / denom;
              const std::uint64_t side = canonical_side(mask, n);
              if (phi < best || (phi == best && lex_less(side, best_side))) {
                best = phi;
                best_side = side;
              }
            });
  return {best, CutSet::from_mask(n, best_side)};
}

std::optional<CutSet> find_sparse_cut_exact(const DiGraph& component, double lambda) {
  const std::size_t n = component.num_vertices();
  require_enumerable(n, kMaxEnumerationVertices, "find_sparse_cut_exact");
  if (n <= 1) return std::nullopt;
  const Dense d = make_dense(component, true);
  // Minimise count / small by exact cross multiplication.
  std::int64_t best_count = -1;
  std::int64_t best_small = 1;
  std::uint64_t best_side = 0;
  gray_walk(d, 0, range_vertices(0, static_cast<Vertex>(n - 1)), false,
            [&](std::uint64_t mask, const CutValue& v) {
              const auto count = static_cast<std::int64_t>(v.out + v.in);
              const std::uint64_t side = canonical_side(mask, n);
              const std::int64_t small = std::popcount(side);
              if (best_count < 0) {
                best_count = count;
                best_small = small;
                best_side = side;
                return;
              }
              const std::int64_t lhs = count * best_small;
              const std::int64_t rhs = best_count * small;
              if (lhs < rhs || (lhs == rhs && lex_less(side, best_side))) {
                best_count = count;
                best_small = small;
                best_side = side;
              }
            });
  if (static_cast<double>(best_count) <= lambda * static_cast<double>(best_small)) {
    return CutSet::from_mask(n, best_side);
  }
  return std::nullopt;
}

namespace {

// Global min cut of the induced undirected subgraph for every vertex subset.
std::vector<double> all_subset_min_cuts(const DiGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<double> u(n * n, 0.0);
  for (const Edge& e : g.edges()) {
    u[e.tail * n + e.head] += e.weight;
    u[e.head * n + e.tail] += e.weight;
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<double> mc(total, 0.0);
  for (std::uint64_t w = 1; w < total; ++w) {
    if (std::popcount(w) < 2) continue;
    const std::uint64_t low = w & (~w + 1);
    const std::uint64_t rest = w ^ low;
    double best = std::numeric_limits<double>::infinity();
    // T = low | sub for every proper sub of rest (sub != rest).
    for (std::uint64_t sub = (rest - 1) & rest;; sub = (sub - 1) & rest) {
      const std::uint64_t t = low | sub;
      const std::uint64_t other = w & ~t;
      double c = 0.0;
      for (std::uint64_t x = t; x != 0; x &= x - 1) {
        const auto a = static_cast<std::size_t>(std::countr_zero(x));
        for (std::uint64_t y = other; y != 0; y &= y - 1) {
          c += u[a * n + static_cast<std::size_t>(std::countr_zero(y))];
        }
      }
      best = std::min(best, c);
      if (sub == 0) break;
    }
    mc[w] = best;
  }
  return mc;
}

}  // namespace

std::vector<double> brute_strengths(const DiGraph& g) {
  const std::size_t n = g.num_vertices();
  require_enumerable(n, kMaxBruteStrengthVertices, "brute_strength");
  const std::vector<double> mc = all_subset_min_cuts(g);
  std::vector<double> pair_best(n * n, 0.0);
  for (std::uint64_t w = 1; w < mc.size(); ++w) {
    if (std::popcount(w) < 2) continue;
    for (std::uint64_t x = w; x != 0; x &= x - 1) {
      const auto a = static_cast<std::size_t>(std::countr_zero(x));
      for (std::uint64_t y = x & (x - 1); y != 0; y &= y - 1) {
        const auto b = static_cast<std::size_t>(std::countr_zero(y));
        pair_best[a * n + b] = std::max(pair_best[a * n + b], mc[w]);
      }
    }
  }
  std::vector<double> out;
  out.reserve(g.num_edges());
  for (const Edge& e : g.edges()) {
    const std::size_t a = std::min(e.tail, e.head);
    const std::size_t b = std::max(e.tail, e.head);
    out.push_back(pair_best[a * n + b]);
  }
  return out;
}

double brute_strength(const DiGraph& g, EdgeId e) {
  if (e >= g.num_edges()) throw ArgumentError("edge id out of range");
  return brute_strengths(g)[e];
}

double brute_global_min_cut(const DiGraph& g) {
  const std::size_t n = g.num_vertices();
  require_enumerable(n, kMaxEnumerationVertices, "brute_global_min_cut");
  if (n < 2) throw ArgumentError("global min cut needs at least 2 vertices");
  const Dense d = make_dense(g, false);
  double best = std::numeric_limits<double>::infinity();
  gray_walk(d, 0, range_vertices(0, static_cast<Vertex>(n - 1)), false,
            [&](std::uint64_t, const CutValue& v) { best = std::min(best, v.out + v.in); });
  return best;
}

double brute_min_st_cut(const DiGraph& g, Vertex s, Vertex t) {
  const std::size_t n = g.num_vertices();
  require_enumerable(n, kMaxStCutVertices, "brute_min_st_cut");
  if (s >= n || t >= n || s == t) throw ArgumentError("need distinct terminals in range");
  const Dense d = make_dense(g, false);
  std::vector<Vertex> free;
  for (Vertex v = 0; v < n; ++v)
    if (v != s && v != t) free.push_back(v);
  double best = std::numeric_limits<double>::infinity();
  gray_walk(d, std::uint64_t{1} << s, free, true,
            [&](std::uint64_t, const CutValue& v) { best = std::min(best, v.out); });
  return best;
}

MaxFlowResult exact_max_flow(const DiGraph& g, Vertex s, Vertex t) {
  const std::size_t n = g.num_vertices();
  if (s >= n || t >= n) throw ArgumentError("terminal out of range");
  if (s == t) throw ArgumentError("source equals sink");
  const std::size_t m = g.num_edges();
  // Arc 2e: tail -> head with capacity w; arc 2e+1: the reverse residual.
  std::vector<double> cap(2 * m);
  std::vector<Vertex> to(2 * m);
  std::vector<std::vector<std::size_t>> adj(n);
  double scale = 0.0;
  for (EdgeId e = 0; e < m; ++e) {
    const Edge& ed = g.edge(e);
    cap[2 * e] = ed.weight;
    cap[2 * e + 1] = 0.0;
    to[2 * e] = ed.head;
    to[2 * e + 1] = ed.tail;
    adj[ed.tail].push_back(2 * e);
    adj[ed.head].push_back(2 * e + 1);
    scale = std::max(scale, ed.weight);
  }
  const double tol = scale * 1e-12;
  std::vector<int> level(n);
  std::vector<std::size_t> it(n);
  auto bfs = [&] {
    std::fill(level.begin(), level.end(), -1);
    std::queue<Vertex> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop();
      for (std::size_t a : adj[v]) {
        if (cap[a] > tol && level[to[a]] < 0) {
          level[to[a]] = level[v] + 1;
          q.push(to[a]);
        }
      }
    }
    return level[t] >= 0;
  };
  // Iterative blocking-flow DFS.
  auto dfs = [&](double limit) {
    std::vector<std::size_t> path;
    Vertex v = s;
    while (true) {
      if (v == t) {
        double push = limit;
        for (std::size_t a : path) push = std::min(push, cap[a]);
        for (std::size_t a : path) {
          cap[a] -= push;
          cap[a ^ 1U] += push;
        }
        return push;
      }
      bool advanced = false;
      for (; it[v] < adj[v].size(); ++it[v]) {
        const std::size_t a = adj[v][it[v]];
        if (cap[a] > tol && level[to[a]] == level[v] + 1) {
          path.push_back(a);
          v = to[a];
          advanced = true;
          break;
        }
      }
      if (advanced) continue;
      if (path.empty()) return 0.0;
      level[v] = -1;  // dead end
      const std::size_t a = path.back();
      path.pop_back();
      v = to[a ^ 1U];
      ++it[v];
    }
  };
  double value = 0.0;
  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    while (true) {
      const double pushed = dfs(std::numeric_limits<double>::infinity());
      if (pushed <= 0.0) break;
      value += pushed;
    }
  }
  MaxFlowResult r;
  r.value = value;
  r.flow.resize(m);
  for (EdgeId e = 0; e < m; ++e) r.flow[e] = g.edge(e).weight - cap[2 * e];
  if (n <= kMaxStCutVertices) {
    const double cut = brute_min_st_cut(g, s, t);
    if (std::abs(cut - value) > 1e-9 * std::max(1.0, cut)) {
      throw std::logic_error("max flow " + std::to_string(value) + " disagrees with min cut " +
                             std::to_string(cut));
    }
  }
  return r;
}

namespace {

ForAllReport verify_impl(const DiGraph& g, const DiGraph& h,
                         const std::function<double(double)>* tol_of_balance, double eps) {
  const std::size_t n = g.num_vertices();
  if (h.num_vertices() != n) throw ArgumentError("sparsifier has a different vertex count");
  require_enumerable(n, kMaxEnumerationVertices, "verify_for_all");
  ForAllReport rep;
  rep.worst_cut = CutSet(n);
  if (n <= 1) return rep;
  const Dense dg = make_dense(g, false);
  const Dense dh = make_dense(h, false);
  const std::uint64_t full = full_mask(n);
  auto consider = [&](std::uint64_t side, double wg, double wh, double tol) {
    double excess = 0.0;
    double ratio = 1.0;
    if (wg > 0.0) {
      ratio = wh / wg;
      excess = tol > 0.0 ? std::abs(ratio - 1.0) / tol
                         : (ratio == 1.0 ? 0.0 : std::numeric_limits<double>::infinity());
    } else if (wh > 0.0) {
      ratio = std::numeric_limits<double>::infinity();
      excess = std::numeric_limits<double>::infinity();
    }
    if (excess > rep.worst_excess) {
      rep.worst_excess = excess;
      rep.worst_ratio = ratio;
      rep.worst_cut = CutSet::from_mask(n, side);
    }
  };
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    const CutValue vg = direct_value(dg, mask);
    const CutValue vh = direct_value(dh, mask);
    const double tol = tol_of_balance ? (*tol_of_balance)(balance_ratio(vg.out, vg.in)) : eps;
    consider(mask, vg.out, vh.out, tol);
    consider(full & ~mask, vg.in, vh.in, tol);
    rep.cuts_checked += 2;
  }
  rep.ok = rep.worst_excess <= 1.0;
  return rep;
}

}  // namespace

ForAllReport verify_for_all(const DiGraph& g, const DiGraph& h, double eps) {
  return verify_impl(g, h, nullptr, eps);
}

ForAllReport verify_for_all(const DiGraph& g, const DiGraph& h,
                            const std::function<double(double)>& tolerance_of_balance) {
  return verify_impl(g, h, &tolerance_of_balance, 0.0);
}

}  // namespace balcut
