#include "balcut/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "balcut/errors.hpp"

namespace balcut {

namespace {

void check_edge(std::size_t n, const Edge& e) {
  if (e.tail >= n || e.head >= n) {
    throw ArgumentError("edge endpoint out of range: " + std::to_string(e.tail) + " -> " +
                        std::to_string(e.head) + " with n = " + std::to_string(n));
  }
  if (e.tail == e.head) {
    throw ArgumentError("self-loop at vertex " + std::to_string(e.tail));
  }
  if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
    throw ArgumentError("edge weight must be finite and non-negative");
  }
}

}  // namespace

DiGraph::DiGraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  for (const Edge& e : edges_) check_edge(n_, e);
}

EdgeId DiGraph::add_edge(Vertex tail, Vertex head, double weight) {
  Edge e{tail, head, weight};
  check_edge(n_, e);
  edges_.push_back(e);
  return edges_.size() - 1;
}

double DiGraph::total_weight() const {
  double total = 0.0;
  for (const Edge& e : edges_) total += e.weight;
  return total;
}

double DiGraph::min_weight() const {
  double w = std::numeric_limits<double>::infinity();
  for (const Edge& e : edges_) w = std::min(w, e.weight);
  return w;
}

double DiGraph::max_weight() const {
  double w = 0.0;
  for (const Edge& e : edges_) w = std::max(w, e.weight);
  return w;
}

DiGraph DiGraph::reversed() const {
  DiGraph r(n_);
  r.edges_.reserve(edges_.size());
  for (const Edge& e : edges_) r.edges_.push_back({e.head, e.tail, e.weight});
  return r;
}

CutSet::CutSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

CutSet CutSet::from_members(std::size_t universe, std::span<const Vertex> members) {
  CutSet s(universe);
  for (Vertex v : members) s.insert(v);
  return s;
}

CutSet CutSet::from_mask(std::size_t universe, std::uint64_t mask) {
  if (universe > 64) throw ArgumentError("from_mask requires universe <= 64");
  if (universe < 64 && (mask >> universe) != 0) {
    throw ArgumentError("mask has bits outside the universe");
  }
  CutSet s(universe);
  if (!s.words_.empty()) s.words_[0] = mask;
  return s;
}

void CutSet::insert(Vertex v) {
  if (v >= universe_) throw ArgumentError("vertex " + std::to_string(v) + " outside cut universe");
  words_[v >> 6] |= std::uint64_t{1} << (v & 63);
}

void CutSet::erase(Vertex v) {
  if (v >= universe_) throw ArgumentError("vertex " + std::to_string(v) + " outside cut universe");
  words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
}

std::size_t CutSet::size() const noexcept {
  std::size_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool CutSet::is_proper() const noexcept {
  const std::size_t k = size();
  return k > 0 && k < universe_;
}

std::vector<Vertex> CutSet::members() const {
  std::vector<Vertex> out;
  out.reserve(size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w != 0) {
      const int b = std::countr_zero(w);
      out.push_back(static_cast<Vertex>(i * 64 + static_cast<std::size_t>(b)));
      w &= w - 1;
    }
  }
  return out;
}

CutSet CutSet::complement() const {
  CutSet c(universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) c.words_[i] = ~words_[i];
  if (const std::size_t tail = universe_ % 64; tail != 0) {
    c.words_.back() &= (std::uint64_t{1} << tail) - 1;
  }
  return c;
}

double cut_weight(const DiGraph& g, const CutSet& s, Direction direction) {
  if (s.universe() != g.num_vertices()) {
    throw ArgumentError("cut universe " + std::to_string(s.universe()) +
                        " does not match graph size " + std::to_string(g.num_vertices()));
  }
  double total = 0.0;
  for (const Edge& e : g.edges()) {
    const bool t = s.contains(e.tail);
    const bool h = s.contains(e.head);
    if (direction == Direction::kOut ? (t && !h) : (!t && h)) total += e.weight;
  }
  return total;
}

double balance_ratio(double out_weight, double in_weight) {
  if (out_weight == 0.0 && in_weight == 0.0) return 1.0;
  if (out_weight == 0.0 || in_weight == 0.0) return std::numeric_limits<double>::infinity();
  return std::max(out_weight / in_weight, in_weight / out_weight);
}

double cut_balance(const DiGraph& g, const CutSet& s) {
  if (s.universe() != g.num_vertices()) throw ArgumentError("cut universe does not match graph");
  if (!s.is_proper()) throw ArgumentError("cut balance needs a proper nonempty vertex set");
  return balance_ratio(cut_weight(g, s, Direction::kOut), cut_weight(g, s, Direction::kIn));
}

bool is_strongly_connected(const DiGraph& g) {
  const std::size_t n = g.num_vertices();
  if (n <= 1) return true;
  std::vector<std::vector<Vertex>> fwd(n), bwd(n);
  for (const Edge& e : g.edges()) {
    if (e.weight <= 0.0) continue;
    fwd[e.tail].push_back(e.head);
    bwd[e.head].push_back(e.tail);
  }
  auto reaches_all = [n](const std::vector<std::vector<Vertex>>& adj) {
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : adj[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == n;
  };
  return reaches_all(fwd) && reaches_all(bwd);
}

int weight_class_of(double w) {
  if (!(w >= 1.0) || !std::isfinite(w)) {
    throw DomainError("weight-class partitioning needs finite weights >= 1");
  }
  int exponent = 0;
  std::frexp(w, &exponent);  // w = m * 2^exponent with m in [0.5, 1)
  return exponent;
}

std::vector<WeightClassView> weight_classes(const DiGraph& g) {
  std::vector<WeightClassView> classes;
  std::vector<int> slot_of;  // class index -> position in `classes`, -1 if absent
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const int i = weight_class_of(g.edge(e).weight);
    if (static_cast<std::size_t>(i) >= slot_of.size()) slot_of.resize(static_cast<std::size_t>(i) + 1, -1);
    if (slot_of[static_cast<std::size_t>(i)] < 0) {
      slot_of[static_cast<std::size_t>(i)] = static_cast<int>(classes.size());
      classes.push_back({i, {}});
    }
    classes[static_cast<std::size_t>(slot_of[static_cast<std::size_t>(i)])].edges.push_back(e);
  }
  std::sort(classes.begin(), classes.end(),
            [](const WeightClassView& a, const WeightClassView& b) { return a.index < b.index; });
  return classes;
}

Incidence incidence(const DiGraph& g) {
  std::vector<EdgeId> all(g.num_edges());
  std::iota(all.begin(), all.end(), EdgeId{0});
  return incidence(g, all);
}

Incidence incidence(const DiGraph& g, std::span<const EdgeId> subset) {
  Incidence inc;
  inc.out.resize(g.num_vertices());
  inc.in.resize(g.num_vertices());
  std::vector<EdgeId> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  for (EdgeId e : sorted) {
    const Edge& ed = g.edge(e);
    inc.out[ed.tail].push_back(e);
    inc.in[ed.head].push_back(e);
  }
  return inc;
}

std::vector<int> undirected_components(const DiGraph& g, std::span<const EdgeId> subset,
                                       int* component_count) {
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), Vertex{0});
  std::vector<char> touched(n, 0);
  auto find = [&parent](Vertex v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (EdgeId e : subset) {
    const Edge& ed = g.edge(e);
    touched[ed.tail] = touched[ed.head] = 1;
    const Vertex a = find(ed.tail);
    const Vertex b = find(ed.head);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> label(n, -1);
  std::vector<int> root_label(n, -1);
  int next = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (!touched[v]) continue;
    const Vertex r = find(v);
    if (root_label[r] < 0) root_label[r] = next++;
    label[v] = root_label[r];
  }
  if (component_count != nullptr) *component_count = next;
  return label;
}

}  // namespace balcut
